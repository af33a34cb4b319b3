//! Finite groups given by explicit multiplication tables.
//!
//! File format:
//!
//! ```text
//! order N
//! <N element names, first one is the identity>
//! <N rows; row i lists the product names i·j for j = 1..N>
//! generators: <names>        (optional)
//! ```
//!
//! Loading validates the full set of group axioms — identity, two-sided
//! inverses, associativity over all triples — and that the declared
//! generator set reaches every element. A table that fails any axiom is
//! rejected with the failing axiom and concrete witnesses.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteTable {
    names: Vec<String>,
    /// Row-major `order × order` table of product indices.
    table: Vec<u16>,
    inverse: Vec<u16>,
    /// Indices of the declared (base) generators.
    generators: Vec<u16>,
}

impl FiniteTable {
    pub fn parse(text: &str) -> Result<FiniteTable> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));

        let header = lines
            .next()
            .ok_or_else(|| Error::parse("<eof>", "empty multiplication table file"))?;
        let order: usize = match header.strip_prefix("order") {
            Some(rest) => rest.trim().parse().map_err(|_| {
                Error::parse(header, "expected `order N` with a positive integer N")
            })?,
            None => return Err(Error::parse(header, "expected first line `order N`")),
        };
        if order == 0 || order > u16::MAX as usize {
            return Err(Error::parse(header, "order must be in 1..=65535"));
        }

        let name_line = lines
            .next()
            .ok_or_else(|| Error::parse("<eof>", "missing element-name line"))?;
        let names: Vec<String> = name_line.split_whitespace().map(String::from).collect();
        if names.len() != order {
            return Err(Error::parse(
                name_line,
                format!("expected {order} element names, found {}", names.len()),
            ));
        }
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i as u16).is_some() {
                return Err(Error::parse(n, "duplicate element name"));
            }
        }

        let mut table = Vec::with_capacity(order * order);
        for row in 0..order {
            let line = lines.next().ok_or_else(|| {
                Error::parse("<eof>", format!("missing table row {} of {order}", row + 1))
            })?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != order {
                return Err(Error::parse(
                    line,
                    format!(
                        "row {} has {} entries, expected {order}",
                        row + 1,
                        entries.len()
                    ),
                ));
            }
            for name in entries {
                let idx = *index
                    .get(name)
                    .ok_or_else(|| Error::parse(name, "product names an unknown element"))?;
                table.push(idx);
            }
        }

        let generators = match lines.next() {
            None => (1..order as u16).collect(),
            Some(line) => {
                let rest = line.strip_prefix("generators:").ok_or_else(|| {
                    Error::parse(line, "expected optional final line `generators: <names>`")
                })?;
                let gens: Vec<u16> =
                    rest.split_whitespace()
                        .map(|name| {
                            index.get(name).copied().ok_or_else(|| {
                                Error::parse(name, "generator names an unknown element")
                            })
                        })
                        .collect::<Result<_>>()?;
                if gens.is_empty() && order > 1 {
                    return Err(Error::parse(line, "generator list is empty"));
                }
                gens
            }
        };
        if let Some(extra) = lines.next() {
            return Err(Error::parse(extra, "unexpected trailing line"));
        }

        let mut t = FiniteTable {
            names,
            table,
            inverse: Vec::new(),
            generators,
        };
        t.validate()?;
        Ok(t)
    }

    /// Checks identity, inverses, associativity and generation.
    fn validate(&mut self) -> Result<()> {
        let n = self.order();
        // identity: the first named element must be two-sided neutral
        for g in 0..n as u16 {
            if self.mul(0, g) != g {
                return Err(Error::validation(
                    "identity axiom",
                    format!(
                        "{}·{} = {}",
                        self.names[0],
                        self.name(g),
                        self.name(self.mul(0, g))
                    ),
                ));
            }
            if self.mul(g, 0) != g {
                return Err(Error::validation(
                    "identity axiom",
                    format!(
                        "{}·{} = {}",
                        self.name(g),
                        self.names[0],
                        self.name(self.mul(g, 0))
                    ),
                ));
            }
        }
        // inverses: every element needs a two-sided inverse
        let mut inverse = vec![u16::MAX; n];
        for g in 0..n as u16 {
            let inv = (0..n as u16).find(|&h| self.mul(g, h) == 0 && self.mul(h, g) == 0);
            match inv {
                Some(h) => inverse[g as usize] = h,
                None => {
                    return Err(Error::validation(
                        "inverse axiom",
                        format!("{} has no two-sided inverse", self.name(g)),
                    ))
                }
            }
        }
        self.inverse = inverse;
        // associativity over all triples
        for a in 0..n as u16 {
            for b in 0..n as u16 {
                let ab = self.mul(a, b);
                for c in 0..n as u16 {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::validation(
                            "associativity axiom",
                            format!(
                                "({}·{})·{} = {} but {}·({}·{}) = {}",
                                self.name(a),
                                self.name(b),
                                self.name(c),
                                self.name(self.mul(ab, c)),
                                self.name(a),
                                self.name(b),
                                self.name(c),
                                self.name(self.mul(a, self.mul(b, c))),
                            ),
                        ));
                    }
                }
            }
        }
        // the declared generators must reach every element
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut frontier = vec![0u16];
        while let Some(g) = frontier.pop() {
            for &s in &self.generators {
                for next in [self.mul(g, s), self.mul(g, self.inverse[s as usize])] {
                    if !reached[next as usize] {
                        reached[next as usize] = true;
                        frontier.push(next);
                    }
                }
            }
        }
        if let Some(missing) = reached.iter().position(|r| !r) {
            return Err(Error::validation(
                "generation",
                format!(
                    "element {} is not reachable from the declared generators",
                    self.names[missing]
                ),
            ));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, g: u16, h: u16) -> u16 {
        self.table[g as usize * self.order() + h as usize]
    }

    pub fn inv(&self, g: u16) -> u16 {
        self.inverse[g as usize]
    }

    pub fn name(&self, g: u16) -> &str {
        &self.names[g as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    pub fn generators(&self) -> &[u16] {
        &self.generators
    }
}
