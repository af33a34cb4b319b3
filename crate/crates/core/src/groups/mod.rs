//! Concrete countable discrete groups: elements in canonical form,
//! multiplication, inversion, generator sets, and parsing of group
//! specifications and words.
//!
//! Four model families are supported: free groups `free:<r>`, free
//! abelian groups `zd:<d>`, the integer Heisenberg group `heis3`, and
//! finite groups from a multiplication-table file `finite:<path>`.
//! Every element carries a canonical normal form, so equality, hashing
//! and ordering are exact — ball enumeration and sparse functions rely
//! on that.

mod finite;
mod free;
mod heisenberg;

pub use finite::FiniteTable;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A group element in canonical normal form.
///
/// Two elements of the same model are equal iff they are structurally
/// equal; the derived `Ord` gives every container a deterministic
/// iteration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Fully reduced word; letter `+k`/`-k` is the k-th generator or its inverse.
    Free(Vec<i16>),
    /// Integer coordinate vector.
    Zd(Vec<i64>),
    /// Heisenberg triple `(a, b, c)`, see [`heisenberg`](self).
    Heisenberg([i64; 3]),
    /// Index into a finite multiplication table.
    Finite(u16),
}

/// A word over a model's declared generators: `(generator index, exponent sign)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    pub tokens: Vec<(usize, i8)>,
}

impl Word {
    pub fn new(tokens: Vec<(usize, i8)>) -> Self {
        Word { tokens }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Free { rank: usize },
    Zd { dim: usize },
    Heisenberg,
    Finite(FiniteTable),
}

/// A concrete group model: kind, display name, and generator sets.
///
/// `declared_generators` is the base list that word tokens index;
/// `generators` is the symmetric closure (each generator followed by its
/// inverse when distinct) used by ball enumeration and word metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupModel {
    kind: GroupKind,
    name: String,
    declared_generators: Vec<GroupElement>,
    generators: Vec<GroupElement>,
}

/// Parses a group specification: `free:<r>`, `zd:<d>`, `heis3`, or
/// `finite:<path>` (path to a multiplication-table file).
pub fn parse_group_spec(spec: &str) -> Result<GroupModel> {
    let spec = spec.trim();
    if let Some(r) = spec.strip_prefix("free:") {
        let rank: usize = r
            .parse()
            .map_err(|_| Error::parse(r, "free rank must be an integer"))?;
        return GroupModel::free(rank);
    }
    if let Some(d) = spec.strip_prefix("zd:") {
        let dim: usize = d
            .parse()
            .map_err(|_| Error::parse(d, "dimension must be an integer"))?;
        return GroupModel::zd(dim);
    }
    if spec == "heis3" {
        return Ok(GroupModel::heisenberg());
    }
    if let Some(path) = spec.strip_prefix("finite:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        return GroupModel::finite_from_table(path, FiniteTable::parse(&text)?);
    }
    Err(Error::parse(
        spec,
        "expected `free:<r>`, `zd:<d>`, `heis3`, or `finite:<path>`",
    ))
}

impl GroupModel {
    pub fn free(rank: usize) -> Result<GroupModel> {
        if rank < 1 {
            return Err(Error::domain("free rank must be at least 1"));
        }
        if rank > i16::MAX as usize {
            return Err(Error::domain("free rank exceeds supported limit"));
        }
        let declared: Vec<GroupElement> = (1..=rank as i16)
            .map(|k| GroupElement::Free(vec![k]))
            .collect();
        Ok(GroupModel::with_symmetric_closure(
            GroupKind::Free { rank },
            format!("free:{rank}"),
            declared,
        ))
    }

    pub fn zd(dim: usize) -> Result<GroupModel> {
        if dim < 1 {
            return Err(Error::domain("dimension must be at least 1"));
        }
        let declared: Vec<GroupElement> = (0..dim)
            .map(|i| {
                let mut v = vec![0i64; dim];
                v[i] = 1;
                GroupElement::Zd(v)
            })
            .collect();
        Ok(GroupModel::with_symmetric_closure(
            GroupKind::Zd { dim },
            format!("zd:{dim}"),
            declared,
        ))
    }

    pub fn heisenberg() -> GroupModel {
        let declared = vec![
            GroupElement::Heisenberg(heisenberg::GEN_X),
            GroupElement::Heisenberg(heisenberg::GEN_Y),
        ];
        GroupModel::with_symmetric_closure(GroupKind::Heisenberg, "heis3".to_string(), declared)
    }

    pub fn finite_from_table(name: &str, table: FiniteTable) -> Result<GroupModel> {
        let declared: Vec<GroupElement> = table
            .generators()
            .iter()
            .map(|&g| GroupElement::Finite(g))
            .collect();
        Ok(GroupModel::with_symmetric_closure(
            GroupKind::Finite(table),
            format!("finite:{name}"),
            declared,
        ))
    }

    /// Parses the table text directly; `name` is only used for display.
    pub fn finite_from_str(name: &str, text: &str) -> Result<GroupModel> {
        GroupModel::finite_from_table(name, FiniteTable::parse(text)?)
    }

    fn with_symmetric_closure(
        kind: GroupKind,
        name: String,
        declared: Vec<GroupElement>,
    ) -> GroupModel {
        let mut model = GroupModel {
            kind,
            name,
            declared_generators: declared,
            generators: Vec::new(),
        };
        let mut symmetric = Vec::new();
        for g in &model.declared_generators {
            if !symmetric.contains(g) {
                symmetric.push(g.clone());
            }
            let gi = model.inv_unchecked(g);
            if !symmetric.contains(&gi) {
                symmetric.push(gi);
            }
        }
        model.generators = symmetric;
        model
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// The base generator list that word tokens `gK` index (1-based in syntax).
    pub fn declared_generators(&self) -> &[GroupElement] {
        &self.declared_generators
    }

    /// The symmetric generator set used for word metrics and balls.
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Total number of elements, when finite.
    pub fn order(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::Finite(t) => Some(t.order()),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            GroupKind::Free { .. } => GroupElement::Free(Vec::new()),
            GroupKind::Zd { dim } => GroupElement::Zd(vec![0; *dim]),
            GroupKind::Heisenberg => GroupElement::Heisenberg(heisenberg::IDENTITY),
            GroupKind::Finite(_) => GroupElement::Finite(0),
        }
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        *g == self.identity()
    }

    /// Builds a free-group element from raw letters, reducing them to
    /// canonical form first.
    pub fn free_element(&self, letters: &[i16]) -> Result<GroupElement> {
        match &self.kind {
            GroupKind::Free { .. } => {
                let g = GroupElement::Free(free::reduce(letters));
                self.validate(&g)?;
                Ok(g)
            }
            _ => Err(Error::domain(format!(
                "{} is not a free-group model",
                self.name
            ))),
        }
    }

    /// Checks that `g` is a canonical element of this model.
    pub fn validate(&self, g: &GroupElement) -> Result<()> {
        let ok = match (&self.kind, g) {
            (GroupKind::Free { rank }, GroupElement::Free(w)) => {
                free::is_reduced(w) && w.iter().all(|&x| (x.unsigned_abs() as usize) <= *rank)
            }
            (GroupKind::Zd { dim }, GroupElement::Zd(v)) => v.len() == *dim,
            (GroupKind::Heisenberg, GroupElement::Heisenberg(_)) => true,
            (GroupKind::Finite(t), GroupElement::Finite(i)) => (*i as usize) < t.order(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "element {g:?} does not belong to group {}",
                self.name
            )))
        }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.validate(g)?;
        self.validate(h)?;
        Ok(self.mul_unchecked(g, h))
    }

    pub(crate) fn mul_unchecked(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        match (g, h) {
            (GroupElement::Free(a), GroupElement::Free(b)) => GroupElement::Free(free::mul(a, b)),
            (GroupElement::Zd(a), GroupElement::Zd(b)) => {
                GroupElement::Zd(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupElement::Heisenberg(a), GroupElement::Heisenberg(b)) => {
                GroupElement::Heisenberg(heisenberg::mul(*a, *b))
            }
            (GroupElement::Finite(a), GroupElement::Finite(b)) => match &self.kind {
                GroupKind::Finite(t) => GroupElement::Finite(t.mul(*a, *b)),
                _ => unreachable!("validated"),
            },
            _ => unreachable!("validated"),
        }
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.validate(g)?;
        Ok(self.inv_unchecked(g))
    }

    pub(crate) fn inv_unchecked(&self, g: &GroupElement) -> GroupElement {
        match g {
            GroupElement::Free(w) => GroupElement::Free(free::inv(w)),
            GroupElement::Zd(v) => GroupElement::Zd(v.iter().map(|x| -x).collect()),
            GroupElement::Heisenberg(t) => GroupElement::Heisenberg(heisenberg::inv(*t)),
            GroupElement::Finite(i) => match &self.kind {
                GroupKind::Finite(t) => GroupElement::Finite(t.inv(*i)),
                _ => unreachable!("validated"),
            },
        }
    }

    /// Left-to-right product of the word's tokens.
    pub fn eval_word(&self, w: &Word) -> Result<GroupElement> {
        let mut acc = self.identity();
        for &(idx, sign) in &w.tokens {
            let gen = self.declared_generators.get(idx).ok_or_else(|| {
                Error::domain(format!(
                    "generator index {} out of range for {} ({} generators)",
                    idx + 1,
                    self.name,
                    self.declared_generators.len()
                ))
            })?;
            let factor = if sign >= 0 {
                gen.clone()
            } else {
                self.inv_unchecked(gen)
            };
            acc = self.mul_unchecked(&acc, &factor);
        }
        Ok(acc)
    }

    /// Parses word syntax: whitespace-separated tokens `gK` or `gK^-1`
    /// (K a 1-based generator index), plus per-model sugar — letters
    /// `a`, `b`, … for free groups, coordinate tuples `(1,-2)` for ℤ^d,
    /// and element names for finite groups whose generator list covers
    /// them. The token `1` is reserved for the identity in every model.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut tokens = Vec::new();
        for raw in text.split_whitespace() {
            self.parse_token(raw, &mut tokens)?;
        }
        Ok(Word::new(tokens))
    }

    fn parse_token(&self, raw: &str, tokens: &mut Vec<(usize, i8)>) -> Result<()> {
        let (body, sign) = match raw.strip_suffix("^-1") {
            Some(b) => (b, -1i8),
            None => (raw, 1i8),
        };

        // `1` is reserved for the identity in every model
        if body == "1" {
            return Ok(());
        }

        // tuple sugar for ℤ^d: one token contributes a whole coordinate vector
        if let GroupKind::Zd { dim } = &self.kind {
            if body.starts_with('(') {
                let inner = body
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| Error::parse(raw, "unterminated coordinate tuple"))?;
                let coords: Vec<i64> = inner
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::parse(raw, "tuple coordinate is not an integer"))
                    })
                    .collect::<Result<_>>()?;
                if coords.len() != *dim {
                    return Err(Error::parse(
                        raw,
                        format!("tuple has {} coordinates, expected {dim}", coords.len()),
                    ));
                }
                for (i, &c) in coords.iter().enumerate() {
                    let s = if c >= 0 { sign } else { -sign };
                    for _ in 0..c.unsigned_abs() {
                        tokens.push((i, s));
                    }
                }
                return Ok(());
            }
        }

        // gK / gK^-1
        if let Some(k) = body.strip_prefix('g') {
            if let Ok(k) = k.parse::<usize>() {
                if k == 0 || k > self.declared_generators.len() {
                    return Err(Error::parse(
                        raw,
                        format!(
                            "generator index out of range 1..={}",
                            self.declared_generators.len()
                        ),
                    ));
                }
                tokens.push((k - 1, sign));
                return Ok(());
            }
        }

        // letter sugar for free groups
        if let GroupKind::Free { rank } = &self.kind {
            if body.len() == 1 {
                let c = body.as_bytes()[0];
                if c.is_ascii_lowercase() {
                    let idx = (c - b'a') as usize;
                    if idx < *rank {
                        tokens.push((idx, sign));
                        return Ok(());
                    }
                    return Err(Error::parse(
                        raw,
                        format!("letter exceeds the free rank {rank}"),
                    ));
                }
            }
        }

        // element-name sugar for finite groups (must be a declared generator)
        if let GroupKind::Finite(t) = &self.kind {
            if let Some(idx) = t.lookup(body) {
                if let Some(pos) = self
                    .declared_generators
                    .iter()
                    .position(|g| matches!(g, GroupElement::Finite(i) if *i == idx))
                {
                    tokens.push((pos, sign));
                    return Ok(());
                }
                return Err(Error::parse(raw, "element is not a declared generator"));
            }
        }

        Err(Error::parse(raw, "unrecognized word token"))
    }

    /// Canonical display form. For free groups and ℤ^d the output parses
    /// back through [`parse_word`](Self::parse_word).
    pub fn display(&self, g: &GroupElement) -> String {
        match g {
            GroupElement::Free(w) if w.is_empty() => "1".to_string(),
            GroupElement::Free(w) => {
                let rank = match &self.kind {
                    GroupKind::Free { rank } => *rank,
                    _ => 0,
                };
                w.iter()
                    .map(|&x| {
                        let k = x.unsigned_abs() as usize;
                        let base = if rank <= 26 {
                            ((b'a' + (k - 1) as u8) as char).to_string()
                        } else {
                            format!("g{k}")
                        };
                        if x < 0 {
                            format!("{base}^-1")
                        } else {
                            base
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            }
            GroupElement::Zd(v) => format!(
                "({})",
                v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
            ),
            GroupElement::Heisenberg([a, b, c]) => format!("({a},{b},{c})"),
            GroupElement::Finite(i) => match &self.kind {
                GroupKind::Finite(t) => t.name(*i).to_string(),
                _ => format!("#{i}"),
            },
        }
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Shared handle used across the crate; models are immutable once built.
pub type ModelRef = Arc<GroupModel>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_group_specs() {
        let z2 = parse_group_spec("zd:2").unwrap();
        assert_eq!(
            z2.generators(),
            &[
                GroupElement::Zd(vec![1, 0]),
                GroupElement::Zd(vec![-1, 0]),
                GroupElement::Zd(vec![0, 1]),
                GroupElement::Zd(vec![0, -1]),
            ]
        );
        let f2 = parse_group_spec("free:2").unwrap();
        // {a, a⁻¹, b, b⁻¹}
        assert_eq!(
            f2.generators(),
            &[
                GroupElement::Free(vec![1]),
                GroupElement::Free(vec![-1]),
                GroupElement::Free(vec![2]),
                GroupElement::Free(vec![-2]),
            ]
        );
        assert!(parse_group_spec("free:0").is_err());
        assert!(parse_group_spec("zd:0").is_err());
        assert!(parse_group_spec("nonsense").is_err());
        assert!(matches!(
            parse_group_spec("free:x"),
            Err(Error::Parse { ref token, .. }) if token == "x"
        ));
    }

    #[test]
    fn mul_examples() {
        let z2 = parse_group_spec("zd:2").unwrap();
        let g = GroupElement::Zd(vec![1, 2]);
        let h = GroupElement::Zd(vec![3, 4]);
        assert_eq!(z2.mul(&g, &h).unwrap(), GroupElement::Zd(vec![4, 6]));

        let f2 = parse_group_spec("free:2").unwrap();
        let ab = GroupElement::Free(vec![1, 2]);
        let b_inv_a = GroupElement::Free(vec![-2, 1]);
        assert_eq!(
            f2.mul(&ab, &b_inv_a).unwrap(),
            GroupElement::Free(vec![1, 1])
        );

        // identity laws
        for m in [&z2, &f2] {
            let e = m.identity();
            assert_eq!(m.mul(&e, &e).unwrap(), e);
        }
        let e = f2.identity();
        assert_eq!(f2.mul(&ab, &e).unwrap(), ab);
    }

    #[test]
    fn inv_examples() {
        let z3 = parse_group_spec("zd:3").unwrap();
        let g = GroupElement::Zd(vec![1, -2, 3]);
        assert_eq!(z3.inv(&g).unwrap(), GroupElement::Zd(vec![-1, 2, -3]));

        let f2 = parse_group_spec("free:2").unwrap();
        let g = GroupElement::Free(vec![1, 2, -1]); // aba⁻¹
        assert_eq!(f2.inv(&g).unwrap(), GroupElement::Free(vec![1, -2, -1]));
        let e = f2.identity();
        assert_eq!(f2.inv(&e).unwrap(), e);
    }

    #[test]
    fn eval_word_examples() {
        let f2 = parse_group_spec("free:2").unwrap();
        assert_eq!(f2.eval_word(&Word::default()).unwrap(), f2.identity());
        let w = f2.parse_word("a b a^-1").unwrap();
        assert_eq!(
            f2.eval_word(&w).unwrap(),
            GroupElement::Free(vec![1, 2, -1])
        );

        let z1 = parse_group_spec("zd:1").unwrap();
        let w = z1.parse_word("g1 g1 g1 g1 g1").unwrap();
        assert_eq!(z1.eval_word(&w).unwrap(), GroupElement::Zd(vec![5]));
    }

    #[test]
    fn zd_tuple_sugar() {
        let z3 = parse_group_spec("zd:3").unwrap();
        let w = z3.parse_word("(1,-2,3)").unwrap();
        assert_eq!(z3.eval_word(&w).unwrap(), GroupElement::Zd(vec![1, -2, 3]));
        // inverse suffix applies to the whole tuple
        let w = z3.parse_word("(1,-2,3)^-1").unwrap();
        assert_eq!(z3.eval_word(&w).unwrap(), GroupElement::Zd(vec![-1, 2, -3]));
        assert!(z3.parse_word("(1,2)").is_err());
        assert!(z3.parse_word("(1,2,x)").is_err());
    }

    #[test]
    fn word_errors_name_the_token() {
        let f2 = parse_group_spec("free:2").unwrap();
        match f2.parse_word("a q3 b") {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "q3"),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(f2.parse_word("g3").is_err()); // index out of range
        assert!(f2.parse_word("c").is_err()); // letter beyond rank
    }

    #[test]
    fn eval_word_rejects_out_of_range_index() {
        let f2 = parse_group_spec("free:2").unwrap();
        let w = Word::new(vec![(5, 1)]);
        assert!(f2.eval_word(&w).is_err());
    }

    #[test]
    fn eval_word_returns_reduced_form() {
        let f2 = parse_group_spec("free:2").unwrap();
        let w = f2.parse_word("a b b^-1 a^-1").unwrap();
        assert_eq!(f2.eval_word(&w).unwrap(), f2.identity());
    }

    #[test]
    fn free_element_reduces_raw_letters() {
        let f2 = parse_group_spec("free:2").unwrap();
        assert_eq!(
            f2.free_element(&[1, 2, -2, 1]).unwrap(),
            GroupElement::Free(vec![1, 1])
        );
        assert!(f2.free_element(&[3]).is_err());
        let z = parse_group_spec("zd:1").unwrap();
        assert!(z.free_element(&[1]).is_err());
    }

    #[test]
    fn display_round_trips_through_word_syntax() {
        let f2 = parse_group_spec("free:2").unwrap();
        let g = GroupElement::Free(vec![1, -2, 1, 1]);
        let shown = f2.display(&g);
        assert_eq!(shown, "a b^-1 a a");

        // the identity renders as the reserved token `1`
        let e = f2.identity();
        assert_eq!(f2.display(&e), "1");
        assert_eq!(f2.eval_word(&f2.parse_word("1").unwrap()).unwrap(), e);
        let z1 = parse_group_spec("zd:1").unwrap();
        assert_eq!(
            z1.eval_word(&z1.parse_word("1").unwrap()).unwrap(),
            z1.identity()
        );
        let back = f2.eval_word(&f2.parse_word(&shown).unwrap()).unwrap();
        assert_eq!(back, g);

        let z2 = parse_group_spec("zd:2").unwrap();
        let g = GroupElement::Zd(vec![-3, 7]);
        let back = z2
            .eval_word(&z2.parse_word(&z2.display(&g)).unwrap())
            .unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn heisenberg_generators() {
        let h = GroupModel::heisenberg();
        assert_eq!(h.generators().len(), 4);
        let x = &h.declared_generators()[0];
        let y = &h.declared_generators()[1];
        let xy = h.mul(x, y).unwrap();
        let yx = h.mul(y, x).unwrap();
        assert_ne!(xy, yx);
    }

    #[test]
    fn finite_word_sugar() {
        let s3 = GroupModel::finite_from_str(
            "c3",
            "order 3\ne a b\ne a b\na b e\nb e a\ngenerators: a\n",
        )
        .unwrap();
        let w = s3.parse_word("a a").unwrap();
        assert_eq!(s3.eval_word(&w).unwrap(), GroupElement::Finite(2));
        let w = s3.parse_word("a^-1").unwrap();
        assert_eq!(s3.eval_word(&w).unwrap(), GroupElement::Finite(2));
        // `b` is an element but not a declared generator
        assert!(s3.parse_word("b").is_err());
    }

    #[test]
    fn validate_rejects_foreign_elements() {
        let f2 = parse_group_spec("free:2").unwrap();
        assert!(f2.validate(&GroupElement::Zd(vec![1])).is_err());
        assert!(f2.validate(&GroupElement::Free(vec![3])).is_err()); // letter beyond rank
        assert!(f2.validate(&GroupElement::Free(vec![1, -1])).is_err()); // not reduced
    }
}
