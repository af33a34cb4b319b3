//! Proper integer-valued length functions, the left-invariant metric
//! `d(g,h) = |g⁻¹h|`, ball enumeration, and empirical growth constants.
//!
//! Free groups and ℤ^d have closed-form word lengths (reduced word
//! length, ℓ¹ sum); the Heisenberg and finite models use breadth-first
//! search over the symmetric generator set. Every enumeration is capped
//! by an element budget and fails loudly when it would exceed it.

use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupKind, ModelRef};

/// Default cap on elements visited per enumeration.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// How word lengths are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthMode {
    /// Reduced word length (free) or ℓ¹ coordinate sum (ℤ^d).
    ClosedForm,
    /// Breadth-first word length over the symmetric generator set.
    Bfs,
}

/// A ball `B(center, radius)` with its full element set.
#[derive(Debug, Clone)]
pub struct Ball {
    pub center: GroupElement,
    pub radius: u32,
    pub elements: BTreeSet<GroupElement>,
}

impl Ball {
    pub fn cardinality(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.contains(g)
    }
}

/// Enumerated ball cardinalities and the growth constant they certify.
///
/// `a` is the smallest constant with `#B(e,R) ≤ e^{aR}` for every
/// tabulated radius `1 ≤ R ≤ max_radius`; the bound is certified for
/// that range only.
#[derive(Debug, Clone)]
pub struct GrowthEstimate {
    pub a: f64,
    pub per_radius: Vec<(u32, u64)>,
    pub max_radius: u32,
}

struct BfsCache {
    dist: HashMap<GroupElement, u32>,
    frontier: Vec<GroupElement>,
    radius_done: u32,
    exhausted: bool,
    /// Set when a layer expansion aborted on budget; cached distances stay
    /// valid but no further expansion is possible.
    dead: bool,
}

/// A proper length function on a group model.
pub struct LengthFunction {
    model: ModelRef,
    mode: LengthMode,
    budget: u64,
    cache: Mutex<BfsCache>,
}

impl LengthFunction {
    /// Picks the closed form where one exists, BFS otherwise.
    pub fn new(model: ModelRef) -> LengthFunction {
        let mode = match model.kind() {
            GroupKind::Free { .. } | GroupKind::Zd { .. } => LengthMode::ClosedForm,
            GroupKind::Heisenberg | GroupKind::Finite(_) => LengthMode::Bfs,
        };
        LengthFunction::with_mode(model, mode, DEFAULT_BUDGET).expect("mode is supported")
    }

    pub fn with_mode(model: ModelRef, mode: LengthMode, budget: u64) -> Result<LengthFunction> {
        if mode == LengthMode::ClosedForm
            && !matches!(model.kind(), GroupKind::Free { .. } | GroupKind::Zd { .. })
        {
            return Err(Error::config(format!(
                "no closed-form length is implemented for {}",
                model.name()
            )));
        }
        let identity = model.identity();
        Ok(LengthFunction {
            model,
            mode,
            budget,
            cache: Mutex::new(BfsCache {
                dist: HashMap::from([(identity.clone(), 0)]),
                frontier: vec![identity],
                radius_done: 0,
                exhausted: false,
                dead: false,
            }),
        })
    }

    pub fn with_budget(model: ModelRef, budget: u64) -> LengthFunction {
        let mut lf = LengthFunction::new(model);
        lf.budget = budget;
        lf
    }

    pub fn model(&self) -> &ModelRef {
        &self.model
    }

    pub fn mode(&self) -> LengthMode {
        self.mode
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Word length of `g` with respect to the model's generators.
    pub fn length(&self, g: &GroupElement) -> Result<u64> {
        self.model.validate(g)?;
        match self.mode {
            LengthMode::ClosedForm => Ok(match g {
                GroupElement::Free(w) => w.len() as u64,
                GroupElement::Zd(v) => v.iter().map(|x| x.unsigned_abs()).sum(),
                _ => unreachable!("constructor enforces closed-form support"),
            }),
            LengthMode::Bfs => self.bfs_length(g),
        }
    }

    fn bfs_length(&self, g: &GroupElement) -> Result<u64> {
        let mut cache = self.cache.lock().expect("cache poisoned");
        loop {
            if let Some(&d) = cache.dist.get(g) {
                return Ok(d as u64);
            }
            if cache.dead {
                return Err(Error::Budget {
                    context: format!(
                        "computing the word length of {} in {} (searched radius {})",
                        self.model.display(g),
                        self.model.name(),
                        cache.radius_done
                    ),
                    budget: self.budget,
                    reached: cache.dist.len() as u64,
                });
            }
            if cache.exhausted {
                return Err(Error::domain(format!(
                    "element {} is not generated by the declared generators of {}",
                    self.model.display(g),
                    self.model.name()
                )));
            }
            // expand one more BFS layer
            let next_radius = cache.radius_done + 1;
            let mut next = Vec::new();
            for cur in std::mem::take(&mut cache.frontier) {
                for s in self.model.generators() {
                    let neighbor = self.model.mul_unchecked(&cur, s);
                    if !cache.dist.contains_key(&neighbor) {
                        cache.dist.insert(neighbor.clone(), next_radius);
                        next.push(neighbor);
                    }
                }
                if cache.dist.len() as u64 > self.budget {
                    // distances recorded so far are still exact; stop growing
                    cache.dead = true;
                    cache.frontier = Vec::new();
                    cache.radius_done = next_radius;
                    break;
                }
            }
            if !cache.dead {
                cache.exhausted = next.is_empty();
                cache.frontier = next;
                cache.radius_done = next_radius;
            }
        }
    }

    /// Left-invariant distance `d(g,h) = |g⁻¹h|`.
    pub fn distance(&self, g: &GroupElement, h: &GroupElement) -> Result<u64> {
        let rel = self.model.mul(&self.model.inv(g)?, h)?;
        self.length(&rel)
    }

    /// Enumerates exactly the elements at distance ≤ `radius` from
    /// `center`. Content is deterministic regardless of traversal order.
    pub fn ball(&self, center: &GroupElement, radius: u32) -> Result<Ball> {
        self.model.validate(center)?;
        let mut seen: BTreeSet<GroupElement> = BTreeSet::from([center.clone()]);
        let mut frontier = vec![center.clone()];
        for layer in 1..=radius {
            if frontier.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for cur in frontier {
                for s in self.model.generators() {
                    let neighbor = self.model.mul_unchecked(&cur, s);
                    if seen.insert(neighbor.clone()) {
                        next.push(neighbor);
                    }
                }
                if seen.len() as u64 > self.budget {
                    return Err(Error::Budget {
                        context: format!(
                            "enumerating B({}, {radius}) in {} (completed radius {})",
                            self.model.display(center),
                            self.model.name(),
                            layer - 1
                        ),
                        budget: self.budget,
                        reached: seen.len() as u64,
                    });
                }
            }
            frontier = next;
        }
        Ok(Ball {
            center: center.clone(),
            radius,
            elements: seen,
        })
    }

    /// Tabulates `#B(e,R)` for `R = 1..=max_radius` and returns
    /// `a = max_R ln(#B(e,R))/R` (or 1 for a group with no growth).
    pub fn growth_constant(&self, max_radius: u32) -> Result<GrowthEstimate> {
        if max_radius < 1 {
            return Err(Error::domain("growth estimation needs max_radius ≥ 1"));
        }
        let ball = self.ball_with_layers(max_radius)?;
        let per_radius: Vec<(u32, u64)> = (1..=max_radius).map(|r| (r, ball[r as usize])).collect();
        let a = per_radius
            .iter()
            .filter(|(_, card)| *card >= 2)
            .map(|(r, card)| (*card as f64).ln() / *r as f64)
            .fold(f64::NAN, f64::max);
        let a = if a.is_nan() { 1.0 } else { a };
        Ok(GrowthEstimate {
            a,
            per_radius,
            max_radius,
        })
    }

    /// Cumulative ball cardinalities `#B(e,r)` for `r = 0..=radius`.
    fn ball_with_layers(&self, radius: u32) -> Result<Vec<u64>> {
        let identity = self.model.identity();
        let mut seen: BTreeSet<GroupElement> = BTreeSet::from([identity.clone()]);
        let mut frontier = vec![identity.clone()];
        let mut counts = vec![1u64];
        for layer in 1..=radius {
            let mut next = Vec::new();
            for cur in frontier {
                for s in self.model.generators() {
                    let neighbor = self.model.mul_unchecked(&cur, s);
                    if seen.insert(neighbor.clone()) {
                        next.push(neighbor);
                    }
                }
                if seen.len() as u64 > self.budget {
                    return Err(Error::Budget {
                        context: format!(
                            "enumerating B({}, {radius}) in {} (completed radius {})",
                            self.model.display(&identity),
                            self.model.name(),
                            layer - 1
                        ),
                        budget: self.budget,
                        reached: seen.len() as u64,
                    });
                }
            }
            frontier = next;
            counts.push(seen.len() as u64);
        }
        Ok(counts)
    }
}
