//! Finitely supported real-valued functions on a group.
//!
//! Only nonzero values are stored, keyed by canonical elements, so
//! supports are exact sets and iteration order is deterministic.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groups::{GroupElement, ModelRef};

#[derive(Debug, Clone, PartialEq)]
pub struct SparseFunction {
    model: ModelRef,
    entries: BTreeMap<GroupElement, f64>,
}

impl SparseFunction {
    pub fn zero(model: ModelRef) -> SparseFunction {
        SparseFunction {
            model,
            entries: BTreeMap::new(),
        }
    }

    /// Builds from `(element, value)` pairs, validating every key and
    /// dropping exact zeros. Duplicate keys accumulate.
    pub fn from_entries(
        model: ModelRef,
        entries: impl IntoIterator<Item = (GroupElement, f64)>,
    ) -> Result<SparseFunction> {
        let mut f = SparseFunction::zero(model);
        for (g, v) in entries {
            f.model.validate(&g)?;
            match f.entries.get_mut(&g) {
                Some(slot) => {
                    *slot += v;
                    if *slot == 0.0 {
                        f.entries.remove(&g);
                    }
                }
                None if v != 0.0 => {
                    f.entries.insert(g, v);
                }
                None => {}
            }
        }
        Ok(f)
    }

    pub fn model(&self) -> &ModelRef {
        &self.model
    }

    /// `f(x)`, zero off the support.
    pub fn value(&self, x: &GroupElement) -> f64 {
        self.entries.get(x).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, f64)> {
        self.entries.iter().map(|(g, v)| (g, *v))
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.entries.keys()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sup_norm(&self) -> f64 {
        self.entries.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn check_same_model(&self, rhs: &SparseFunction) -> Result<()> {
        if std::sync::Arc::ptr_eq(&self.model, &rhs.model) || *self.model == *rhs.model {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "functions live on different groups: {} vs {}",
                self.model.name(),
                rhs.model.name()
            )))
        }
    }

    /// Pointwise difference over the union support. Entries that cancel
    /// to exactly 0.0 are dropped, keeping the support invariant tight.
    pub fn sub(&self, rhs: &SparseFunction) -> Result<SparseFunction> {
        self.check_same_model(rhs)?;
        let mut entries = self.entries.clone();
        for (g, v) in &rhs.entries {
            match entries.get_mut(g) {
                Some(slot) => {
                    *slot -= v;
                    if *slot == 0.0 {
                        entries.remove(g);
                    }
                }
                None => {
                    entries.insert(g.clone(), -v);
                }
            }
        }
        Ok(SparseFunction {
            model: self.model.clone(),
            entries,
        })
    }

    pub fn add(&self, rhs: &SparseFunction) -> Result<SparseFunction> {
        self.check_same_model(rhs)?;
        let mut entries = self.entries.clone();
        for (g, v) in &rhs.entries {
            match entries.get_mut(g) {
                Some(slot) => {
                    *slot += v;
                    if *slot == 0.0 {
                        entries.remove(g);
                    }
                }
                None => {
                    entries.insert(g.clone(), *v);
                }
            }
        }
        Ok(SparseFunction {
            model: self.model.clone(),
            entries,
        })
    }

    pub fn negate(&self) -> SparseFunction {
        SparseFunction {
            model: self.model.clone(),
            entries: self.entries.iter().map(|(g, v)| (g.clone(), -v)).collect(),
        }
    }

    /// Left-regular translation: `(π(γ)f)(x) = f(γ⁻¹x)`, i.e. the
    /// support moves to `γ·support(f)` with values carried over. An
    /// isometry for every ℓ^p norm.
    pub fn translate(&self, gamma: &GroupElement) -> Result<SparseFunction> {
        self.model.validate(gamma)?;
        let entries = self
            .entries
            .iter()
            .map(|(g, v)| (self.model.mul_unchecked(gamma, g), *v))
            .collect();
        Ok(SparseFunction {
            model: self.model.clone(),
            entries,
        })
    }

    /// The ℓ^p norm `(Σ|f(x)|^p)^{1/p}`, computed in max-renormalized
    /// form `M·(Σ(|f(x)|/M)^p)^{1/p}` with `M = sup|f|` so that tiny
    /// values survive large exponents without underflow.
    pub fn lp_norm(&self, pexp: f64) -> Result<f64> {
        if pexp < 1.0 || pexp.is_nan() {
            return Err(Error::domain(format!("ℓ^p norm needs p ≥ 1, got {pexp}")));
        }
        let m = self.sup_norm();
        if m == 0.0 {
            return Ok(0.0);
        }
        let sum: f64 = self
            .entries
            .values()
            .map(|v| (v.abs() / m).powf(pexp))
            .sum();
        Ok(m * sum.powf(1.0 / pexp))
    }
}
