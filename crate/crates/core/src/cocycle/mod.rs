//! The cocycle construction: tent functions peaked at the identity,
//! their left-regular translates, the difference blocks
//! `b_n(γ) = π(γ)φⁿ − φⁿ`, per-block ℓ^{2n} norms, the truncated
//! direct-sum cocycle, and the affine action `α(γ)ξ = π(γ)ξ + b(γ)`.
//!
//! A tent at scale `n` takes the value `1/s_k(n) − d(e,x)/(n·s_k(n))`
//! inside the open ball of radius `n` and vanishes outside, so it is
//! supported on `B(e, n−1)` with peak `1/s_k(n)` and slope `1/(n·s_k(n))`
//! per unit of distance.

mod sparse;

pub use sparse::SparseFunction;

use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::metric::LengthFunction;
use crate::scaling::ScaleParams;

/// One coordinate block of the cocycle, with its ℓ^{2n} norm.
#[derive(Debug, Clone)]
pub struct CocycleBlock {
    pub n: u32,
    pub gamma: GroupElement,
    pub values: SparseFunction,
    pub norm_2n: f64,
}

/// The truncated direct-sum element `b(γ) = ⊕_{n ≤ N_max} b_n(γ)`.
///
/// `mixed_norm_sq` is the truncated sum `Σ_{n ≤ N_max} ‖b_n(γ)‖²_{ℓ^{2n}}`;
/// it is a lower bound for the untruncated squared norm since every
/// discarded tail block contributes a nonnegative amount.
#[derive(Debug, Clone)]
pub struct CocycleVector {
    pub gamma: GroupElement,
    pub k: u32,
    pub n_max: u32,
    pub blocks: Vec<CocycleBlock>,
    pub mixed_norm_sq: f64,
}

/// The tent function at scale `n`: peak `1/s_k(n)` at the identity,
/// decreasing by `slope = 1/(n·s_k(n))` per unit of distance, zero at
/// distance ≥ n. Supported exactly on `B(e, n−1)`.
pub fn tent(lf: &LengthFunction, params: &ScaleParams, n: u32) -> Result<SparseFunction> {
    tent_with_slope_factor(lf, params, n, 1.0)
}

/// Tent with the slope multiplied by `slope_factor`. A factor ≠ 1 breaks
/// the Lipschitz estimate on purpose; the verifier's failure-injection
/// hook uses this to prove it can fail.
pub(crate) fn tent_with_slope_factor(
    lf: &LengthFunction,
    params: &ScaleParams,
    n: u32,
    slope_factor: f64,
) -> Result<SparseFunction> {
    if n < 1 {
        return Err(Error::domain("tent scale n must be ≥ 1"));
    }
    let peak = 1.0 / params.scale(n as u64)?;
    let slope = params.slope(n as u64)? * slope_factor;
    let ball = lf.ball(&lf.model().identity(), n - 1)?;
    let mut entries = Vec::with_capacity(ball.elements.len());
    for g in &ball.elements {
        let d = lf.distance(&lf.model().identity(), g)?;
        entries.push((g.clone(), peak - d as f64 * slope));
    }
    SparseFunction::from_entries(lf.model().clone(), entries)
}

/// `b_n(γ) = π(γ)φⁿ − φⁿ`, with exact cancellation on the overlap, and
/// its ℓ^{2n} norm.
pub fn cocycle_block(
    lf: &LengthFunction,
    params: &ScaleParams,
    n: u32,
    gamma: &GroupElement,
) -> Result<CocycleBlock> {
    let t = tent(lf, params, n)?;
    block_from_tent(&t, n, gamma)
}

pub(crate) fn block_from_tent(
    tent: &SparseFunction,
    n: u32,
    gamma: &GroupElement,
) -> Result<CocycleBlock> {
    let values = tent.translate(gamma)?.sub(tent)?;
    let norm_2n = values.lp_norm(2.0 * n as f64)?;
    Ok(CocycleBlock {
        n,
        gamma: gamma.clone(),
        values,
        norm_2n,
    })
}

/// All blocks `n = 1..=n_max` and the truncated mixed norm.
pub fn cocycle_vector(
    lf: &LengthFunction,
    params: &ScaleParams,
    gamma: &GroupElement,
    n_max: u32,
) -> Result<CocycleVector> {
    if n_max < 1 {
        return Err(Error::domain("n_max must be ≥ 1"));
    }
    let mut blocks = Vec::with_capacity(n_max as usize);
    let mut mixed_norm_sq = 0.0;
    for n in 1..=n_max {
        let b = cocycle_block(lf, params, n, gamma)?;
        mixed_norm_sq += b.norm_2n * b.norm_2n;
        blocks.push(b);
    }
    Ok(CocycleVector {
        gamma: gamma.clone(),
        k: params.k(),
        n_max,
        blocks,
        mixed_norm_sq,
    })
}

/// The affine action on a truncated block vector:
/// `(α(γ)ξ)_n = π(γ)ξ_n + b_n(γ)`.
///
/// Satisfies `α(γ₁γ₂) = α(γ₁)∘α(γ₂)` blockwise.
pub fn affine_action(
    lf: &LengthFunction,
    params: &ScaleParams,
    gamma: &GroupElement,
    xi: &[SparseFunction],
    n_max: u32,
) -> Result<Vec<SparseFunction>> {
    if xi.len() != n_max as usize {
        return Err(Error::domain(format!(
            "block vector has {} blocks, expected n_max = {n_max}",
            xi.len()
        )));
    }
    let mut out = Vec::with_capacity(xi.len());
    for (i, block) in xi.iter().enumerate() {
        let n = i as u32 + 1;
        let b = cocycle_block(lf, params, n, gamma)?;
        out.push(block.translate(gamma)?.add(&b.values)?);
    }
    Ok(out)
}
