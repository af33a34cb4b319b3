//! Proper affine isometric actions on concrete discrete groups.
//!
//! The crate builds, on concrete group models, the family of tent
//! functions peaked at the identity together with the cocycle blocks
//! `b_n(γ) = π(γ)φⁿ − φⁿ`, measures them in ℓ^{2n}, and mechanically
//! verifies the identities and inequalities that make
//! `α(γ)ξ = π(γ)ξ + b(γ)` a proper affine isometric action on the
//! direct sum of the ℓ^{2n} spaces — with block norms decaying like
//! `1/(n·√(n·∂₁(n)···∂_k(n)))` for iterated logarithms `∂_j`, an
//! improvement over the classical `1/n` envelope.
//!
//! Modules:
//! - [`groups`]: group models (free, ℤ^d, Heisenberg, finite tables),
//!   canonical elements, words.
//! - [`metric`]: word lengths, the left-invariant metric, ball
//!   enumeration, growth constants.
//! - [`scaling`]: iterated logarithms and the derived scales/slopes.
//! - [`cocycle`]: sparse functions, tents, blocks, mixed norms, the
//!   affine action.
//! - [`verify`]: every inequality as an executable check; aggregated
//!   machine-readable reports.
//!
//! ```
//! use std::sync::Arc;
//! use cocycle_core::{cocycle_vector, parse_group_spec, LengthFunction, ScaleParams};
//!
//! let model = Arc::new(parse_group_spec("zd:1")?);
//! let lengths = LengthFunction::new(model.clone());
//! let gamma = model.eval_word(&model.parse_word("(5)")?)?;
//!
//! let b = cocycle_vector(&lengths, &ScaleParams::new(1), &gamma, 2)?;
//! assert!((b.blocks[0].norm_2n - 2f64.sqrt()).abs() < 1e-12);
//! assert!((b.mixed_norm_sq - 2.75).abs() < 1e-12);
//! # Ok::<(), cocycle_core::Error>(())
//! ```

pub mod cocycle;
pub mod error;
pub mod groups;
pub mod metric;
pub mod scaling;
pub mod verify;

pub use cocycle::{
    affine_action, cocycle_block, cocycle_vector, tent, CocycleBlock, CocycleVector, SparseFunction,
};
pub use error::{Error, Result};
pub use groups::{parse_group_spec, GroupElement, GroupKind, GroupModel, ModelRef, Word};
pub use metric::{Ball, GrowthEstimate, LengthFunction, LengthMode, DEFAULT_BUDGET};
pub use scaling::ScaleParams;
pub use verify::{
    check_cocycle_identity, check_lower_bound, check_properness, check_upper_bound,
    divergence_partial_sums, run_full_report, CheckOutcome, CheckStatus, DivergenceTable,
    VerificationReport, VerifyConfig,
};
