//! Executable checks for every identity and inequality behind the
//! construction, aggregated into machine-readable reports.
//!
//! Each check runs a family of concrete cases and reports the worst
//! margin it saw, where the margin is the slack left before the strict
//! statement would fail (tolerances excluded). Failing checks always
//! carry a concrete witness. Cases whose premise does not apply are
//! counted as skipped and never as passes; a check whose cases all
//! skipped is reported with status `skipped`, and the report summary is
//! `pass` exactly when no check failed.

mod checks;
mod sample;

pub use checks::{
    check_ball_nesting, check_cocycle_identity, check_group_axioms, check_length_axioms,
    check_lower_bound, check_properness, check_upper_bound, divergence_partial_sums, DivergenceRow,
    DivergenceTable,
};

use std::collections::BTreeMap;
use std::rc::Rc;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::cocycle::{
    block_from_tent, tent_with_slope_factor, CocycleBlock, CocycleVector, SparseFunction,
};
use crate::error::{Error, Result};
use crate::groups::{parse_group_spec, GroupElement, ModelRef};
use crate::metric::{Ball, LengthFunction, DEFAULT_BUDGET};
use crate::scaling::ScaleParams;

/// Absolute tolerance for entrywise identities and inequality slack.
pub const TOL: f64 = 1e-12;
/// Margins below this are flagged for human review.
pub const TIGHT_MARGIN: f64 = 1e-9;

/// Full configuration of a verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub group_spec: String,
    pub k: u32,
    pub n_max: u32,
    /// Words to test; empty means sample from the seed.
    pub gammas: Vec<String>,
    pub trials: u32,
    pub seed: u64,
    pub budget: u64,
    /// Multiplies the tent slope; anything but 1.0 deliberately breaks
    /// the construction so the verifier can prove it detects failures.
    pub tent_slope_factor: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            group_spec: "zd:2".to_string(),
            k: 1,
            n_max: 6,
            gammas: Vec::new(),
            trials: 200,
            seed: 0,
            budget: DEFAULT_BUDGET,
            tent_slope_factor: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Result of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: CheckStatus,
    /// Worst slack before the strict statement fails, tolerance excluded;
    /// absent for purely exact (integer/set) checks.
    #[serde(serialize_with = "ser_opt_sig12")]
    pub margin: Option<f64>,
    pub tight: bool,
    pub cases: u64,
    pub skipped_cases: u64,
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub group: String,
    pub k: u32,
    pub n_max: u32,
    pub gammas: Vec<String>,
    pub trials: u32,
    pub seed: u64,
    pub budget: u64,
    #[serde(serialize_with = "ser_sig12")]
    pub tent_slope_factor: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub config: ConfigEcho,
    pub checks: Vec<CheckOutcome>,
    pub summary: CheckStatus,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary == CheckStatus::Pass
    }

    /// Stable pretty JSON with the declared key order.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Rounds to 12 significant digits so emitted floats match the printed
/// precision everywhere.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("round-trips")
}

fn ser_sig12<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig12(*x))
}

fn ser_opt_sig12<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig12(*v)),
        None => s.serialize_none(),
    }
}

/// Accumulates cases into a [`CheckOutcome`].
pub(crate) struct CheckBuilder {
    name: &'static str,
    tol: f64,
    cases: u64,
    skipped: u64,
    worst: Option<(f64, String)>,
    exact_failure: Option<String>,
}

impl CheckBuilder {
    pub fn new(name: &'static str, tol: f64) -> CheckBuilder {
        CheckBuilder {
            name,
            tol,
            cases: 0,
            skipped: 0,
            worst: None,
            exact_failure: None,
        }
    }

    /// A numeric case passing when `margin ≥ −tol`.
    pub fn case(&mut self, margin: f64, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if self.worst.as_ref().is_none_or(|(m, _)| margin < *m) {
            self.worst = Some((margin, witness()));
        }
    }

    /// An exact case (integer or set equality).
    pub fn case_exact(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.exact_failure.is_none() {
            self.exact_failure = Some(witness());
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    /// A whole check that could not run at all.
    pub fn skipped(name: &str, reason: impl Into<String>) -> CheckOutcome {
        CheckOutcome {
            name: name.to_string(),
            status: CheckStatus::Skipped,
            margin: None,
            tight: false,
            cases: 0,
            skipped_cases: 0,
            witness: Some(reason.into()),
        }
    }

    pub fn finish(self) -> CheckOutcome {
        let numeric_fail = self.worst.as_ref().is_some_and(|(m, _)| *m < -self.tol);
        let status = if self.exact_failure.is_some() || numeric_fail {
            CheckStatus::Fail
        } else if self.cases == 0 {
            CheckStatus::Skipped
        } else {
            CheckStatus::Pass
        };
        let margin = self.worst.as_ref().map(|(m, _)| *m);
        let tight = status == CheckStatus::Pass && margin.is_some_and(|m| m < TIGHT_MARGIN);
        let witness = match (&self.exact_failure, &self.worst) {
            (Some(w), _) => Some(w.clone()),
            (None, Some((_, w))) => Some(w.clone()),
            _ => None,
        };
        CheckOutcome {
            name: self.name.to_string(),
            status,
            margin,
            tight,
            cases: self.cases,
            skipped_cases: self.skipped,
            witness,
        }
    }
}

/// Shared state for a family of checks: the tent functions for every
/// scale up to `n_max` (built once, optionally with a perturbed slope)
/// and a cache of enumerated balls.
pub(crate) struct Ctx<'a> {
    pub lf: &'a LengthFunction,
    pub params: ScaleParams,
    pub n_max: u32,
    tents: Vec<SparseFunction>,
    balls: BTreeMap<(GroupElement, u32), Rc<Ball>>,
}

impl<'a> Ctx<'a> {
    pub fn new(
        lf: &'a LengthFunction,
        params: ScaleParams,
        n_max: u32,
        slope_factor: f64,
    ) -> Result<Ctx<'a>> {
        if n_max < 1 {
            return Err(Error::config("n_max must be ≥ 1"));
        }
        let tents = (1..=n_max)
            .map(|n| tent_with_slope_factor(lf, &params, n, slope_factor))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ctx {
            lf,
            params,
            n_max,
            tents,
            balls: BTreeMap::new(),
        })
    }

    pub fn model(&self) -> &ModelRef {
        self.lf.model()
    }

    pub fn tent(&self, n: u32) -> &SparseFunction {
        &self.tents[(n - 1) as usize]
    }

    pub fn block(&self, n: u32, gamma: &GroupElement) -> Result<CocycleBlock> {
        block_from_tent(self.tent(n), n, gamma)
    }

    pub fn vector(&self, gamma: &GroupElement) -> Result<CocycleVector> {
        let mut blocks = Vec::with_capacity(self.n_max as usize);
        let mut mixed_norm_sq = 0.0;
        for n in 1..=self.n_max {
            let b = self.block(n, gamma)?;
            mixed_norm_sq += b.norm_2n * b.norm_2n;
            blocks.push(b);
        }
        Ok(CocycleVector {
            gamma: gamma.clone(),
            k: self.params.k(),
            n_max: self.n_max,
            blocks,
            mixed_norm_sq,
        })
    }

    pub fn ball(&mut self, center: &GroupElement, radius: u32) -> Result<Rc<Ball>> {
        let key = (center.clone(), radius);
        if let Some(b) = self.balls.get(&key) {
            return Ok(b.clone());
        }
        let ball = Rc::new(self.lf.ball(center, radius)?);
        self.balls.insert(key, ball.clone());
        Ok(ball)
    }
}

/// Runs every check on one configuration. Deterministic for a fixed
/// seed: two runs produce identical reports.
pub fn run_full_report(cfg: &VerifyConfig) -> Result<VerificationReport> {
    if cfg.n_max < 1 {
        return Err(Error::config("n_max must be ≥ 1"));
    }
    if cfg.trials < 1 {
        return Err(Error::config("trials must be ≥ 1"));
    }
    let model = Arc::new(parse_group_spec(&cfg.group_spec)?);
    let lf = LengthFunction::with_budget(model.clone(), cfg.budget);
    let params = ScaleParams::new(cfg.k);
    let mut ctx = Ctx::new(&lf, params, cfg.n_max, cfg.tent_slope_factor)?;
    let gammas = resolve_gammas(cfg, &model)?;
    let growth = lf.growth_constant(cfg.n_max)?;

    let checks = vec![
        checks::check_group_axioms(&model, cfg.trials, cfg.seed),
        checks::check_length_axioms(&lf, cfg.trials, cfg.seed)?,
        checks::check_left_invariance(&lf, cfg.trials, cfg.seed)?,
        checks::check_ball_nesting(&lf, cfg.n_max)?,
        checks::check_growth_bound(&growth),
        checks::tent_symmetry(&mut ctx, &gammas)?,
        checks::tent_lipschitz(&mut ctx, cfg.trials, cfg.seed)?,
        checks::pointwise_bound(&mut ctx, &gammas)?,
        checks::support_bound(&mut ctx, &gammas)?,
        checks::translation_isometry(&mut ctx, &gammas)?,
        checks::cocycle_identity(&mut ctx, cfg.trials, cfg.seed)?,
        checks::inverse_formula(&mut ctx, &gammas)?,
        checks::decay_bound(&mut ctx, &gammas, &growth)?,
        checks::lower_bound(&mut ctx, &gammas)?,
        checks::properness(&mut ctx, &gammas)?,
        checks::divergence(&ctx)?,
        checks::norm_stability(&mut ctx, &gammas)?,
        checks::affine_homomorphism(&mut ctx, cfg.seed)?,
        checks::decay_improvement(&mut ctx, &gammas, &growth)?,
    ];

    let summary = if checks.iter().any(CheckOutcome::failed) {
        CheckStatus::Fail
    } else {
        CheckStatus::Pass
    };
    Ok(VerificationReport {
        config: ConfigEcho {
            group: cfg.group_spec.clone(),
            k: cfg.k,
            n_max: cfg.n_max,
            gammas: gammas.iter().map(|g| model.display(g)).collect(),
            trials: cfg.trials,
            seed: cfg.seed,
            budget: cfg.budget,
            tent_slope_factor: cfg.tent_slope_factor,
        },
        checks,
        summary,
    })
}

/// Parses the configured words, or samples words stratified over the
/// lengths `1..=2·n_max` plus a geodesic generator ray and the identity.
fn resolve_gammas(cfg: &VerifyConfig, model: &ModelRef) -> Result<Vec<GroupElement>> {
    let mut out = vec![model.identity()];
    if cfg.gammas.is_empty() {
        let mut rng = sample::rng_for(cfg.seed, "gammas");
        out.extend(sample::generator_ray(model, 2 * cfg.n_max));
        out.extend(sample::stratified(model, &mut rng, 2, 2 * cfg.n_max));
    } else {
        for word in &cfg.gammas {
            out.push(model.eval_word(&model.parse_word(word)?)?);
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    out.retain(|g| seen.insert(g.clone()));
    Ok(out)
}
