//! The individual checks. Each one turns a identity or inequality of the
//! construction into concrete cases over sampled elements and reports
//! the worst margin with a witness.

use rand::Rng;
use serde::Serialize;

use super::sample::{generator_ray, random_element, rng_for};
use super::{CheckBuilder, CheckOutcome, Ctx, TOL};
use crate::cocycle::SparseFunction;
use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupKind, ModelRef};
use crate::metric::{GrowthEstimate, LengthFunction, LengthMode};
use crate::scaling::ScaleParams;

/// Identity, inverse and associativity laws plus canonical-form
/// idempotence, on random sampled elements. All comparisons are exact.
pub fn check_group_axioms(model: &ModelRef, trials: u32, seed: u64) -> CheckOutcome {
    let mut b = CheckBuilder::new("group-axioms", 0.0);
    let mut rng = rng_for(seed, "group-axioms");
    let e = model.identity();
    for _ in 0..trials {
        let lens = [
            rng.gen_range(0..=8),
            rng.gen_range(0..=8),
            rng.gen_range(0..=8),
        ];
        let g = random_element(model, &mut rng, lens[0]);
        let h = random_element(model, &mut rng, lens[1]);
        let k = random_element(model, &mut rng, lens[2]);

        let gh_k = model.mul_unchecked(&model.mul_unchecked(&g, &h), &k);
        let g_hk = model.mul_unchecked(&g, &model.mul_unchecked(&h, &k));
        b.case_exact(gh_k == g_hk, || {
            format!(
                "associativity: ({}·{})·{} != {}·({}·{})",
                model.display(&g),
                model.display(&h),
                model.display(&k),
                model.display(&g),
                model.display(&h),
                model.display(&k)
            )
        });
        b.case_exact(
            model.mul_unchecked(&g, &e) == g && model.mul_unchecked(&e, &g) == g,
            || format!("identity law at {}", model.display(&g)),
        );
        let gi = model.inv_unchecked(&g);
        b.case_exact(
            model.mul_unchecked(&gi, &g) == e && model.mul_unchecked(&g, &gi) == e,
            || format!("inverse law at {}", model.display(&g)),
        );
        // canonical form: the element validates, and where the display
        // is word syntax it round-trips to the same element
        b.case_exact(model.validate(&g).is_ok(), || {
            format!("canonical form of {g:?}")
        });
        if matches!(model.kind(), GroupKind::Free { .. } | GroupKind::Zd { .. }) {
            let round = model
                .parse_word(&model.display(&g))
                .and_then(|w| model.eval_word(&w));
            b.case_exact(round.as_ref() == Ok(&g), || {
                format!("re-encoding {} changed the element", model.display(&g))
            });
        }
    }
    b.finish()
}

/// The three length-function axioms, non-negativity being implicit in
/// the integer type: `|g| = 0 ⇔ g = e`, `|g| = |g⁻¹|`, `|gh| ≤ |g|+|h|`.
pub fn check_length_axioms(lf: &LengthFunction, trials: u32, seed: u64) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("length-axioms", 0.0);
    let model = lf.model().clone();
    let mut rng = rng_for(seed, "length-axioms");
    let e = model.identity();
    b.case_exact(lf.length(&e)? == 0, || "|e| != 0".to_string());
    for _ in 0..trials {
        let lens = [rng.gen_range(0..=8), rng.gen_range(0..=8)];
        let g = random_element(&model, &mut rng, lens[0]);
        let h = random_element(&model, &mut rng, lens[1]);
        let lg = lf.length(&g)?;
        b.case_exact((lg == 0) == (g == e), || {
            format!("|{}| = {lg} vs identity test", model.display(&g))
        });
        b.case_exact(lg == lf.length(&model.inv_unchecked(&g))?, || {
            format!("|g| != |g⁻¹| at {}", model.display(&g))
        });
        let lgh = lf.length(&model.mul_unchecked(&g, &h))?;
        b.case_exact(lgh <= lg + lf.length(&h)?, || {
            format!(
                "subadditivity: |gh| = {lgh} > |g|+|h| at g={}, h={}",
                model.display(&g),
                model.display(&h)
            )
        });
    }
    Ok(b.finish())
}

/// `d(γg, γh) = d(g,h)` and `d(g,h) = d(h,g)`, exact on random triples.
pub fn check_left_invariance(lf: &LengthFunction, trials: u32, seed: u64) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("metric-left-invariance", 0.0);
    let model = lf.model().clone();
    let mut rng = rng_for(seed, "left-invariance");
    for _ in 0..trials {
        let lens = [
            rng.gen_range(0..=6),
            rng.gen_range(0..=6),
            rng.gen_range(0..=6),
        ];
        let gamma = random_element(&model, &mut rng, lens[0]);
        let g = random_element(&model, &mut rng, lens[1]);
        let h = random_element(&model, &mut rng, lens[2]);
        let d = lf.distance(&g, &h)?;
        let d_translated = lf.distance(
            &model.mul_unchecked(&gamma, &g),
            &model.mul_unchecked(&gamma, &h),
        )?;
        b.case_exact(d == d_translated, || {
            format!(
                "left-invariance broken: d={d}, translated {d_translated} (gamma={}, g={}, h={})",
                model.display(&gamma),
                model.display(&g),
                model.display(&h)
            )
        });
        b.case_exact(d == lf.distance(&h, &g)?, || {
            format!(
                "symmetry broken at g={}, h={}",
                model.display(&g),
                model.display(&h)
            )
        });
    }
    Ok(b.finish())
}

/// Radius-monotone nesting of balls, sphere counts summing to ball
/// counts, membership distances, and closed-form vs BFS length
/// agreement where both exist.
pub fn check_ball_nesting(lf: &LengthFunction, n_max: u32) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("ball-nesting", 0.0);
    let model = lf.model().clone();
    let e = model.identity();
    let mut prev: Option<crate::metric::Ball> = None;
    let mut sphere_total = 0u64;
    for r in 0..=n_max {
        let ball = lf.ball(&e, r)?;
        for g in &ball.elements {
            let d = lf.length(g)?;
            b.case_exact(d <= r as u64, || {
                format!("B(e,{r}) contains {} at distance {d}", model.display(g))
            });
        }
        if let Some(prev) = &prev {
            b.case_exact(prev.elements.is_subset(&ball.elements), || {
                format!("B(e,{}) is not contained in B(e,{r})", r - 1)
            });
            sphere_total += ball.cardinality() - prev.cardinality();
            b.case_exact(sphere_total + 1 == ball.cardinality(), || {
                format!("sphere counts do not sum to #B(e,{r})")
            });
        }
        prev = Some(ball);
    }
    if lf.mode() == LengthMode::ClosedForm {
        let bfs = LengthFunction::with_mode(model.clone(), LengthMode::Bfs, lf.budget())?;
        let check_r = n_max.min(5);
        for g in &lf.ball(&e, check_r)?.elements {
            b.case_exact(lf.length(g)? == bfs.length(g)?, || {
                format!(
                    "closed-form and BFS lengths disagree at {}",
                    model.display(g)
                )
            });
        }
    }
    Ok(b.finish())
}

/// `#B(e,R) ≤ e^{aR}` for every tabulated radius, with the emitted `a`.
pub fn check_growth_bound(growth: &GrowthEstimate) -> CheckOutcome {
    let mut b = CheckBuilder::new("growth-bound", TOL);
    b.case_exact(growth.a > 0.0, || {
        format!("a = {} is not positive", growth.a)
    });
    for (r, card) in &growth.per_radius {
        let margin = growth.a * *r as f64 - (*card as f64).ln();
        b.case(margin, || {
            format!("#B(e,{r}) = {card} vs e^(a·{r}) with a = {}", growth.a)
        });
    }
    b.finish()
}

/// Tent symmetry `φⁿ(x) = φⁿ(x⁻¹)`, exact since `d(x,e) = d(x⁻¹,e)`.
pub fn tent_symmetry(ctx: &mut Ctx, gammas: &[GroupElement]) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("tent-symmetry", 0.0);
    let model = ctx.model().clone();
    for n in 1..=ctx.n_max {
        let t = ctx.tent(n);
        for (x, v) in t.iter() {
            let xi = model.inv_unchecked(x);
            b.case_exact(v == t.value(&xi), || {
                format!(
                    "tent n={n} at x={} is {v} but {} at x⁻¹",
                    model.display(x),
                    t.value(&xi)
                )
            });
        }
        for g in gammas {
            let gi = model.inv_unchecked(g);
            b.case_exact(t.value(g) == t.value(&gi), || {
                format!("tent n={n} asymmetric at gamma={}", model.display(g))
            });
        }
    }
    Ok(b.finish())
}

/// The Lipschitz estimate `|φⁿ(g) − φⁿ(h)| ≤ d(g,h)/(n·s_k(n))`, on
/// structured geodesic pairs (which meet the bound with equality) and
/// random pairs covering both case splits of the estimate.
pub fn tent_lipschitz(ctx: &mut Ctx, trials: u32, seed: u64) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("tent-lipschitz", TOL);
    let model = ctx.model().clone();
    let mut rng = rng_for(seed, "lipschitz");
    let mut pairs: Vec<(GroupElement, GroupElement)> = Vec::new();
    let mut ray = vec![model.identity()];
    ray.extend(generator_ray(&model, ctx.n_max + 1));
    for g in &ray {
        for h in &ray {
            pairs.push((g.clone(), h.clone()));
        }
    }
    for _ in 0..trials {
        let lens = [
            rng.gen_range(0..=ctx.n_max + 2),
            rng.gen_range(0..=ctx.n_max + 2),
        ];
        let g = random_element(&model, &mut rng, lens[0]);
        let h = random_element(&model, &mut rng, lens[1]);
        pairs.push((g, h));
    }
    for n in 1..=ctx.n_max {
        let slope = ctx.params.slope(n as u64)?;
        let t = ctx.tent(n);
        for (g, h) in &pairs {
            let d = ctx.lf.distance(g, h)? as f64;
            let diff = (t.value(g) - t.value(h)).abs();
            b.case(d * slope - diff, || {
                format!(
                    "n={n}, g={}, h={}: |Δφ| = {diff} vs d·slope = {}",
                    model.display(g),
                    model.display(h),
                    d * slope
                )
            });
        }
    }
    Ok(b.finish())
}

/// `|b_n(γ)(x)| ≤ min(d(γ,e)/(n·s_k(n)), 1/s_k(n))` for every point:
/// the Lipschitz route gives the first bound, the tent's peak the
/// second.
pub fn pointwise_bound(ctx: &mut Ctx, gammas: &[GroupElement]) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("pointwise-bound", TOL);
    let model = ctx.model().clone();
    for gamma in gammas {
        let d = ctx.lf.length(gamma)? as f64;
        for n in 1..=ctx.n_max {
            let block = ctx.block(n, gamma)?;
            let sup = block.values.sup_norm();
            let bound = d * ctx.params.slope(n as u64)?;
            b.case(bound - sup, || {
                format!(
                    "gamma={}, n={n}: sup|b_n| = {sup} vs d·slope = {bound}",
                    model.display(gamma)
                )
            });
            let peak = 1.0 / ctx.params.scale(n as u64)?;
            b.case(peak - sup, || {
                format!(
                    "gamma={}, n={n}: sup|b_n| = {sup} vs peak bound {peak}",
                    model.display(gamma)
                )
            });
        }
    }
    Ok(b.finish())
}

/// `b_n(γ)` vanishes outside `B(e,n) ∪ B(γ,n)` — a set computation.
pub fn support_bound(ctx: &mut Ctx, gammas: &[GroupElement]) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("support-bound", 0.0);
    let model = ctx.model().clone();
    for gamma in gammas {
        for n in 1..=ctx.n_max {
            let block = ctx.block(n, gamma)?;
            let ball_e = ctx.ball(&model.identity(), n)?;
            let ball_g = ctx.ball(gamma, n)?;
            let stray = block
                .values
                .support()
                .find(|x| !ball_e.contains(x) && !ball_g.contains(x))
                .cloned();
            b.case_exact(stray.is_none(), || {
                format!(
                    "gamma={}, n={n}: support leaks at x={}",
                    model.display(gamma),
                    model.display(stray.as_ref().unwrap())
                )
            });
        }
    }
    Ok(b.finish())
}

/// Left translation preserves every ℓ^p norm.
pub fn translation_isometry(ctx: &mut Ctx, gammas: &[GroupElement]) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("translation-isometry", TOL);
    let model = ctx.model().clone();
    for n in 1..=ctx.n_max {
        let t = ctx.tent(n).clone();
        for gamma in gammas {
            let shifted = t.translate(gamma)?;
            for p in [2.0, 2.0 * n as f64] {
                let base = t.lp_norm(p)?;
                if base == 0.0 {
                    b.skip();
                    continue;
                }
                let rel = (shifted.lp_norm(p)? - base).abs() / base;
                b.case(-rel, || {
                    format!(
                        "gamma={}, n={n}, p={p}: relative norm drift {rel}",
                        model.display(gamma)
                    )
                });
            }
        }
    }
    Ok(b.finish())
}

/// The cocycle identity `b_n(γ₁γ₂) = π(γ₁)b_n(γ₂) + b_n(γ₁)`, entrywise
/// on seeded random pairs with word lengths up to `2·n_max`.
pub fn cocycle_identity(ctx: &mut Ctx, trials: u32, seed: u64) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("cocycle-identity", TOL);
    let model = ctx.model().clone();
    let mut rng = rng_for(seed, "cocycle-identity");
    for t in 0..trials {
        let (g1, g2) = match t {
            // pin the two degenerate cases before sampling
            0 => (
                random_element(&model, &mut rng, ctx.n_max),
                model.identity(),
            ),
            1 => {
                let g = random_element(&model, &mut rng, ctx.n_max);
                (model.inv_unchecked(&g), g)
            }
            _ => {
                let lens = [
                    rng.gen_range(1..=2 * ctx.n_max),
                    rng.gen_range(1..=2 * ctx.n_max),
                ];
                (
                    random_element(&model, &mut rng, lens[0]),
                    random_element(&model, &mut rng, lens[1]),
                )
            }
        };
        let g12 = model.mul_unchecked(&g1, &g2);
        for n in 1..=ctx.n_max {
            let lhs = ctx.block(n, &g12)?.values;
            let rhs = ctx
                .block(n, &g2)?
                .values
                .translate(&g1)?
                .add(&ctx.block(n, &g1)?.values)?;
            let residual = lhs.sub(&rhs)?;
            let dev = residual.sup_norm();
            b.case(-dev, || {
                let at = residual
                    .iter()
                    .max_by(|(_, a), (_, b)| a.abs().total_cmp(&b.abs()))
                    .map(|(x, _)| model.display(x))
                    .unwrap_or_default();
                format!(
                    "gamma1={}, gamma2={}, n={n}: deviation {dev} at x={at}",
                    model.display(&g1),
                    model.display(&g2)
                )
            });
        }
    }
    Ok(b.finish())
}

/// The inverse formula `b_n(γ⁻¹) = −π(γ⁻¹)b_n(γ)`.
pub fn inverse_formula(ctx: &mut Ctx, gammas: &[GroupElement]) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("inverse-formula", TOL);
    let model = ctx.model().clone();
    for gamma in gammas {
        let gi = model.inv_unchecked(gamma);
        for n in 1..=ctx.n_max {
            let lhs = ctx.block(n, &gi)?.values;
            let rhs = ctx.block(n, gamma)?.values.translate(&gi)?.negate();
            let dev = lhs.sub(&rhs)?.sup_norm();
            b.case(-dev, || {
                format!("gamma={}, n={n}: deviation {dev}", model.display(gamma))
            });
        }
    }
    Ok(b.finish())
}

/// The decay chain: `‖b_n(γ)‖_{2n} ≤ c′·d(γ,e)/(n·s_k(n))` with
/// `c′ = √2·e^{a/2}`, plus the raw counting bound
/// `‖b_n(γ)‖_{2n} ≤ (#B(e,n)+#B(γ,n))^{1/2n}·sup|b_n(γ)|` it comes from,
/// plus the fact that `sup_n 2^{1/2n}e^{a/2}` is attained at n = 1.
pub fn decay_bound(
    ctx: &mut Ctx,
    gammas: &[GroupElement],
    growth: &GrowthEstimate,
) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("decay-bound", TOL);
    let model = ctx.model().clone();
    let c_prime = 2f64.sqrt() * (growth.a / 2.0).exp();
    for n in 1..=ctx.n_max {
        let sup_term = 2f64.powf(1.0 / (2.0 * n as f64)) * (growth.a / 2.0).exp();
        b.case(c_prime - sup_term, || {
            format!("c' = {c_prime} vs 2^(1/2n)·e^(a/2) = {sup_term} at n={n}")
        });
    }
    for gamma in gammas {
        let d = ctx.lf.length(gamma)? as f64;
        for n in 1..=ctx.n_max {
            let block = ctx.block(n, gamma)?;
            let envelope_bound = c_prime * d * ctx.params.slope(n as u64)?;
            b.case(envelope_bound - block.norm_2n, || {
                format!(
                    "gamma={}, n={n}: ‖b_n‖ = {} vs c'·d·slope = {envelope_bound}",
                    model.display(gamma),
                    block.norm_2n
                )
            });
            let count =
                ctx.ball(&model.identity(), n)?.cardinality() + ctx.ball(gamma, n)?.cardinality();
            let raw_bound = (count as f64).powf(1.0 / (2.0 * n as f64)) * block.values.sup_norm();
            b.case(raw_bound - block.norm_2n, || {
                format!(
                    "gamma={}, n={n}: ‖b_n‖ = {} vs counting bound {raw_bound}",
                    model.display(gamma),
                    block.norm_2n
                )
            });
        }
    }
    Ok(b.finish())
}

/// The disjoint-support lower bound: when `d(γ,e) > 2n` the supports of
/// `π(γ)φⁿ` and `φⁿ` are disjoint (verified as sets) and
/// `‖b_n(γ)‖_{2n} ≥ 2^{1/2n}/s_k(n) ≥ 1/s_k(n)`. Pairs that fail the
/// premise are skipped, never passed.
pub fn lower_bound(ctx: &mut Ctx, gammas: &[GroupElement]) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("lower-bound", TOL);
    let model = ctx.model().clone();
    for gamma in gammas {
        let d = ctx.lf.length(gamma)?;
        for n in 1..=ctx.n_max {
            if d <= 2 * n as u64 {
                b.skip();
                continue;
            }
            let t = ctx.tent(n);
            let shifted = t.translate(gamma)?;
            let overlap = shifted.support().find(|x| t.value(x) != 0.0).cloned();
            b.case_exact(overlap.is_none(), || {
                format!(
                    "gamma={}, n={n}: supports overlap at {}",
                    model.display(gamma),
                    model.display(overlap.as_ref().unwrap())
                )
            });
            let norm = ctx.block(n, gamma)?.norm_2n;
            let scale = ctx.params.scale(n as u64)?;
            let bound = 2f64.powf(1.0 / (2.0 * n as f64)) / scale;
            b.case(norm - bound, || {
                format!(
                    "gamma={}, n={n}: ‖b_n‖ = {norm} vs 2^(1/2n)/s = {bound}",
                    model.display(gamma)
                )
            });
            b.case(norm - 1.0 / scale, || {
                format!(
                    "gamma={}, n={n}: ‖b_n‖ = {norm} vs 1/s = {}",
                    model.display(gamma),
                    1.0 / scale
                )
            });
        }
    }
    Ok(b.finish())
}

fn partial_sum(params: &ScaleParams, n: u32) -> Result<f64> {
    let mut s = 0.0;
    for m in 1..=n as u64 {
        s += params.series_term(m)?;
    }
    Ok(s)
}

/// Certified lower bounds on the mixed norm: for `d(γ,e) > 2N`,
/// `Σ_{n≤N_max}‖b_n(γ)‖² ≥ Σ_{n≤N} 1/(n·∂₁(n)···∂_k(n))`, and monotone
/// growth of the mixed norm along a geodesic generator ray.
pub fn properness(ctx: &mut Ctx, gammas: &[GroupElement]) -> Result<CheckOutcome> {
    let mut d_max = 0u64;
    for gamma in gammas {
        d_max = d_max.max(ctx.lf.length(gamma)?);
    }
    let n_cap = ((d_max.saturating_sub(1)) / 2).min(ctx.n_max as u64) as u32;
    if n_cap < 1 {
        return Ok(CheckBuilder::skipped(
            "properness",
            format!("no sampled gamma has d(gamma,e) > 2 (max distance {d_max})"),
        ));
    }
    let mut b = CheckBuilder::new("properness", TOL);
    properness_cases(ctx, n_cap, gammas, &mut b)?;
    ray_cases(ctx, &mut b)?;
    Ok(b.finish())
}

/// Geodesic generator ray `γ_j = g^j`, `j = 1..=2·n_max`: the mixed
/// norms must be non-decreasing and stay above the partial sums
/// certified for the distance reached so far.
fn ray_cases(ctx: &mut Ctx, b: &mut CheckBuilder) -> Result<()> {
    let model = ctx.model().clone();
    let ray = generator_ray(&model, 2 * ctx.n_max);
    let mut prev: Option<f64> = None;
    for (j, gamma) in ray.iter().enumerate() {
        let j = j as u64 + 1;
        if ctx.lf.length(gamma)? != j {
            break; // ray stopped being geodesic (finite group wrapped)
        }
        let mixed = ctx.vector(gamma)?.mixed_norm_sq;
        if let Some(prev) = prev {
            b.case(mixed - prev, || {
                format!("ray step j={j}: mixed norm went from {prev} to {mixed}")
            });
        }
        let certified_n = (((j - 1) / 2) as u32).min(ctx.n_max);
        if certified_n >= 1 {
            let sum = partial_sum(&ctx.params, certified_n)?;
            b.case(mixed - sum, || {
                format!("ray j={j}: mixed = {mixed} vs certified sum {sum} (N={certified_n})")
            });
        }
        prev = Some(mixed);
    }
    Ok(())
}

fn properness_cases(
    ctx: &mut Ctx,
    n: u32,
    gammas: &[GroupElement],
    b: &mut CheckBuilder,
) -> Result<usize> {
    let model = ctx.model().clone();
    let sum = partial_sum(&ctx.params, n)?;
    let mut qualified = 0;
    for gamma in gammas {
        if ctx.lf.length(gamma)? <= 2 * n as u64 {
            b.skip();
            continue;
        }
        qualified += 1;
        let mut mixed = 0.0;
        for block_n in 1..=n {
            let norm = ctx.block(block_n, gamma)?.norm_2n;
            mixed += norm * norm;
        }
        b.case(mixed - sum, || {
            format!(
                "gamma={}: truncated mixed norm {mixed} vs partial sum {sum} (N={n})",
                model.display(gamma)
            )
        });
    }
    Ok(qualified)
}

/// Standalone entry point: partial-sum properness at an explicit `N`
/// plus ray monotonicity over `j = 1..=2N`; it is a configuration error
/// if no supplied γ satisfies the premise.
pub fn check_properness(
    lf: &LengthFunction,
    params: &ScaleParams,
    n: u32,
    gammas: &[GroupElement],
) -> Result<CheckOutcome> {
    if n < 1 {
        return Err(Error::config("properness needs N ≥ 1"));
    }
    let mut ctx = Ctx::new(lf, *params, n, 1.0)?;
    let mut b = CheckBuilder::new("properness", TOL);
    let qualified = properness_cases(&mut ctx, n, gammas, &mut b)?;
    if qualified == 0 {
        return Err(Error::config(format!(
            "no gamma satisfies d(gamma,e) > 2N = {}",
            2 * n
        )));
    }
    ray_cases(&mut ctx, &mut b)?;
    Ok(b.finish())
}

/// One row of the divergence table.
#[derive(Debug, Clone, Serialize)]
pub struct DivergenceRow {
    pub m: u64,
    /// `S(M) = Σ_{n≤M} 1/(n·∂₁(n)···∂_k(n))`
    pub partial_sum: f64,
    /// `∂_{k+1}(M)`, the integral-comparison reference
    pub iterlog_next: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivergenceTable {
    pub k: u32,
    pub n: u64,
    pub rows: Vec<DivergenceRow>,
}

/// Partial sums of the minorizing series at logarithmically spaced
/// checkpoints `M ≤ n`, against the reference `∂_{k+1}(M)`.
pub fn divergence_partial_sums(params: &ScaleParams, n: u64) -> Result<DivergenceTable> {
    if n < 1 {
        return Err(Error::domain("divergence table needs N ≥ 1"));
    }
    let mut grid: Vec<u64> = Vec::new();
    let mut base = 1u64;
    'outer: loop {
        for mult in [1u64, 2, 5] {
            match base.checked_mul(mult) {
                Some(m) if m <= n => grid.push(m),
                _ => break 'outer,
            }
        }
        base = match base.checked_mul(10) {
            Some(b) => b,
            None => break,
        };
    }
    if grid.last() != Some(&n) {
        grid.push(n);
    }

    let mut rows = Vec::with_capacity(grid.len());
    let mut sum = 0.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut next = grid.iter().copied().peekable();
    for m in 1..=n {
        let term = params.series_term(m)?;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if next.peek() == Some(&m) {
            next.next();
            rows.push(DivergenceRow {
                m,
                partial_sum: sum,
                iterlog_next: ScaleParams::iterlog_depth(params.k() + 1, m as f64)?,
            });
        }
    }
    Ok(DivergenceTable {
        k: params.k(),
        n,
        rows,
    })
}

/// Compares growth of the partial sums against the iterated-log
/// reference between consecutive checkpoints: both endpoints must sit
/// above the depth-(k+1) tower (where the reference is in its log
/// branch) and above 32 (where the sum-vs-integral error is ≪ the 0.1
/// tolerance).
pub fn divergence(ctx: &Ctx) -> Result<CheckOutcome> {
    const SPAN: u64 = 1_000_000;
    const TOLERANCE: f64 = 0.1;
    let k = ctx.params.k();
    let floor = ScaleParams::tower(k + 1).max(32.0);
    if floor >= SPAN as f64 {
        return Ok(CheckBuilder::skipped(
            "divergence",
            format!(
                "no checkpoints above the depth-{} tower within N = {SPAN}",
                k + 1
            ),
        ));
    }
    let table = divergence_partial_sums(&ctx.params, SPAN)?;
    let mut b = CheckBuilder::new("divergence", 0.0);
    for pair in table.rows.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        if (lo.m as f64) < floor {
            b.skip();
            continue;
        }
        let ds = hi.partial_sum - lo.partial_sum;
        let dref = hi.iterlog_next - lo.iterlog_next;
        b.case(TOLERANCE - (ds - dref).abs(), || {
            format!(
                "S({}) - S({}) = {ds} vs reference difference {dref}",
                hi.m, lo.m
            )
        });
    }
    Ok(b.finish())
}

fn kahan_lp_norm(f: &SparseFunction, p: f64) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (_, v) in f.iter() {
        let term = v.abs().powf(p);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    if sum == 0.0 {
        0.0
    } else {
        sum.powf(1.0 / p)
    }
}

/// The renormalized ℓ^p norm agrees with compensated direct summation on
/// moderate supports, and survives exponents that underflow the direct
/// sum.
pub fn norm_stability(ctx: &mut Ctx, gammas: &[GroupElement]) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("norm-stability", 1e-10);
    let model = ctx.model().clone();
    for gamma in gammas {
        for n in 1..=ctx.n_max {
            let block = ctx.block(n, gamma)?;
            if block.values.support_size() > 10_000 || block.values.is_zero() {
                b.skip();
                continue;
            }
            let naive = kahan_lp_norm(&block.values, 2.0 * n as f64);
            let rel = (block.norm_2n - naive).abs() / naive;
            b.case(-rel, || {
                format!(
                    "gamma={}, n={n}: stable {} vs direct {naive}",
                    model.display(gamma),
                    block.norm_2n
                )
            });
        }
    }
    // subnormal guard: two entries of 1e-200 at exponent 300
    if let Some(g) = model.generators().first() {
        let f = SparseFunction::from_entries(
            model.clone(),
            [(model.identity(), 1e-200), (g.clone(), 1e-200)],
        )?;
        let got = f.lp_norm(300.0)?;
        let expect = 1e-200 * 2f64.powf(1.0 / 300.0);
        let rel = (got - expect).abs() / expect;
        b.case(-rel, || {
            format!("subnormal two-point norm: {got:e} vs {expect:e}")
        });
    }
    Ok(b.finish())
}

/// `α(γ₁)∘α(γ₂) = α(γ₁γ₂)` blockwise on random block vectors, and
/// `α(e)ξ = ξ` exactly.
pub fn affine_homomorphism(ctx: &mut Ctx, seed: u64) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("affine-homomorphism", TOL);
    let model = ctx.model().clone();
    let mut rng = rng_for(seed, "affine");
    let xi: Vec<SparseFunction> = (1..=ctx.n_max)
        .map(|_| {
            let mut entries: Vec<(GroupElement, f64)> = Vec::with_capacity(3);
            for _ in 0..3 {
                let len = rng.gen_range(0..=ctx.n_max);
                let x = random_element(&model, &mut rng, len);
                entries.push((x, rng.gen_range(-1.0..1.0)));
            }
            SparseFunction::from_entries(model.clone(), entries)
        })
        .collect::<Result<_>>()?;

    let act = |ctx: &mut Ctx,
               gamma: &GroupElement,
               xi: &[SparseFunction]|
     -> Result<Vec<SparseFunction>> {
        let mut out = Vec::with_capacity(xi.len());
        for (i, block) in xi.iter().enumerate() {
            let bn = ctx.block(i as u32 + 1, gamma)?;
            out.push(block.translate(gamma)?.add(&bn.values)?);
        }
        Ok(out)
    };

    let e = model.identity();
    let same = act(ctx, &e, &xi)?;
    b.case_exact(same == xi, || "α(e)ξ != ξ".to_string());

    for _ in 0..10 {
        let lens = [rng.gen_range(1..=ctx.n_max), rng.gen_range(1..=ctx.n_max)];
        let g1 = random_element(&model, &mut rng, lens[0]);
        let g2 = random_element(&model, &mut rng, lens[1]);
        let g12 = model.mul_unchecked(&g1, &g2);
        let inner = act(ctx, &g2, &xi)?;
        let two_step = act(ctx, &g1, &inner)?;
        let one_step = act(ctx, &g12, &xi)?;
        for (n, (lhs, rhs)) in two_step.iter().zip(&one_step).enumerate() {
            let dev = lhs.sub(rhs)?.sup_norm();
            b.case(-dev, || {
                format!(
                    "gamma1={}, gamma2={}, block {}: deviation {dev}",
                    model.display(&g1),
                    model.display(&g2),
                    n + 1
                )
            });
        }
    }
    Ok(b.finish())
}

/// The headline improvement: the envelope `1/(n·s_k(n))` never exceeds
/// the 1/n reference, and the per-block upper bound times n is
/// non-increasing beyond small n.
pub fn decay_improvement(
    ctx: &mut Ctx,
    gammas: &[GroupElement],
    growth: &GrowthEstimate,
) -> Result<CheckOutcome> {
    let mut b = CheckBuilder::new("decay-improvement", TOL);
    let c_prime = 2f64.sqrt() * (growth.a / 2.0).exp();
    for n in 1..=ctx.n_max {
        let envelope = ctx.params.slope(n as u64)?;
        b.case(1.0 / n as f64 - envelope, || {
            format!("envelope {envelope} vs 1/n = {} at n={n}", 1.0 / n as f64)
        });
    }
    let model = ctx.model().clone();
    for gamma in gammas {
        let d = ctx.lf.length(gamma)? as f64;
        if d == 0.0 {
            b.skip();
            continue;
        }
        for n in 3..ctx.n_max {
            let here = c_prime * d * ctx.params.slope(n as u64)? * n as f64;
            let next = c_prime * d * ctx.params.slope(n as u64 + 1)? * (n as f64 + 1.0);
            b.case(here - next, || {
                format!(
                    "gamma={}: n·bound is {here} at n={n}, {next} at n+1",
                    model.display(gamma)
                )
            });
        }
    }
    Ok(b.finish())
}

/// Standalone entry point: the cocycle identity on a fresh context.
pub fn check_cocycle_identity(
    lf: &LengthFunction,
    params: &ScaleParams,
    n_max: u32,
    trials: u32,
    seed: u64,
) -> Result<CheckOutcome> {
    if trials < 1 {
        return Err(Error::config("trials must be ≥ 1"));
    }
    let mut ctx = Ctx::new(lf, *params, n_max, 1.0)?;
    cocycle_identity(&mut ctx, trials, seed)
}

/// Standalone entry point: the c′ decay chain for explicit γ, growth estimated to
/// radius `n_max`.
pub fn check_upper_bound(
    lf: &LengthFunction,
    params: &ScaleParams,
    gammas: &[GroupElement],
    n_max: u32,
) -> Result<CheckOutcome> {
    let growth = lf.growth_constant(n_max)?;
    let mut ctx = Ctx::new(lf, *params, n_max, 1.0)?;
    decay_bound(&mut ctx, gammas, &growth)
}

/// Standalone entry point: the disjoint-support lower bound for explicit γ.
pub fn check_lower_bound(
    lf: &LengthFunction,
    params: &ScaleParams,
    gammas: &[GroupElement],
    n_max: u32,
) -> Result<CheckOutcome> {
    let mut ctx = Ctx::new(lf, *params, n_max, 1.0)?;
    lower_bound(&mut ctx, gammas)
}
