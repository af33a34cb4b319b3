//! The five subcommands. Every table is rendered to a string first so
//! the caller can route it to stdout or a file unchanged.

use std::sync::Arc;

use serde::{Serialize, Serializer};

use cocycle_core::verify::{round_sig12, VerifyConfig};
use cocycle_core::{
    cocycle_block, divergence_partial_sums, parse_group_spec, run_full_report, Error,
    LengthFunction, Result, ScaleParams,
};

use crate::config::{Format, RunConfig};
use crate::output::{fmt_g, to_csv, to_json};

/// An f64 that serializes at the printed precision (12 significant digits).
#[derive(Debug, Clone, Copy)]
struct Sig12(f64);

impl Serialize for Sig12 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(round_sig12(self.0))
    }
}

fn build(cfg: &RunConfig) -> Result<LengthFunction> {
    let model = Arc::new(parse_group_spec(&cfg.group)?);
    Ok(LengthFunction::with_budget(model, cfg.budget))
}

#[derive(Serialize)]
struct NormsRow {
    group: String,
    k: u32,
    n: u32,
    gamma: String,
    gamma_length: u64,
    block_norm: Sig12,
    upper_bound: Sig12,
    lower_bound: Option<Sig12>,
    envelope: Sig12,
}

/// Per-block norms `‖b_n(γ)‖_{ℓ^{2n}}` next to the proved upper and
/// lower bounds and the decay envelope.
pub fn norms(cfg: &RunConfig) -> Result<String> {
    if cfg.gammas.is_empty() {
        return Err(Error::config("norms needs at least one --gamma"));
    }
    let lf = build(cfg)?;
    let model = lf.model().clone();
    let params = ScaleParams::new(cfg.k());
    let n_max = cfg.nmax_u32()?;
    let growth = lf.growth_constant(n_max)?;
    let c_prime = 2f64.sqrt() * (growth.a / 2.0).exp();

    let mut rows = Vec::new();
    for word in &cfg.gammas {
        let gamma = model.eval_word(&model.parse_word(word)?)?;
        let d = lf.length(&gamma)?;
        for n in 1..=n_max {
            let block = cocycle_block(&lf, &params, n, &gamma)?;
            let envelope = params.slope(n as u64)?;
            let lower = if d > 2 * n as u64 {
                Some(2f64.powf(1.0 / (2.0 * n as f64)) / params.scale(n as u64)?)
            } else {
                None
            };
            rows.push(NormsRow {
                group: model.name().to_string(),
                k: cfg.k(),
                n,
                gamma: model.display(&gamma),
                gamma_length: d,
                block_norm: Sig12(block.norm_2n),
                upper_bound: Sig12(c_prime * d as f64 * envelope),
                lower_bound: lower.map(Sig12),
                envelope: Sig12(envelope),
            });
        }
    }

    match cfg.format {
        Format::Json => Ok(to_json(&rows)),
        Format::Csv => {
            let header = [
                "group",
                "k",
                "n",
                "gamma",
                "gamma_length",
                "block_norm",
                "upper_bound",
                "lower_bound",
                "envelope",
            ];
            let records: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.group.clone(),
                        r.k.to_string(),
                        r.n.to_string(),
                        r.gamma.clone(),
                        r.gamma_length.to_string(),
                        fmt_g(r.block_norm.0),
                        fmt_g(r.upper_bound.0),
                        r.lower_bound.map(|v| fmt_g(v.0)).unwrap_or_default(),
                        fmt_g(r.envelope.0),
                    ]
                })
                .collect();
            to_csv(&header, &records)
        }
    }
}

#[derive(Serialize)]
struct GrowthRow {
    r: u32,
    ball_cardinality: u64,
    log_card_over_r: Sig12,
}

#[derive(Serialize)]
struct GrowthOut {
    group: String,
    rows: Vec<GrowthRow>,
    a: Sig12,
    certified_max_radius: u32,
}

/// Ball cardinalities up to the configured radius and the growth
/// constant they certify.
pub fn growth(cfg: &RunConfig) -> Result<String> {
    let lf = build(cfg)?;
    let estimate = lf.growth_constant(cfg.nmax_u32()?)?;
    let rows: Vec<GrowthRow> = estimate
        .per_radius
        .iter()
        .map(|&(r, card)| GrowthRow {
            r,
            ball_cardinality: card,
            log_card_over_r: Sig12((card as f64).ln() / r as f64),
        })
        .collect();
    let out = GrowthOut {
        group: lf.model().name().to_string(),
        rows,
        a: Sig12(estimate.a),
        certified_max_radius: estimate.max_radius,
    };
    match cfg.format {
        Format::Json => Ok(to_json(&out)),
        Format::Csv => {
            let header = ["R", "ball_cardinality", "log_card_over_R"];
            let mut records: Vec<Vec<String>> = out
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.r.to_string(),
                        r.ball_cardinality.to_string(),
                        fmt_g(r.log_card_over_r.0),
                    ]
                })
                .collect();
            records.push(vec![
                "a".to_string(),
                fmt_g(out.a.0),
                format!("certified_max_radius={}", out.certified_max_radius),
            ]);
            to_csv(&header, &records)
        }
    }
}

#[derive(Serialize)]
struct CompareColumn {
    k: u32,
    envelope: Sig12,
    block_norm: Sig12,
}

#[derive(Serialize)]
struct CompareRow {
    n: u32,
    ref_1_over_n: Sig12,
    per_k: Vec<CompareColumn>,
}

/// Side-by-side decay: for one fixed γ, block norms and envelopes for
/// each requested k against the classical 1/n reference.
pub fn compare(cfg: &RunConfig) -> Result<String> {
    if cfg.gammas.len() != 1 {
        return Err(Error::config("compare needs exactly one --gamma"));
    }
    let lf = build(cfg)?;
    let model = lf.model().clone();
    let gamma = model.eval_word(&model.parse_word(&cfg.gammas[0])?)?;
    let n_max = cfg.nmax_u32()?;

    let mut rows = Vec::new();
    for n in 1..=n_max {
        let mut per_k = Vec::new();
        for &k in &cfg.ks {
            let params = ScaleParams::new(k);
            per_k.push(CompareColumn {
                k,
                envelope: Sig12(params.slope(n as u64)?),
                block_norm: Sig12(cocycle_block(&lf, &params, n, &gamma)?.norm_2n),
            });
        }
        rows.push(CompareRow {
            n,
            ref_1_over_n: Sig12(1.0 / n as f64),
            per_k,
        });
    }

    match cfg.format {
        Format::Json => Ok(to_json(&rows)),
        Format::Csv => {
            let mut header = vec!["n".to_string(), "ref_1_over_n".to_string()];
            for &k in &cfg.ks {
                header.push(format!("envelope_k{k}"));
                header.push(format!("block_norm_k{k}"));
            }
            let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
            let records: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    let mut rec = vec![row.n.to_string(), fmt_g(row.ref_1_over_n.0)];
                    for col in &row.per_k {
                        rec.push(fmt_g(col.envelope.0));
                        rec.push(fmt_g(col.block_norm.0));
                    }
                    rec
                })
                .collect();
            to_csv(&header_refs, &records)
        }
    }
}

#[derive(Serialize)]
struct DivergenceOut {
    k: u32,
    n: u64,
    rows: Vec<DivergenceRowOut>,
}

#[derive(Serialize)]
struct DivergenceRowOut {
    m: u64,
    partial_sum: Sig12,
    iterlog_next: Sig12,
}

/// Partial sums of `Σ 1/(n·∂₁(n)···∂_k(n))` at logarithmic checkpoints.
pub fn divergence(cfg: &RunConfig) -> Result<String> {
    let params = ScaleParams::new(cfg.k());
    let table = divergence_partial_sums(&params, cfg.nmax)?;
    let out = DivergenceOut {
        k: table.k,
        n: table.n,
        rows: table
            .rows
            .iter()
            .map(|r| DivergenceRowOut {
                m: r.m,
                partial_sum: Sig12(r.partial_sum),
                iterlog_next: Sig12(r.iterlog_next),
            })
            .collect(),
    };
    match cfg.format {
        Format::Json => Ok(to_json(&out)),
        Format::Csv => {
            let header = ["M", "partial_sum", "iterlog_next"];
            let records: Vec<Vec<String>> = out
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.m.to_string(),
                        fmt_g(r.partial_sum.0),
                        fmt_g(r.iterlog_next.0),
                    ]
                })
                .collect();
            to_csv(&header, &records)
        }
    }
}

/// Runs the full verification suite. Returns the JSON report and
/// whether every check passed.
pub fn verify(cfg: &RunConfig, tent_slope_factor: f64) -> Result<(String, bool)> {
    let vcfg = VerifyConfig {
        group_spec: cfg.group.clone(),
        k: cfg.k(),
        n_max: cfg.nmax_u32()?,
        gammas: cfg.gammas.clone(),
        trials: cfg.trials,
        seed: cfg.seed,
        budget: cfg.budget,
        tent_slope_factor,
    };
    let report = run_full_report(&vcfg)?;
    Ok((report.to_json(), report.passed()))
}
