//! Flag resolution: command line over `--config` file over defaults.
//!
//! The config file is flat `key=value` lines mirroring the long flags
//! (`group`, `k`, `nmax`, `gamma`, `trials`, `seed`, `format`, `out`,
//! `budget`); `gamma` and `k` may repeat, `#` starts a comment.

use std::path::PathBuf;

use clap::ValueEnum;
use cocycle_core::{Error, Result, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Shared flags; every field is optional so file values can fill gaps.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct CommonArgs {
    /// Group specification: `free:<r>`, `zd:<d>`, `heis3`, or `finite:<path>`
    #[arg(long)]
    pub group: Option<String>,
    /// Truncation level / maximum block index (divergence: series length)
    #[arg(long)]
    pub nmax: Option<u64>,
    /// Word to evaluate (repeatable)
    #[arg(long)]
    pub gamma: Vec<String>,
    /// Number of random trials for sampled checks
    #[arg(long)]
    pub trials: Option<u32>,
    /// Seed for all sampling
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output format for tables
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output path (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Element budget per enumeration
    #[arg(long)]
    pub budget: Option<u64>,
    /// Flat key=value file mirroring the flags above
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Values parsed from a `--config` file.
#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    pub group: Option<String>,
    pub k: Vec<u32>,
    pub nmax: Option<u64>,
    pub gamma: Vec<String>,
    pub trials: Option<u32>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub budget: Option<u64>,
}

pub fn load_file_config(path: Option<&PathBuf>) -> Result<FileConfig> {
    let mut fc = FileConfig::default();
    let Some(path) = path else {
        return Ok(fc);
    };
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(line, "expected key=value"))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "group" => fc.group = Some(value.to_string()),
            "k" => fc.k.push(
                value
                    .parse()
                    .map_err(|_| Error::parse(value, "k must be a non-negative integer"))?,
            ),
            "nmax" => fc.nmax = Some(parse_num(value, "nmax")?),
            "gamma" => fc.gamma.push(value.to_string()),
            "trials" => fc.trials = Some(parse_num(value, "trials")? as u32),
            "seed" => fc.seed = Some(parse_num(value, "seed")?),
            "format" => {
                fc.format = Some(match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    other => return Err(Error::parse(other, "format must be csv or json")),
                })
            }
            "out" => fc.out = Some(PathBuf::from(value)),
            "budget" => fc.budget = Some(parse_num(value, "budget")?),
            other => return Err(Error::parse(other, "unknown config key")),
        }
    }
    Ok(fc)
}

fn parse_num(value: &str, key: &str) -> Result<u64> {
    value
        .parse()
        .map_err(|_| Error::parse(value, format!("{key} must be a non-negative integer")))
}

/// Fully resolved run configuration; construction validates every
/// precondition before any computation starts.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub group: String,
    pub ks: Vec<u32>,
    pub nmax: u64,
    pub gammas: Vec<String>,
    pub trials: u32,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub budget: u64,
}

impl RunConfig {
    pub fn resolve(
        common: &CommonArgs,
        cli_ks: &[u32],
        default_ks: &[u32],
        default_nmax: u64,
    ) -> Result<RunConfig> {
        let file = load_file_config(common.config.as_ref())?;
        let mut ks = if !cli_ks.is_empty() {
            cli_ks.to_vec()
        } else if !file.k.is_empty() {
            file.k.clone()
        } else {
            default_ks.to_vec()
        };
        // first occurrence wins; duplicate k values would duplicate columns
        let mut seen = std::collections::BTreeSet::new();
        ks.retain(|k| seen.insert(*k));
        let gammas = if !common.gamma.is_empty() {
            common.gamma.clone()
        } else {
            file.gamma.clone()
        };
        let cfg = RunConfig {
            group: common
                .group
                .clone()
                .or(file.group)
                .ok_or_else(|| Error::config("--group is required"))?,
            ks,
            nmax: common.nmax.or(file.nmax).unwrap_or(default_nmax),
            gammas,
            trials: common.trials.or(file.trials).unwrap_or(200),
            seed: common.seed.or(file.seed).unwrap_or(0),
            format: common.format.or(file.format).unwrap_or(Format::Csv),
            out: common.out.clone().or(file.out),
            budget: common.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET),
        };
        if cfg.nmax < 1 {
            return Err(Error::config("nmax must be ≥ 1"));
        }
        if cfg.trials < 1 {
            return Err(Error::config("trials must be ≥ 1"));
        }
        if cfg.budget < 1 {
            return Err(Error::config("budget must be ≥ 1"));
        }
        Ok(cfg)
    }

    pub fn k(&self) -> u32 {
        self.ks.first().copied().unwrap_or(1)
    }

    pub fn nmax_u32(&self) -> Result<u32> {
        u32::try_from(self.nmax).map_err(|_| Error::config("nmax too large for block index"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_values_fill_gaps_and_flags_win() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(
            &path,
            "# comment\ngroup=zd:2\nk=2\nnmax=4\ngamma=(1,0)\ngamma=(0,1)\nseed=9\n",
        )
        .unwrap();
        let common = CommonArgs {
            seed: Some(11),
            config: Some(path),
            ..CommonArgs::default()
        };
        let cfg = RunConfig::resolve(&common, &[], &[1], 6).unwrap();
        assert_eq!(cfg.group, "zd:2");
        assert_eq!(cfg.ks, vec![2]);
        assert_eq!(cfg.nmax, 4);
        assert_eq!(cfg.gammas, vec!["(1,0)", "(0,1)"]);
        assert_eq!(cfg.seed, 11); // flag beats file
        assert_eq!(cfg.trials, 200); // default fills the rest
    }

    #[test]
    fn missing_group_is_a_config_error() {
        let err = RunConfig::resolve(&CommonArgs::default(), &[], &[1], 6).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn unknown_config_key_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.conf");
        std::fs::write(&path, "grup=zd:2\n").unwrap();
        let common = CommonArgs {
            config: Some(path),
            ..CommonArgs::default()
        };
        assert!(RunConfig::resolve(&common, &[], &[1], 6).is_err());
    }
}
