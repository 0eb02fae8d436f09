//! Run configuration: defaults come from each experiment's protocol, a
//! key=value config file may override them, and command-line flags win over
//! both.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use cobweb_sims::{EitherMode, Experiment, ProtocolParams};

pub const DEFAULT_SEED: u64 = 7;
pub const OUT_DIR_ENV: &str = "COBWEB_OUT_DIR";

#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub alpha: Option<f64>,
    pub max_nodes: Option<usize>,
    pub participants: Option<u32>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub either_labels: Option<EitherMode>,
}

impl Overrides {
    /// Later sources only fill holes: call on the stronger source first.
    fn or(self, weaker: Overrides) -> Overrides {
        Overrides {
            alpha: self.alpha.or(weaker.alpha),
            max_nodes: self.max_nodes.or(weaker.max_nodes),
            participants: self.participants.or(weaker.participants),
            seed: self.seed.or(weaker.seed),
            out: self.out.or(weaker.out),
            either_labels: self.either_labels.or(weaker.either_labels),
        }
    }
}

pub fn parse_either(s: &str) -> Result<EitherMode> {
    match s {
        "per-presentation" => Ok(EitherMode::PerPresentation),
        "per-item" => Ok(EitherMode::PerItem),
        other => bail!("unknown either-labels mode `{other}` (per-presentation or per-item)"),
    }
}

/// Reads a flat key=value file. Blank lines and `#` comments are skipped.
pub fn read_config_file(path: &Path) -> Result<Overrides> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    let mut o = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("{}:{}: expected key = value", path.display(), lineno + 1);
        };
        let key = key.trim();
        let value = value.trim().trim_matches('"');
        let ctx = || format!("{}:{}: bad value for {key}", path.display(), lineno + 1);
        match key {
            "alpha" => o.alpha = Some(value.parse().with_context(ctx)?),
            "max_nodes" => o.max_nodes = Some(value.parse().with_context(ctx)?),
            "participants" => o.participants = Some(value.parse().with_context(ctx)?),
            "seed" => o.seed = Some(value.parse().with_context(ctx)?),
            "out" => o.out = Some(PathBuf::from(value)),
            "either_labels" => o.either_labels = Some(parse_either(value)?),
            other => bail!("{}:{}: unknown key `{other}`", path.display(), lineno + 1),
        }
    }
    Ok(o)
}

/// Resolved settings for one run.
pub struct Resolved {
    pub experiment: Experiment,
    pub params: ProtocolParams,
    pub out_dir: PathBuf,
}

pub fn resolve(experiment: &str, flags: Overrides, config_file: Option<&Path>) -> Result<Resolved> {
    let Some(exp) = Experiment::parse(experiment) else {
        bail!(
            "unknown experiment `{experiment}` (expected one of: {})",
            Experiment::ALL
                .iter()
                .map(|e| e.id())
                .collect::<Vec<_>>()
                .join(", ")
        );
    };
    let merged = match config_file {
        Some(path) => flags.or(read_config_file(path)?),
        None => flags,
    };
    let mut params = exp.default_protocol(merged.seed.unwrap_or(DEFAULT_SEED));
    if let Some(alpha) = merged.alpha {
        if alpha <= 0.0 {
            bail!("alpha must be positive, got {alpha}");
        }
        params.alpha = alpha;
    }
    if let Some(n) = merged.max_nodes {
        if n == 0 {
            bail!("max-nodes must be at least 1");
        }
        params.max_nodes = n;
    }
    if let Some(n) = merged.participants {
        if n < 2 {
            bail!("need at least 2 participants, got {n}");
        }
        params.participants = n;
    }
    if let Some(mode) = merged.either_labels {
        params.either_mode = mode;
    }
    let base = merged
        .out
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    Ok(Resolved {
        experiment: exp,
        params,
        out_dir: base.join(exp.id()),
    })
}
