use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, ValueEnum};
use serde::Serialize;
use votesketch::streams::OptimalHhConstants;
use votesketch::{Rule, RuleParams, RuleRegistry, Score};

/// Where ground truth for a trial comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    None,
    /// Exact evaluation: the rule on the full profile, brute-force margins, exact stream counts.
    Exact,
    /// The plurality move-votes margin oracle, usable at any scale.
    Plurality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HhAlgorithm {
    /// Sample, hash and Misra-Gries.
    Simple,
    /// Accelerated counters.
    Optimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HhConstants {
    Analysis,
    Reduced,
}

impl HhConstants {
    pub fn values(self) -> OptimalHhConstants {
        match self {
            HhConstants::Analysis => OptimalHhConstants::analysis(),
            HhConstants::Reduced => OptimalHhConstants::reduced(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SketchKind {
    Hh,
    Max,
    Min,
    Borda,
    Maximin,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "votesketch", version, about = "Exact, sampled and streaming election analysis")]
pub struct ExperimentConfig {
    /// Pipeline to run; `list` prints the available pipelines.
    pub command: String,
    #[arg(long, default_value = "plurality")]
    pub rule: String,
    /// `k` for k-approval and k-veto.
    #[arg(long)]
    pub k: Option<usize>,
    /// Copeland tie value (e.g. `1/2`) or a comma-separated score vector for `scoring`.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.1)]
    pub phi: f64,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Input vote, item, ranking or margin file.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Output file; a `<out>.json` sidecar records this configuration.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exact")]
    pub oracle: Oracle,
    /// Generate a Zipf item stream with this exponent instead of reading `--in`.
    #[arg(long)]
    pub zipf: Option<f64>,
    /// Generate a ranking stream with candidate `a` moved to the top of this fraction of rankings, as `top=<frac>`.
    #[arg(long)]
    pub plant: Option<String>,
    /// Number of candidates for generators.
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of votes for generators.
    #[arg(long)]
    pub n: Option<u64>,
    /// Stream length for generators.
    #[arg(long)]
    pub len: Option<u64>,
    /// Item universe `0..N`.
    #[arg(long)]
    pub universe: Option<u64>,
    #[arg(long, value_enum, default_value = "simple")]
    pub algorithm: HhAlgorithm,
    #[arg(long, value_enum, default_value = "analysis")]
    pub hh_constants: HhConstants,
    /// Sketch wrapped by `unknown-length`.
    #[arg(long, value_enum, default_value = "max")]
    pub sketch: SketchKind,
    /// Largest margin magnitude for random McGarvey targets.
    #[arg(long, default_value_t = 6)]
    pub max_margin: i64,
}

fn parse_score(s: &str) -> anyhow::Result<Score> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse()?, b.trim().parse()?);
            if b == 0 {
                bail!("zero denominator in `{s}`");
            }
            Ok(Score::new(a, b))
        }
        None => Ok(Score::from_integer(s.parse()?)),
    }
}

impl ExperimentConfig {
    pub fn from_args<I, T>(args: I) -> anyhow::Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cfg = Self::try_parse_from(args)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            bail!("--eps must lie in (0, 1), got {}", self.eps);
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            bail!("--delta must lie in (0, 1), got {}", self.delta);
        }
        if !(self.phi > 0.0 && self.phi <= 1.0) {
            bail!("--phi must lie in (0, 1], got {}", self.phi);
        }
        if self.trials == 0 {
            bail!("--trials must be at least 1");
        }
        Ok(())
    }

    pub fn rule(&self) -> anyhow::Result<Rule> {
        let mut params = RuleParams { k: self.k, ..RuleParams::default() };
        if let Some(a) = &self.alpha {
            if a.contains(',') {
                params.scores = Some(a.split(',').map(parse_score).collect::<anyhow::Result<_>>()?);
            } else {
                params.alpha = Some(parse_score(a)?);
            }
        }
        Ok(RuleRegistry::default().build(&self.rule, &params)?)
    }

    /// `(top, share)` from `--plant top=<frac>`; the planted candidate is index 0.
    pub fn plant_share(&self) -> anyhow::Result<Option<f64>> {
        let Some(p) = &self.plant else { return Ok(None) };
        let share = p
            .strip_prefix("top=")
            .with_context(|| format!("--plant expects `top=<frac>`, got `{p}`"))?
            .parse::<f64>()?;
        if !(0.0..=1.0).contains(&share) {
            bail!("--plant fraction must lie in [0, 1], got {share}");
        }
        Ok(Some(share))
    }

    pub fn input(&self) -> anyhow::Result<&std::path::Path> {
        self.input.as_deref().with_context(|| format!("`{}` needs --in", self.command))
    }
}
