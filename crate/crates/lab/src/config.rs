use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use mindenom::experiments::EXPERIMENT_SHELL_CAP;
use serde::{Deserialize, Serialize};

use crate::LabError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    #[value(name = "theorem-1.2")]
    #[serde(rename = "theorem-1.2")]
    Theorem12,
    #[value(name = "theorem-1.4")]
    #[serde(rename = "theorem-1.4")]
    Theorem14,
    #[value(name = "theorem-5.5")]
    #[serde(rename = "theorem-5.5")]
    Theorem55,
    #[value(name = "theorem-1.5")]
    #[serde(rename = "theorem-1.5")]
    Theorem15,
    SiegelCheck,
    OracleSuite,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Theorem12 => "theorem-1.2",
            Experiment::Theorem14 => "theorem-1.4",
            Experiment::Theorem55 => "theorem-5.5",
            Experiment::Theorem15 => "theorem-1.5",
            Experiment::SiegelCheck => "siegel-check",
            Experiment::OracleSuite => "oracle-suite",
        }
    }
}

/// Which cone the surface experiment writes as its primary series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ConeChoice {
    /// `x > 0, |y| < delta x`
    Symmetric,
    /// `x > 0, y < delta x`
    AsPrinted,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum DeltaList {
    One(f64),
    Many(Vec<f64>),
}

/// Flat keys accepted in a TOML config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    delta: Option<DeltaList>,
    n: Option<u64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    dim_m: Option<usize>,
    dim_n: Option<usize>,
    cone: Option<ConeChoice>,
    origami: Option<String>,
    alpha: Option<u64>,
    shell_cap: Option<u64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// TOML file with flat keys; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// One or more deltas in (0, 1), comma separated
    #[arg(long, value_delimiter = ',')]
    pub delta: Vec<f64>,
    /// Sample count (instances for oracle-suite)
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Rows m of the matrix X
    #[arg(long)]
    pub dim_m: Option<usize>,
    /// Columns n of the matrix X
    #[arg(long)]
    pub dim_n: Option<usize>,
    #[arg(long, value_enum)]
    pub cone: Option<ConeChoice>,
    /// Permutations as `h=(1 2)(3);v=(1 3)(2)`, or a file holding them
    #[arg(long)]
    pub origami: Option<String>,
    /// Shear period; found from the surface when omitted
    #[arg(long)]
    pub alpha: Option<u64>,
    /// Largest |q|_inf searched by theorem-1.4 and theorem-5.5
    #[arg(long)]
    pub shell_cap: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub deltas: Vec<f64>,
    pub n: u64,
    pub seed: u64,
    pub out: PathBuf,
    pub dim_m: usize,
    pub dim_n: usize,
    pub cone: ConeChoice,
    pub origami: Option<String>,
    pub alpha: Option<u64>,
    pub shell_cap: u64,
}

fn read_file(path: &Path) -> Result<FileConfig, LabError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LabError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| LabError::Validation(format!("bad config {}: {e}", path.display())))
}

fn origami_text(spec: &str) -> Result<String, LabError> {
    if spec.contains('=') {
        return Ok(spec.replace(';', "\n"));
    }
    std::fs::read_to_string(spec).map_err(|e| LabError::Validation(format!("cannot read origami {spec}: {e}")))
}

impl RunConfig {
    pub fn resolve(experiment: Experiment, args: RunArgs) -> Result<Self, LabError> {
        let file = match &args.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let deltas = if !args.delta.is_empty() {
            args.delta
        } else {
            match file.delta {
                Some(DeltaList::One(d)) => vec![d],
                Some(DeltaList::Many(v)) => v,
                None => vec![default_delta(experiment)],
            }
        };
        let (dm, dn) = default_dims(experiment);
        let origami = match args.origami.or(file.origami) {
            Some(s) => Some(origami_text(&s)?),
            None => None,
        };
        let config = RunConfig {
            experiment,
            deltas,
            n: args.n.or(file.n).unwrap_or(default_n(experiment)),
            seed: args.seed.or(file.seed).unwrap_or(0),
            out: args.out.or(file.out).unwrap_or_else(|| PathBuf::from("lab-out")),
            dim_m: args.dim_m.or(file.dim_m).unwrap_or(dm),
            dim_n: args.dim_n.or(file.dim_n).unwrap_or(dn),
            cone: args.cone.or(file.cone).unwrap_or(ConeChoice::Symmetric),
            origami,
            alpha: args.alpha.or(file.alpha),
            shell_cap: args.shell_cap.or(file.shell_cap).unwrap_or(EXPERIMENT_SHELL_CAP),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), LabError> {
        let bad = |msg: String| Err(LabError::Validation(msg));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.deltas.is_empty() {
            return bad("at least one delta is required".into());
        }
        if let Some(d) = self.deltas.iter().find(|d| !(d.is_finite() && **d > 0.0 && **d < 1.0)) {
            return bad(format!("delta must lie in (0, 1), got {d}"));
        }
        if self.experiment == Experiment::Theorem14 && self.dim_n != 1 {
            return bad("theorem-1.4 approximates a single vector; use dim_n = 1".into());
        }
        if self.dim_m == 0 || self.dim_n == 0 {
            return bad("dimensions must be at least 1".into());
        }
        if self.shell_cap == 0 {
            return bad("shell_cap must be at least 1".into());
        }
        if self.alpha == Some(0) {
            return bad("alpha must be at least 1".into());
        }
        Ok(())
    }
}

fn default_delta(e: Experiment) -> f64 {
    match e {
        Experiment::Theorem14 | Experiment::Theorem55 | Experiment::Theorem15 => 1e-4,
        _ => 1e-6,
    }
}

fn default_n(e: Experiment) -> u64 {
    match e {
        Experiment::OracleSuite => 1000,
        Experiment::Theorem14 | Experiment::Theorem55 | Experiment::Theorem15 => 50_000,
        _ => 100_000,
    }
}

fn default_dims(e: Experiment) -> (usize, usize) {
    match e {
        Experiment::Theorem14 => (2, 1),
        Experiment::Theorem55 => (1, 2),
        _ => (1, 1),
    }
}
