use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use mindenom::experiments::Run;
use mindenom::stats::{t_grid, ChenHaynesEstimate};
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::LabError;

pub const MANIFEST_SCHEMA: u32 = 1;
pub const SAMPLES_HEADER: &str = "index,input,statistic";
pub const CDF_HEADER: &str = "T,xi_hat";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A run written to `dir` relative to the output root.
#[derive(Debug)]
pub struct Series {
    pub dir: PathBuf,
    pub label: String,
    pub delta: Option<f64>,
    pub run: Run,
}

#[derive(Debug, Serialize)]
struct SeriesEntry<'a> {
    dir: String,
    label: &'a str,
    delta: Option<f64>,
    n: usize,
    mean: f64,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    schema_version: u32,
    csv_schema: Value,
    code_version: &'static str,
    rng_algorithm: &'static str,
    config: &'a RunConfig,
    wall_time_seconds: f64,
    series: Vec<SeriesEntry<'a>>,
    summary: &'a Value,
}

pub fn samples_csv(run: &Run) -> String {
    let mut out = String::with_capacity(run.samples.len() * 64);
    out.push_str(SAMPLES_HEADER);
    out.push('\n');
    for s in &run.samples {
        let input: Vec<String> = s.input.iter().map(|&v| float(v)).collect();
        let _ = writeln!(out, "{},{},{}", s.index, input.join(" "), float(s.statistic));
    }
    out
}

pub fn cdf_csv(run: &Run, delta: Option<f64>) -> String {
    let est = ChenHaynesEstimate::from_cdf(&run.cdf, t_grid(), delta, None);
    let mut out = String::from(CDF_HEADER);
    out.push('\n');
    for (t, xi) in est.grid.iter().zip(&est.xi_hat) {
        let _ = writeln!(out, "{},{}", float(*t), float(*xi));
    }
    out
}

/// Tracks files so a failed run can take back what it wrote.
#[derive(Debug, Default)]
pub struct Writer {
    written: Vec<PathBuf>,
}

impl Writer {
    pub fn write(&mut self, path: &Path, text: &str) -> Result<(), LabError> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| LabError::Io(format!("{}: {e}", parent.display())))?;
        }
        fs::write(path, text).map_err(|e| LabError::Io(format!("{}: {e}", path.display())))?;
        self.written.push(path.to_path_buf());
        Ok(())
    }

    pub fn remove_all(&mut self) {
        for p in self.written.drain(..) {
            let _ = fs::remove_file(p);
        }
    }
}

pub fn write_run(
    config: &RunConfig,
    series: &[Series],
    summary: &Value,
    wall_time_seconds: f64,
) -> Result<(), LabError> {
    let mut w = Writer::default();
    let result = (|| {
        for s in series {
            let dir = config.out.join(&s.dir);
            w.write(&dir.join("samples.csv"), &samples_csv(&s.run))?;
            w.write(&dir.join("cdf.csv"), &cdf_csv(&s.run, s.delta))?;
        }
        let manifest = Manifest {
            schema_version: MANIFEST_SCHEMA,
            csv_schema: serde_json::json!({
                "version": 1,
                "samples": SAMPLES_HEADER,
                "cdf": CDF_HEADER,
                "input": "space separated floats",
            }),
            code_version: env!("CARGO_PKG_VERSION"),
            rng_algorithm: mindenom::rng::ALGORITHM_ID,
            config,
            wall_time_seconds,
            series: series
                .iter()
                .map(|s| SeriesEntry {
                    dir: s.dir.display().to_string(),
                    label: &s.label,
                    delta: s.delta,
                    n: s.run.samples.len(),
                    mean: s.run.mean(),
                })
                .collect(),
            summary,
        };
        let text = serde_json::to_string_pretty(&manifest).map_err(|e| LabError::Io(e.to_string()))?;
        w.write(&config.out.join("manifest.json"), &(text + "\n"))
    })();
    if result.is_err() {
        w.remove_all();
    }
    result
}
