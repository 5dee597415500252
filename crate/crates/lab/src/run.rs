use std::f64::consts::{PI, SQRT_2};
use std::path::PathBuf;

use mindenom::experiments::{horocycle_orbit, lhs_qmin, lhs_qmn_capped, rhs_haar, rhs_haar_primitive, Run, Sample};
use mindenom::haar::{siegel_mean_count, Region};
use mindenom::oracle::run_suite;
use mindenom::par::Execution;
use mindenom::stats::ks_distance;
use mindenom::surfaces::{sc_experiment, Origami};
use serde_json::{json, Value};

use crate::config::{ConeChoice, Experiment, RunConfig};
use crate::output::Series;
use crate::LabError;

/// Seeds of reference and companion runs are the run seed xor these.
const REFERENCE_SEED_MASK: u64 = 0x9e37_79b9_7f4a_7c15;
const COMPANION_SEED_MASK: u64 = 0xd1b5_4a32_d192_ed03;

/// Search cap for the smallest shear fixing a surface.
const ALPHA_SEARCH_CAP: u64 = 10_000;

pub struct Outcome {
    pub series: Vec<Series>,
    pub summary: Value,
    pub mismatches: u64,
}

fn delta_dir(config: &RunConfig, delta: f64) -> PathBuf {
    if config.deltas.len() == 1 {
        PathBuf::new()
    } else {
        PathBuf::from(format!("delta-{delta:e}"))
    }
}

fn series(dir: PathBuf, label: &str, delta: Option<f64>, run: Run) -> Series {
    Series {
        dir: if dir.as_os_str().is_empty() { PathBuf::from(".") } else { dir },
        label: label.to_string(),
        delta,
        run,
    }
}

pub fn run(config: &RunConfig, exec: Execution) -> Result<Outcome, LabError> {
    match config.experiment {
        Experiment::Theorem12 => planar(config, exec),
        Experiment::Theorem14 | Experiment::Theorem55 => linear_forms(config, exec),
        Experiment::Theorem15 => surfaces(config, exec),
        Experiment::SiegelCheck => siegel(config, exec),
        Experiment::OracleSuite => oracles(config),
    }
}

fn planar(config: &RunConfig, exec: Execution) -> Result<Outcome, LabError> {
    let reference_seed = config.seed ^ REFERENCE_SEED_MASK;
    let reference = rhs_haar(config.n, reference_seed, exec)?;
    let mut out = Vec::new();
    let mut per_delta = Vec::new();
    for &delta in &config.deltas {
        let lhs = lhs_qmin(delta, config.n, config.seed, exec)?;
        let orbit = horocycle_orbit(delta, config.n, exec)?;
        per_delta.push(json!({
            "delta": delta,
            "mean": lhs.mean(),
            "horocycle_mean": orbit.mean(),
            "ks_vs_haar": ks_distance(&lhs.cdf, &reference.cdf),
            "ks_horocycle_vs_haar": ks_distance(&orbit.cdf, &reference.cdf),
        }));
        let dir = delta_dir(config, delta);
        out.push(series(dir.join("horocycle"), "horocycle orbit", Some(delta), orbit));
        out.push(series(dir, "sqrt(delta) q_min", Some(delta), lhs));
    }
    out.push(series(PathBuf::from("reference"), "Haar F(L)", None, reference.clone()));
    Ok(Outcome {
        series: out,
        summary: json!({
            "reference_seed": reference_seed,
            "reference_mean": reference.mean(),
            "half_width_limit": 8.0 * SQRT_2 / (PI * PI),
            "deltas": per_delta,
        }),
        mismatches: 0,
    })
}

fn linear_forms(config: &RunConfig, exec: Execution) -> Result<Outcome, LabError> {
    let (m, n) = (config.dim_m, config.dim_n);
    let companion_seed = config.seed ^ COMPANION_SEED_MASK;
    let mut out = Vec::new();
    let mut per_delta = Vec::new();
    for &delta in &config.deltas {
        let main = lhs_qmn_capped(m, n, delta, config.n, config.seed, exec, config.shell_cap)?;
        let companion = lhs_qmn_capped(m, n, delta / 16.0, config.n, companion_seed, exec, config.shell_cap)?;
        per_delta.push(json!({
            "delta": delta,
            "mean": main.mean(),
            "companion_delta": delta / 16.0,
            "companion_mean": companion.mean(),
            "ks_stabilization": ks_distance(&main.cdf, &companion.cdf),
        }));
        let dir = delta_dir(config, delta);
        out.push(series(dir.join("companion"), "delta/16", Some(delta / 16.0), companion));
        out.push(series(dir, "delta^(m/(m+n)) Q", Some(delta), main));
    }
    Ok(Outcome {
        series: out,
        summary: json!({ "m": m, "n": n, "companion_seed": companion_seed, "deltas": per_delta }),
        mismatches: 0,
    })
}

fn surfaces(config: &RunConfig, exec: Execution) -> Result<Outcome, LabError> {
    let origami = match &config.origami {
        Some(text) => Origami::parse(text)?,
        None => Origami::torus(),
    };
    let alpha = match config.alpha {
        Some(a) => a,
        None => origami.minimal_alpha(ALPHA_SEARCH_CAP).ok_or_else(|| {
            LabError::Validation(format!("no shear h_alpha with alpha <= {ALPHA_SEARCH_CAP} fixes the surface"))
        })?,
    };
    let torus = origami.degree() == 1;
    let reference_seed = config.seed ^ REFERENCE_SEED_MASK;
    let reference = if torus { Some(rhs_haar_primitive(config.n, reference_seed, exec)?) } else { None };
    let mut out = Vec::new();
    let mut per_delta = Vec::new();
    for &delta in &config.deltas {
        let e = sc_experiment(&origami, alpha, delta, config.n, exec)?;
        let mut entry = json!({
            "delta": delta,
            "mean_symmetric": e.lhs.mean(),
            "mean_as_printed": e.as_printed.mean(),
            "companion_mean": e.rhs_proxy.mean(),
            "ks_stabilization": ks_distance(&e.lhs.cdf, &e.rhs_proxy.cdf),
        });
        if let Some(r) = &reference {
            entry["ks_vs_haar_primitive"] = json!(ks_distance(&e.lhs.cdf, &r.cdf));
        }
        per_delta.push(entry);
        let dir = delta_dir(config, delta);
        let (primary, other, other_name) = match config.cone {
            ConeChoice::Symmetric => (e.lhs, e.as_printed, "as-printed"),
            ConeChoice::AsPrinted => (e.as_printed, e.lhs, "symmetric"),
        };
        out.push(series(dir.join("companion"), "symmetric, delta/16", Some(delta / 16.0), e.rhs_proxy));
        out.push(series(dir.join(other_name), other_name, Some(delta), other));
        out.push(series(dir, "sqrt(delta) Psi", Some(delta), primary));
    }
    if let Some(r) = reference {
        out.push(series(PathBuf::from("reference"), "Haar primitive F(L)", None, r));
    }
    Ok(Outcome {
        series: out,
        summary: json!({
            "origami": origami.to_string(),
            "genus": origami.genus(),
            "alpha": alpha,
            "grid": "s_i = alpha (2i + 1) / (2n); the seed is not used",
            "deltas": per_delta,
        }),
        mismatches: 0,
    })
}

fn siegel(config: &RunConfig, exec: Execution) -> Result<Outcome, LabError> {
    let regions = [
        ("unit square", Region::new([0.0, 0.0], [1.0, 1.0])?),
        ("square of side 4", Region::new([-2.0, -2.0], [2.0, 2.0])?),
    ];
    let mut counts = Vec::new();
    for (name, region) in &regions {
        let mean = siegel_mean_count(config.seed, region, config.n, exec)?;
        counts.push(json!({ "region": name, "area": region.area(), "mean_count": mean }));
    }
    let run = rhs_haar(config.n, config.seed, exec)?;
    let small = run.cdf.eval(0.1);
    Ok(Outcome {
        summary: json!({
            "counts": counts,
            "p_f_at_most_0.1": small,
            "small_t_law": 6.0 / (PI * PI) * 0.01,
            "mean_f": run.mean(),
        }),
        series: vec![series(PathBuf::new(), "Haar F(L)", None, run)],
        mismatches: 0,
    })
}

fn oracles(config: &RunConfig) -> Result<Outcome, LabError> {
    let report = run_suite(config.n, config.seed)?;
    let samples = report
        .cases
        .iter()
        .enumerate()
        .map(|(i, c)| Sample {
            index: i as u64,
            input: vec![c.x, c.delta],
            statistic: c.q as f64,
        })
        .collect();
    let tally = |t: mindenom::oracle::Tally| json!({ "checked": t.checked, "mismatches": t.mismatches });
    Ok(Outcome {
        summary: json!({
            "bruteforce": tally(report.bruteforce),
            "planar_bridge": tally(report.planar_bridge),
            "linear_bridge": report
                .linear_bridge
                .iter()
                .map(|((m, n), t)| json!({ "m": m, "n": n, "checked": t.checked, "mismatches": t.mismatches }))
                .collect::<Vec<_>>(),
            "mismatches": report.mismatches(),
        }),
        series: vec![series(PathBuf::new(), "q_min", None, Run::new(samples)?)],
        mismatches: report.mismatches(),
    })
}
