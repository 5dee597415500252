use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;

use crate::output::{float, Writer, CDF_HEADER};
use crate::LabError;

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    /// `cdf.csv` files to overlay
    #[arg(required = true)]
    pub cdfs: Vec<PathBuf>,
    /// Directory for `plot.svg` and `merged.csv`
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

impl Curve {
    /// Right-continuous step value at `t`.
    fn at(&self, t: f64) -> f64 {
        match self.points.partition_point(|p| p.0 <= t) {
            0 => 0.0,
            k => self.points[k - 1].1,
        }
    }
}

fn label_for(path: &Path) -> String {
    let parent = path.parent().and_then(|p| p.file_name()).map(|s| s.to_string_lossy().into_owned());
    match parent {
        Some(dir) if !dir.is_empty() => format!("{dir}/{}", path.file_name().unwrap_or_default().to_string_lossy()),
        _ => path.display().to_string(),
    }
}

pub fn read_cdf(path: &Path) -> Result<Curve, LabError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LabError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CDF_HEADER => {}
        Some(h) => {
            return Err(LabError::Validation(format!(
                "{}: header {h:?} is not {CDF_HEADER:?}",
                path.display()
            )))
        }
        None => return Err(LabError::Validation(format!("{} is empty", path.display()))),
    }
    let mut points = Vec::new();
    for (k, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let bad = || LabError::Validation(format!("{}:{}: expected two numbers", path.display(), k + 2));
        let (t, xi) = line.split_once(',').ok_or_else(bad)?;
        let t: f64 = t.trim().parse().map_err(|_| bad())?;
        let xi: f64 = xi.trim().parse().map_err(|_| bad())?;
        if points.last().is_some_and(|&(prev, _): &(f64, f64)| t <= prev) {
            return Err(LabError::Validation(format!("{}: T is not increasing", path.display())));
        }
        points.push((t, xi));
    }
    if points.is_empty() {
        return Err(LabError::Validation(format!("{} has no rows", path.display())));
    }
    Ok(Curve {
        label: label_for(path),
        points,
    })
}

/// Union of the grids, each curve read off as a step function.
pub fn merged_csv(curves: &[Curve]) -> String {
    let mut grid: Vec<f64> = curves.iter().flat_map(|c| c.points.iter().map(|p| p.0)).collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut out = String::from("T");
    for c in curves {
        let _ = write!(out, ",{}", c.label.replace(',', ";"));
    }
    out.push('\n');
    for t in grid {
        out.push_str(&float(t));
        for c in curves {
            let _ = write!(out, ",{}", float(c.at(t)));
        }
        out.push('\n');
    }
    out
}

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub fn svg(curves: &[Curve]) -> String {
    let (w, h, margin) = (720.0, 440.0, 50.0);
    let t_max = curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| p.0))
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let x = |t: f64| margin + (w - 2.0 * margin) * t / t_max;
    let y = |v: f64| h - margin - (h - 2.0 * margin) * v;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{:.1} {:.1} V{:.1} H{:.1}" stroke="black" fill="none"/>"#,
        margin,
        margin,
        h - margin,
        w - margin
    );
    for k in 0..=4 {
        let v = k as f64 / 4.0;
        let t = t_max * v;
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{v:.2}</text>"#, margin - 6.0, y(v) + 4.0);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{t:.3}</text>"#, x(t), h - margin + 18.0);
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">T</text>"#, w / 2.0, h - 12.0);
    for (i, c) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut d = format!("M{:.2} {:.2}", x(0.0), y(0.0));
        for &(t, v) in &c.points {
            let _ = write!(d, " H{:.2} V{:.2}", x(t), y(v));
        }
        let _ = writeln!(s, r#"<path d="{d}" stroke="{color}" stroke-width="1.5" fill="none"/>"#);
        let ly = margin + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{ly:.1}" fill="{color}">{}</text>"#,
            margin + 12.0,
            escape(&c.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn emit(args: &PlotArgs) -> Result<(), LabError> {
    let curves = args.cdfs.iter().map(|p| read_cdf(p)).collect::<Result<Vec<_>, _>>()?;
    let mut w = Writer::default();
    let result = w
        .write(&args.out.join("plot.svg"), &svg(&curves))
        .and_then(|_| w.write(&args.out.join("merged.csv"), &merged_csv(&curves)));
    if result.is_err() {
        w.remove_all();
    }
    result
}
