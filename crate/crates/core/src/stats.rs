//! Empirical distribution functions and the two-sample KS distance.

use crate::error::{Error, Result};

/// Number of points in [`t_grid`].
pub const GRID_POINTS: usize = 512;

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    samples: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument("empirical CDF needs at least one sample".into()));
        }
        if samples.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidArgument("NaN sample".into()));
        }
        samples.sort_by(f64::total_cmp);
        Ok(Self { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// `#{s <= t} / n`.
    pub fn eval(&self, t: f64) -> f64 {
        let k = self.samples.partition_point(|&s| s <= t);
        k as f64 / self.samples.len() as f64
    }

    pub fn mean(&self) -> f64 {
        mean_estimate(self)
    }
}

pub fn mean_estimate(cdf: &EmpiricalCdf) -> f64 {
    cdf.samples.iter().sum::<f64>() / cdf.samples.len() as f64
}

/// `int_0^inf (1 - F(t)) dt` for a CDF of nonnegative samples, integrating
/// the step function exactly between consecutive order statistics.
pub fn layer_cake_mean(cdf: &EmpiricalCdf) -> Result<f64> {
    if cdf.samples[0] < 0.0 {
        return Err(Error::InvalidArgument("layer-cake mean needs nonnegative samples".into()));
    }
    let n = cdf.samples.len() as f64;
    let mut prev = 0.0;
    let mut total = 0.0;
    for (k, &s) in cdf.samples.iter().enumerate() {
        total += (s - prev) * (1.0 - k as f64 / n);
        prev = s;
    }
    Ok(total)
}

/// `sup_t |F_a(t) - F_b(t)|`, evaluated on the merged sample values.
pub fn ks_distance(a: &EmpiricalCdf, b: &EmpiricalCdf) -> f64 {
    let (xs, ys) = (&a.samples, &b.samples);
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut best: f64 = 0.0;
    while i < xs.len() || j < ys.len() {
        let t = match (xs.get(i), ys.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        while i < xs.len() && xs[i] <= t {
            i += 1;
        }
        while j < ys.len() && ys[j] <= t {
            j += 1;
        }
        best = best.max((i as f64 / na - j as f64 / nb).abs());
    }
    best
}

/// Geometric grid of [`GRID_POINTS`] values from 0.01 to 10.
pub fn t_grid() -> Vec<f64> {
    let (lo, hi) = (0.01f64.ln(), 10f64.ln());
    let last = (GRID_POINTS - 1) as f64;
    (0..GRID_POINTS)
        .map(|k| match k {
            0 => 0.01,
            k if k == GRID_POINTS - 1 => 10.0,
            k => (lo + (hi - lo) * k as f64 / last).exp(),
        })
        .collect()
}

/// An empirical estimate of a limiting distribution `xi(T)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ChenHaynesEstimate {
    pub grid: Vec<f64>,
    pub xi_hat: Vec<f64>,
    pub delta: Option<f64>,
    pub n: usize,
    pub seed: Option<u64>,
}

impl ChenHaynesEstimate {
    pub fn from_cdf(cdf: &EmpiricalCdf, grid: Vec<f64>, delta: Option<f64>, seed: Option<u64>) -> Self {
        let xi_hat = grid.iter().map(|&t| cdf.eval(t)).collect();
        Self {
            grid,
            xi_hat,
            delta,
            n: cdf.len(),
            seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cdf(v: &[f64]) -> EmpiricalCdf {
        EmpiricalCdf::new(v.to_vec()).unwrap()
    }

    #[test]
    fn eval_is_right_continuous_step() {
        let c = cdf(&[3.0, 1.0, 2.0, 2.0]);
        assert_eq!(c.eval(0.5), 0.0);
        assert_eq!(c.eval(1.0), 0.25);
        assert_eq!(c.eval(2.0), 0.75);
        assert_eq!(c.eval(2.5), 0.75);
        assert_eq!(c.eval(3.0), 1.0);
        assert_eq!(c.eval(f64::INFINITY), 1.0);
    }

    #[test]
    fn ks_basics() {
        let a = cdf(&[0.1, 0.5, 0.9]);
        assert_eq!(ks_distance(&a, &a), 0.0);
        assert_eq!(ks_distance(&cdf(&[0.0]), &cdf(&[1.0])), 1.0);
        let b = cdf(&[0.2, 0.6]);
        assert_eq!(ks_distance(&a, &b), ks_distance(&b, &a));
        // ties across the two samples are handled at the shared value
        assert!((ks_distance(&cdf(&[1.0, 2.0]), &cdf(&[1.0, 2.0, 2.0])) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn ks_is_rank_invariant() {
        let a = [0.3, 1.2, 2.5, 0.7];
        let b = [0.1, 2.0, 0.9];
        let f = |v: &[f64]| cdf(&v.iter().map(|x| (x * 3.0).exp()).collect::<Vec<_>>());
        assert_eq!(ks_distance(&cdf(&a), &cdf(&b)), ks_distance(&f(&a), &f(&b)));
    }

    #[test]
    fn means_agree() {
        let c = cdf(&[0.5, 2.0, 1.25, 4.0, 0.0]);
        assert!((layer_cake_mean(&c).unwrap() - mean_estimate(&c)).abs() < 1e-12);
        assert_eq!(mean_estimate(&cdf(&[2.5; 7])), 2.5);
    }

    #[test]
    fn grid_shape() {
        let g = t_grid();
        assert_eq!(g.len(), 512);
        assert_eq!((g[0], g[511]), (0.01, 10.0));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_empty() {
        assert!(EmpiricalCdf::new(vec![]).is_err());
    }
}
