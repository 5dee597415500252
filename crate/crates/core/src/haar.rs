//! Haar-random unimodular lattices in the plane.
//!
//! A point `x + iy` is drawn from the hyperbolic area measure restricted to
//! the standard fundamental domain `|x| <= 1/2, x^2 + y^2 >= 1`, and an angle
//! `theta` uniformly. The lattice has basis columns
//! `r(theta) (1/sqrt y, 0)` and `r(theta) (x/sqrt y, sqrt y)`, whose ratio as
//! complex numbers is `x + iy`.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{count_in_box, LatticeBasis, Matrix};
use crate::par::{map_indices, Execution};
use crate::rng;

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

#[derive(Debug, Clone)]
pub struct HaarSample {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub basis: LatticeBasis<f64>,
    /// Proposals drawn, including the accepted one.
    pub proposals: u32,
}

pub fn basis_from_coordinates(x: f64, y: f64, theta: f64) -> Matrix<f64> {
    let (s, c) = theta.sin_cos();
    let r = y.sqrt();
    let a = 1.0 / r;
    let b = x / r;
    Matrix::from_rows(vec![vec![c * a, c * b - s * r], vec![s * a, s * b + c * r]])
        .expect("2x2 rows")
}

pub fn sample_x2<R: Rng + ?Sized>(rng: &mut R) -> HaarSample {
    let mut proposals = 0;
    let (x, y) = loop {
        proposals += 1;
        let x = rng.random::<f64>() - 0.5;
        let u = 1.0 - rng.random::<f64>();
        let y = SQRT3_2 / u;
        if x * x + y * y >= 1.0 {
            break (x, y);
        }
    };
    let theta = rng.random::<f64>() * TAU;
    let basis = LatticeBasis::new(basis_from_coordinates(x, y, theta))
        .expect("rotation times unipotent times diagonal is unimodular");
    HaarSample {
        x,
        y,
        theta,
        basis,
        proposals,
    }
}

/// Haar lattice for sample `index` of the run seeded by `seed`.
pub fn sample_indexed(seed: u64, index: u64) -> HaarSample {
    sample_x2(&mut rng::stream(seed, index))
}

/// Acceptance probability of the proposal on the strip: hyperbolic area of the
/// fundamental domain over that of the strip above `y = sqrt(3)/2`.
pub fn acceptance_rate() -> f64 {
    (PI / 3.0) / (2.0 / 3f64.sqrt())
}

/// Axis-aligned closed box `[lo_0, hi_0] x [lo_1, hi_1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
}

impl Region {
    pub fn new(lo: [f64; 2], hi: [f64; 2]) -> Result<Self> {
        if lo.iter().chain(&hi).any(|v| !v.is_finite()) || lo[0] > hi[0] || lo[1] > hi[1] {
            return Err(Error::InvalidArgument(format!("bad region {lo:?} {hi:?}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn area(&self) -> f64 {
        (self.hi[0] - self.lo[0]) * (self.hi[1] - self.lo[1])
    }
}

/// Monte-Carlo mean of the number of nonzero lattice points in `region`.
pub fn siegel_mean_count(seed: u64, region: &Region, n_samples: u64, exec: Execution) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be positive".into()));
    }
    if region.area() == 0.0 {
        return Ok(0.0);
    }
    let counts = map_indices(exec, n_samples, |i| {
        let s = sample_indexed(seed, i);
        count_in_box(&s.basis, &region.lo, &region.hi)
    })?;
    Ok(counts.iter().map(|&c| c as f64).sum::<f64>() / n_samples as f64)
}
