//! Monte-Carlo estimates of the limiting distributions of normalized minimal
//! denominators and of the matching lattice statistics.

use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{self, from_f64, q_m_capped, q_mn_capped, qmin, Rational, RationalMatrix};
use crate::haar::sample_indexed;
use crate::lattice::{
    cone_minimum_filtered, f_cone, horocycle_mn, ConeSpec, LatticeBasis, Matrix, Sidedness,
};
use crate::par::{map_indices, Execution};
use crate::rng;
use crate::stats::EmpiricalCdf;

/// Largest `|u|` searched for cone minima of sampled lattices.
pub const LATTICE_SEARCH_CAP: f64 = 1e6;
/// Largest `|q|_inf` scanned for the linear-form experiments.
pub const EXPERIMENT_SHELL_CAP: u64 = 10_000_000;
/// Largest dimension accepted by the linear-form experiments.
pub const MAX_DIM: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub index: u64,
    pub input: Vec<f64>,
    pub statistic: f64,
}

#[derive(Debug, Clone)]
pub struct Run {
    pub samples: Vec<Sample>,
    pub cdf: EmpiricalCdf,
}

impl Run {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        let cdf = EmpiricalCdf::new(samples.iter().map(|s| s.statistic).collect())?;
        Ok(Self { samples, cdf })
    }

    pub fn mean(&self) -> f64 {
        self.cdf.mean()
    }

    pub fn statistics(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.statistic).collect()
    }
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() && delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("delta must lie in (0, 1), got {delta}")))
    }
}

pub(crate) fn check_count(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("sample count must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn check_dims(m: usize, n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&m) && (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::Dimension(format!("dimensions ({m}, {n}) outside 1..={MAX_DIM}")))
    }
}

/// Uniform on `[0, 1)` with 53 random bits, as an exact rational.
pub fn uniform_dyadic<R: Rng + ?Sized>(rng: &mut R) -> (f64, Rational) {
    let x = rng.random::<f64>();
    (x, from_f64(x).expect("finite"))
}

/// `sqrt(delta) qmin(x, delta)` for uniform `x`.
pub fn lhs_qmin(delta: f64, n: u64, seed: u64, exec: Execution) -> Result<Run> {
    check_delta(delta)?;
    check_count(n)?;
    let d = from_f64(delta)?;
    let scale = delta.sqrt();
    let samples = map_indices(exec, n, |i| {
        let (xf, x) = uniform_dyadic(&mut rng::stream(seed, i));
        let hit = qmin(&x, &d)?;
        Ok(Sample {
            index: i,
            input: vec![xf],
            statistic: scale * hit.q.to_f64().unwrap_or(f64::INFINITY),
        })
    })?;
    Run::new(samples)
}

/// The one-sided planar cone with opening 1.
pub fn unit_planar_cone() -> ConeSpec<f64> {
    ConeSpec::planar(1.0).expect("valid cone")
}

/// Cone minimum `F(L)` over Haar-random lattices `L`.
pub fn rhs_haar(n: u64, seed: u64, exec: Execution) -> Result<Run> {
    haar_statistic(n, seed, exec, false)
}

/// As [`rhs_haar`] with the minimum restricted to primitive lattice vectors.
pub fn rhs_haar_primitive(n: u64, seed: u64, exec: Execution) -> Result<Run> {
    haar_statistic(n, seed, exec, true)
}

fn haar_statistic(n: u64, seed: u64, exec: Execution, primitive: bool) -> Result<Run> {
    check_count(n)?;
    let cone = unit_planar_cone();
    let samples = map_indices(exec, n, |i| {
        let s = sample_indexed(seed, i);
        let hit = if primitive {
            cone_minimum_filtered(&s.basis, &cone, &LATTICE_SEARCH_CAP, |c| {
                c[0].gcd(&c[1]) == 1
            })?
        } else {
            f_cone(&s.basis, &cone, LATTICE_SEARCH_CAP)?
        };
        Ok(Sample {
            index: i,
            input: vec![s.x, s.y, s.theta],
            statistic: hit.unorm,
        })
    })?;
    Run::new(samples)
}

/// Basis of `g_{log delta} h_x Z^2`.
pub fn horocycle_point(delta: f64, x: f64) -> Matrix<f64> {
    let r = delta.sqrt();
    Matrix::from_rows(vec![vec![r, 0.0], vec![-x / r, 1.0 / r]]).expect("2x2 rows")
}

/// `F(g_{log delta} h_x Z^2)` at the midpoints `x_i = (i + 1/2)/n`.
pub fn horocycle_orbit(delta: f64, n: u64, exec: Execution) -> Result<Run> {
    check_delta(delta)?;
    check_count(n)?;
    let cone = unit_planar_cone();
    let samples = map_indices(exec, n, |i| {
        let x = (i as f64 + 0.5) / n as f64;
        let lattice = LatticeBasis::new(horocycle_point(delta, x))?;
        let hit = f_cone(&lattice, &cone, LATTICE_SEARCH_CAP)?;
        Ok(Sample {
            index: i,
            input: vec![x],
            statistic: hit.unorm,
        })
    })?;
    Run::new(samples)
}

/// `delta^{m/(m+1)} Q^m(x, delta)` for uniform `x` in `[0,1]^m`.
pub fn lhs_qm(m: usize, delta: f64, n: u64, seed: u64, exec: Execution) -> Result<Run> {
    check_dims(m, 1)?;
    check_delta(delta)?;
    check_count(n)?;
    let d = from_f64(delta)?;
    let scale = delta.powf(m as f64 / (m as f64 + 1.0));
    let samples = map_indices(exec, n, |i| {
        let mut r = rng::stream(seed, i);
        let (xf, x): (Vec<f64>, Vec<Rational>) = (0..m).map(|_| uniform_dyadic(&mut r)).unzip();
        let q = q_m_capped(&x, &d, exact::DEFAULT_Q_CAP)?;
        Ok(Sample {
            index: i,
            input: xf,
            statistic: scale * q as f64,
        })
    })?;
    Run::new(samples)
}

/// `Q^{m,n}(X, delta)` computed as the cone minimum of `h_X Z^{m+n}`.
///
/// Enumeration runs in floating point; when the minimizing point lies within
/// the boundary tolerance of the cone the exact shell scan decides instead.
pub fn linear_form_minimum(x: &RationalMatrix, delta: &Rational, shell_cap: u64) -> Result<u64> {
    let (m, n) = (x.rows(), x.cols());
    let xf = Matrix::from_rows(
        (0..m)
            .map(|i| (0..n).map(|j| exact::to_f64(x.get(i, j))).collect())
            .collect(),
    )?;
    let lattice = LatticeBasis::new(horocycle_mn(&xf))?;
    let cone = ConeSpec::new(n, m, exact::to_f64(delta), Sidedness::TwoSided)?;
    let exact_path = || Ok(q_mn_capped(x, delta, shell_cap)?.qnorm);
    let exactly_representable = (0..m).all(|i| {
        (0..n).all(|j| from_f64(*xf.get(i, j)).map(|v| &v == x.get(i, j)).unwrap_or(false))
    });
    if !exactly_representable {
        return exact_path();
    }
    let hit = f_cone(&lattice, &cone, shell_cap as f64)?;
    if hit.near_boundary {
        exact_path()
    } else {
        Ok(hit.unorm.round() as u64)
    }
}

/// `delta^{m/(m+n)} Q^{m,n}(X, delta)` for uniform `X` in `[0,1]^{m x n}`,
/// entries drawn row by row.
pub fn lhs_qmn(m: usize, n_dim: usize, delta: f64, n: u64, seed: u64, exec: Execution) -> Result<Run> {
    lhs_qmn_capped(m, n_dim, delta, n, seed, exec, EXPERIMENT_SHELL_CAP)
}

/// [`lhs_qmn`] with an explicit bound on `|q|_inf`.
pub fn lhs_qmn_capped(
    m: usize,
    n_dim: usize,
    delta: f64,
    n: u64,
    seed: u64,
    exec: Execution,
    shell_cap: u64,
) -> Result<Run> {
    check_dims(m, n_dim)?;
    check_delta(delta)?;
    check_count(n)?;
    let d = from_f64(delta)?;
    let scale = delta.powf(m as f64 / (m + n_dim) as f64);
    let samples = map_indices(exec, n, |i| {
        let mut r = rng::stream(seed, i);
        let (xf, x): (Vec<f64>, Vec<Rational>) =
            (0..m * n_dim).map(|_| uniform_dyadic(&mut r)).unzip();
        let q = linear_form_minimum(&RationalMatrix::new(m, n_dim, x)?, &d, shell_cap)?;
        Ok(Sample {
            index: i,
            input: xf,
            statistic: scale * q as f64,
        })
    })?;
    Run::new(samples)
}
