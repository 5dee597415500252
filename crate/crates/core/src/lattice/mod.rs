//! Unimodular lattices, the flows acting on them, and minima over thin cones.

pub mod cone;
pub mod enumerate;
pub mod flows;
pub mod matrix;
pub mod reduce;

pub use cone::{ConeHit, ConeSpec, Sidedness};
pub use enumerate::{cone_minimum, cone_minimum_filtered, count_in_box, f_cone, f_cone_exact};
pub use flows::{geodesic_2, geodesic_2_exact, geodesic_mn, horocycle_2, horocycle_mn};
pub use matrix::Matrix;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::scalar::Scalar;

/// A unimodular lattice `B Z^d`, stored as the matrix `B` whose columns are
/// the basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeBasis<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> LatticeBasis<S> {
    pub fn new(matrix: Matrix<S>) -> Result<Self> {
        let det = matrix.det()?;
        if !det.is_unit_det() {
            return Err(Error::NotUnimodular {
                det: format!("{:?}", det.to_f64()),
            });
        }
        Ok(Self { matrix })
    }

    /// Rescales `matrix` by `|det|^{-1/d}` and flips a column if needed.
    pub fn normalized(matrix: Matrix<f64>) -> Result<LatticeBasis<f64>> {
        let d = matrix.rows();
        let det = matrix.det()?;
        if det == 0.0 {
            return Err(Error::InvalidArgument("singular basis".into()));
        }
        let s = det.abs().powf(-1.0 / d as f64);
        let mut scaled = matrix.map(|v| v * s);
        if det < 0.0 {
            for r in 0..d {
                let v = -*scaled.get(r, 0);
                scaled.set(r, 0, v);
            }
        }
        LatticeBasis::new(scaled)
    }

    pub fn standard(d: usize) -> Self {
        Self {
            matrix: Matrix::identity(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    /// The lattice `g B Z^d`.
    pub fn transformed(&self, g: &Matrix<S>) -> Result<Self> {
        Self::new(g.mul(&self.matrix)?)
    }

    pub fn point(&self, coeffs: &[i64]) -> Vec<S> {
        self.matrix.apply_int(coeffs)
    }
}

impl LatticeBasis<Rational> {
    pub fn to_f64(&self) -> LatticeBasis<f64> {
        LatticeBasis {
            matrix: self.matrix.map(Scalar::to_f64),
        }
    }
}
