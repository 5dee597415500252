use crate::error::{Error, Result};
use crate::scalar::{max_abs, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sidedness {
    /// `|v| < delta |u|`, `u != 0`.
    TwoSided,
    /// Additionally `u > 0`; requires a one-dimensional `u` block.
    OneSided,
    /// `u > 0` and `v < delta u` without absolute value; one-dimensional
    /// blocks only.
    OneSidedNoAbs,
}

/// Thin cone around the `u` block of `R^n + R^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeSpec<S> {
    n: usize,
    m: usize,
    delta: S,
    sided: Sidedness,
}

impl<S: Scalar> ConeSpec<S> {
    pub fn new(n: usize, m: usize, delta: S, sided: Sidedness) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Dimension("cone blocks must be nonempty".into()));
        }
        if delta <= S::zero() {
            return Err(Error::NonPositiveDelta);
        }
        match sided {
            Sidedness::OneSided if n != 1 => {
                return Err(Error::UnsupportedCone("one-sided cone needs n = 1"))
            }
            Sidedness::OneSidedNoAbs if n != 1 || m != 1 => {
                return Err(Error::UnsupportedCone("one-sided cone without |.| needs n = m = 1"))
            }
            _ => {}
        }
        Ok(Self { n, m, delta, sided })
    }

    /// The cone of minimal denominators in dimension two: `u > 0, |v| < delta u`.
    pub fn planar(delta: S) -> Result<Self> {
        Self::new(1, 1, delta, Sidedness::OneSided)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    pub fn delta(&self) -> &S {
        &self.delta
    }

    pub fn sided(&self) -> Sidedness {
        self.sided
    }

    pub fn with_delta(&self, delta: S) -> Result<Self> {
        Self::new(self.n, self.m, delta, self.sided)
    }

    pub fn unorm(&self, point: &[S]) -> S {
        max_abs(&point[..self.n])
    }

    pub fn contains(&self, point: &[S]) -> bool {
        debug_assert_eq!(point.len(), self.dim());
        let (u, v) = point.split_at(self.n);
        let unorm = max_abs(u);
        if unorm.is_zero() {
            return false;
        }
        match self.sided {
            Sidedness::TwoSided => max_abs(v) < self.delta.clone() * unorm,
            Sidedness::OneSided => u[0] > S::zero() && max_abs(v) < self.delta.clone() * unorm,
            Sidedness::OneSidedNoAbs => {
                u[0] > S::zero() && v[0] < self.delta.clone() * u[0].clone()
            }
        }
    }

    /// Distance, relative to `|u|`, from the point to the cone's slanted
    /// boundary.
    pub fn boundary_margin(&self, point: &[S]) -> f64 {
        let (u, v) = point.split_at(self.n);
        let unorm = max_abs(u).to_f64();
        if unorm == 0.0 {
            return 0.0;
        }
        let vnorm = match self.sided {
            Sidedness::OneSidedNoAbs => v[0].to_f64(),
            _ => max_abs(v).to_f64(),
        };
        (self.delta.to_f64() * unorm - vnorm).abs() / unorm
    }
}

/// Lattice point attaining a cone minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeHit<S> {
    /// Coordinates `(u, v)` of the point.
    pub vector: Vec<S>,
    /// Integer coordinates with respect to the query basis.
    pub coeffs: Vec<i64>,
    pub unorm: S,
    /// Set when the point lies within `1e-12` (relative) of the cone boundary,
    /// where floating membership could flip.
    pub near_boundary: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_variants() {
        let planar = ConeSpec::planar(0.5).unwrap();
        assert!(planar.contains(&[1.0, 0.4]));
        assert!(!planar.contains(&[1.0, 0.5]));
        assert!(!planar.contains(&[-1.0, 0.0]));
        assert!(!planar.contains(&[0.0, 0.0]));

        let two = ConeSpec::new(1, 1, 0.5, Sidedness::TwoSided).unwrap();
        assert!(two.contains(&[-1.0, 0.4]));

        let no_abs = ConeSpec::new(1, 1, 0.5, Sidedness::OneSidedNoAbs).unwrap();
        assert!(no_abs.contains(&[1.0, -100.0]));
        assert!(!no_abs.contains(&[1.0, 0.5]));

        let block = ConeSpec::new(2, 1, 0.25, Sidedness::TwoSided).unwrap();
        assert!(block.contains(&[0.0, -4.0, 0.9]));
        assert!(!block.contains(&[0.0, -4.0, 1.0]));
    }

    #[test]
    fn invalid_specs() {
        assert!(ConeSpec::new(1, 1, 0.0, Sidedness::TwoSided).is_err());
        assert!(ConeSpec::new(2, 1, 1.0, Sidedness::OneSided).is_err());
        assert!(ConeSpec::new(1, 2, 1.0, Sidedness::OneSidedNoAbs).is_err());
        assert!(ConeSpec::new(0, 1, 1.0, Sidedness::TwoSided).is_err());
    }
}
