use num_integer::Integer;

use super::origami::Origami;
use super::trace::saddle_connections;
use crate::error::{Error, Result};
use crate::lattice::{ConeSpec, Matrix, Sidedness};

/// Which thin cone `Psi` minimizes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceCone {
    /// `x > 0, y < delta x`.
    AsPrinted,
    /// `x > 0, |y| < delta x`.
    Symmetric,
}

impl SurfaceCone {
    fn spec(self, delta: f64) -> Result<ConeSpec<f64>> {
        let sided = match self {
            SurfaceCone::AsPrinted => Sidedness::OneSidedNoAbs,
            SurfaceCone::Symmetric => Sidedness::OneSided,
        };
        ConeSpec::new(1, 1, delta, sided)
    }
}

/// Holonomy vectors with multiplicity, complete inside the max-norm ball of
/// the recorded radius.
#[derive(Debug, Clone, PartialEq)]
pub struct HolonomySet {
    vectors: Vec<[f64; 2]>,
    radius: f64,
}

impl HolonomySet {
    pub fn new(mut vectors: Vec<[f64; 2]>, radius: f64) -> Self {
        vectors.retain(|w| w[0].abs().max(w[1].abs()) <= radius);
        vectors.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        Self { vectors, radius }
    }

    pub fn vectors(&self) -> &[[f64; 2]] {
        &self.vectors
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The same set cut down to a smaller radius.
    pub fn restrict(&self, radius: f64) -> Self {
        Self::new(self.vectors.clone(), radius.min(self.radius))
    }

    /// Number of vectors, with multiplicity, of max-norm at most `r`.
    pub fn count_within(&self, r: f64) -> usize {
        self.vectors
            .iter()
            .filter(|w| w[0].abs().max(w[1].abs()) <= r)
            .count()
    }
}

/// Holonomy vectors of saddle connections of max-norm at most `radius`.
pub fn enumerate_holonomies(o: &Origami, radius: u32) -> Result<HolonomySet> {
    let r = radius as i64;
    if r < 1 {
        return Err(Error::InvalidArgument("radius must be at least 1".into()));
    }
    let mut vectors = Vec::new();
    let mut directions = vec![(0i64, 1i64)];
    for p in 1..=r {
        directions.extend((-r..=r).filter(|q| p.gcd(q) == 1).map(|q| (p, q)));
    }
    for (p, q) in directions {
        for sc in saddle_connections(o, p, q)? {
            let (a, b) = sc.holonomy;
            if a.abs().max(b.abs()) <= r {
                vectors.push([a as f64, b as f64]);
                vectors.push([-a as f64, -b as f64]);
            }
        }
    }
    Ok(HolonomySet::new(vectors, r as f64))
}

/// Primitive integer vectors of max-norm at most `radius`.
pub fn primitive_vectors(radius: u32) -> HolonomySet {
    let r = radius as i64;
    let mut vectors = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            if a.gcd(&b) == 1 {
                vectors.push([a as f64, b as f64]);
            }
        }
    }
    HolonomySet::new(vectors, r as f64)
}

/// `A H`, complete to radius `R / |A^-1|` in the max norm.
pub fn act_matrix(a: &Matrix<f64>, set: &HolonomySet) -> Result<HolonomySet> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::Dimension("holonomy sets live in the plane".into()));
    }
    let radius = set.radius / a.inverse()?.inf_norm();
    let image = set
        .vectors
        .iter()
        .map(|w| {
            [
                a.get(0, 0) * w[0] + a.get(0, 1) * w[1],
                a.get(1, 0) * w[0] + a.get(1, 1) * w[1],
            ]
        })
        .collect();
    Ok(HolonomySet::new(image, radius))
}

/// Least real part of a holonomy vector in the cone. The answer is certified
/// when every vector of the cone with no larger real part lies inside the
/// completeness ball, which for the as-printed cone means only that the
/// minimizer does.
pub fn psi(set: &HolonomySet, delta: f64, cone: SurfaceCone) -> Result<f64> {
    let spec = cone.spec(delta)?;
    let best = set
        .vectors
        .iter()
        .filter(|w| spec.contains(&w[..]))
        .map(|w| w[0])
        .fold(f64::INFINITY, f64::min);
    let reach = match cone {
        SurfaceCone::Symmetric => best * delta.max(1.0),
        SurfaceCone::AsPrinted => best,
    };
    if best.is_finite() && reach <= set.radius {
        Ok(best)
    } else {
        Err(Error::EmptyCone {
            radius: set.radius.to_string(),
        })
    }
}
