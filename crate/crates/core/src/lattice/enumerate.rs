//! Lattice points in axis-aligned boxes, and the cone minima built on them.

use super::cone::{ConeHit, ConeSpec, Sidedness};
use super::matrix::Matrix;
use super::reduce::reduce;
use super::LatticeBasis;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::scalar::{max_abs, Scalar};

/// Upper limit on candidate coefficient vectors scanned for a single box.
pub const MAX_CANDIDATES: u128 = 200_000_000;

/// Call `visit(coeffs, point)` for every lattice point inside the closed box
/// `lo <= y <= hi`. Coefficients refer to the given basis.
///
/// The box is mapped to a cube, the mapped basis is reduced, and integer
/// coefficient ranges are read off the inverse of the reduced basis.
pub fn for_each_point_in_box<S: Scalar>(
    basis: &Matrix<S>,
    lo: &[S],
    hi: &[S],
    mut visit: impl FnMut(&[i64], &[S]),
) -> Result<()> {
    let d = basis.rows();
    if basis.cols() != d || lo.len() != d || hi.len() != d {
        return Err(Error::Dimension("box and basis dimensions differ".into()));
    }
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Ok(());
    }
    let two = S::from_i64(2);
    let mut scale = Vec::with_capacity(d);
    let mut reach = Vec::with_capacity(d);
    let mut shift = Vec::with_capacity(d);
    for k in 0..d {
        let center = (lo[k].clone() + hi[k].clone()) / two.clone();
        let half = (hi[k].clone() - lo[k].clone()) / two.clone();
        let (s, t) = if half.is_zero() {
            (S::one(), S::zero())
        } else {
            (S::one() / half, S::one())
        };
        shift.push(center * s.clone());
        scale.push(s);
        reach.push(t);
    }
    let scaled = Matrix::diagonal(scale).mul(basis)?;
    let reduced = reduce(&scaled);
    let inv = reduced.basis.inverse()?;

    let mut ranges = Vec::with_capacity(d);
    let mut total: u128 = 1;
    for j in 0..d {
        let mut mid = S::zero();
        let mut spread = S::zero();
        for k in 0..d {
            let w = inv.get(j, k).clone();
            mid = mid + w.clone() * shift[k].clone();
            spread = spread + w.abs() * reach[k].clone();
        }
        let a = mid.clone() - spread.clone();
        let b = mid + spread;
        let first = (a.clone() - a.slack()).ceil_i64();
        let last = (b.clone() + b.slack()).floor_i64();
        if first > last {
            return Ok(());
        }
        total = total.saturating_mul((last - first + 1) as u128);
        ranges.push((first, last));
    }
    if total > MAX_CANDIDATES {
        return Err(Error::NotFound {
            cap: format!("{total} candidate coefficient vectors"),
        });
    }

    let mut c: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        let coeffs = reduced.original_coeffs(&c);
        let point = basis.apply_int(&coeffs);
        if point
            .iter()
            .zip(lo.iter().zip(hi))
            .all(|(y, (a, b))| a <= y && y <= b)
        {
            visit(&coeffs, &point);
        }
        let mut k = d;
        let advanced = loop {
            if k == 0 {
                break false;
            }
            k -= 1;
            if c[k] < ranges[k].1 {
                c[k] += 1;
                for (slot, range) in c.iter_mut().zip(&ranges).skip(k + 1) {
                    *slot = range.0;
                }
                break true;
            }
        };
        if !advanced {
            return Ok(());
        }
    }
}

/// Number of nonzero lattice points in the closed box.
pub fn count_in_box<S: Scalar>(lattice: &LatticeBasis<S>, lo: &[S], hi: &[S]) -> Result<u64> {
    let mut count = 0u64;
    for_each_point_in_box(lattice.matrix(), lo, hi, |c, _| {
        if c.iter().any(|&v| v != 0) {
            count += 1;
        }
    })?;
    Ok(count)
}

/// Minimal `|u|_inf` over lattice points strictly inside the cone, for which
/// `accept(coeffs)` holds. Ties go to the smaller `|v|_inf`, then to the
/// lexicographically smaller coefficient vector. Shells `|u|_inf <= R` are scanned for
/// `R = 1, 2, 4, ...`, the last shell clamped to `search_cap`.
pub fn cone_minimum_filtered<S: Scalar>(
    lattice: &LatticeBasis<S>,
    cone: &ConeSpec<S>,
    search_cap: &S,
    accept: impl Fn(&[i64]) -> bool,
) -> Result<ConeHit<S>> {
    if cone.dim() != lattice.dim() {
        return Err(Error::Dimension(format!(
            "cone in dimension {} but lattice in dimension {}",
            cone.dim(),
            lattice.dim()
        )));
    }
    if cone.sided() == Sidedness::OneSidedNoAbs {
        return Err(Error::UnsupportedCone(
            "cone without |v| is unbounded in v; lattice minima are not attained",
        ));
    }
    let n = cone.n();
    let d = cone.dim();
    let mut radius = S::one();
    if radius > *search_cap {
        radius = search_cap.clone();
    }
    loop {
        let width = cone.delta().clone() * radius.clone();
        let lo: Vec<S> = (0..d)
            .map(|k| {
                if k >= n {
                    -width.clone()
                } else if cone.sided() == Sidedness::OneSided {
                    S::zero()
                } else {
                    -radius.clone()
                }
            })
            .collect();
        let hi: Vec<S> = (0..d)
            .map(|k| if k < n { radius.clone() } else { width.clone() })
            .collect();
        let mut best: Option<(S, S, Vec<i64>, Vec<S>)> = None;
        for_each_point_in_box(lattice.matrix(), &lo, &hi, |coeffs, point| {
            if !cone.contains(point) || !accept(coeffs) {
                return;
            }
            let unorm = cone.unorm(point);
            let vnorm = max_abs(&point[n..]);
            let better = match &best {
                None => true,
                Some((bu, bv, bc, _)) => {
                    unorm < *bu
                        || (unorm == *bu
                            && (vnorm < *bv || (vnorm == *bv && coeffs < bc.as_slice())))
                }
            };
            if better {
                best = Some((unorm, vnorm, coeffs.to_vec(), point.to_vec()));
            }
        })?;
        if let Some((unorm, _, coeffs, vector)) = best {
            let near_boundary = cone.boundary_margin(&vector) < 1e-12;
            return Ok(ConeHit {
                vector,
                coeffs,
                unorm,
                near_boundary,
            });
        }
        if radius >= *search_cap {
            return Err(Error::NotFound {
                cap: format!("{:?}", search_cap.to_f64()),
            });
        }
        radius = radius * S::from_i64(2);
        if radius > *search_cap {
            radius = search_cap.clone();
        }
    }
}

pub fn cone_minimum<S: Scalar>(
    lattice: &LatticeBasis<S>,
    cone: &ConeSpec<S>,
    search_cap: &S,
) -> Result<ConeHit<S>> {
    cone_minimum_filtered(lattice, cone, search_cap, |_| true)
}

/// Floating cone minimum.
pub fn f_cone(lattice: &LatticeBasis<f64>, cone: &ConeSpec<f64>, search_cap: f64) -> Result<ConeHit<f64>> {
    cone_minimum(lattice, cone, &search_cap)
}

/// Cone minimum with every comparison carried out exactly.
pub fn f_cone_exact(
    lattice: &LatticeBasis<Rational>,
    cone: &ConeSpec<Rational>,
    search_cap: &Rational,
) -> Result<ConeHit<Rational>> {
    cone_minimum(lattice, cone, search_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::lattice::flows::{geodesic_2, horocycle_2};

    #[test]
    fn standard_lattice_hits_e1() {
        for delta in [ratio(1, 1), ratio(1, 1000), ratio(7, 3)] {
            let hit = f_cone_exact(
                &LatticeBasis::standard(2),
                &ConeSpec::planar(delta).unwrap(),
                &ratio(1000, 1),
            )
            .unwrap();
            assert_eq!(hit.unorm, ratio(1, 1));
            assert_eq!(hit.coeffs, vec![1, 0]);
        }
        let hit = f_cone(&LatticeBasis::standard(2), &ConeSpec::planar(1.0).unwrap(), 1e6).unwrap();
        assert_eq!(hit.vector, vec![1.0, 0.0]);
        assert!(!hit.near_boundary);
    }

    #[test]
    fn sheared_standard_lattice_gives_qmin() {
        let lattice = LatticeBasis::standard(2)
            .transformed(&horocycle_2(ratio(9, 20)))
            .unwrap();
        let hit = f_cone_exact(&lattice, &ConeSpec::planar(ratio(1, 100)).unwrap(), &ratio(1_000_000, 1))
            .unwrap();
        assert_eq!(hit.unorm, ratio(9, 1));
        assert_eq!(hit.coeffs, vec![9, 4]);
    }

    #[test]
    fn geodesic_scaling_example() {
        let lattice = LatticeBasis::standard(2)
            .transformed(&geodesic_2(4f64.ln()))
            .unwrap();
        let hit = f_cone(&lattice, &ConeSpec::planar(1.0).unwrap(), 1e6).unwrap();
        assert!((hit.unorm - 2.0).abs() < 1e-12);
        let direct = f_cone(&LatticeBasis::standard(2), &ConeSpec::planar(4.0).unwrap(), 1e6).unwrap();
        assert!((hit.unorm - 2.0 * direct.unorm).abs() < 1e-12);
    }

    #[test]
    fn cap_too_small_is_reported() {
        let lattice = LatticeBasis::standard(2)
            .transformed(&horocycle_2(ratio(1, 3)))
            .unwrap();
        let err = f_cone_exact(&lattice, &ConeSpec::planar(ratio(1, 100)).unwrap(), &ratio(2, 1))
            .unwrap_err();
        assert!(matches!(err, Error::NotFound { .. }));
    }

    #[test]
    fn no_abs_cone_is_rejected() {
        let cone = ConeSpec::new(1, 1, 1.0, Sidedness::OneSidedNoAbs).unwrap();
        assert!(matches!(
            f_cone(&LatticeBasis::standard(2), &cone, 10.0),
            Err(Error::UnsupportedCone(_))
        ));
    }

    #[test]
    fn box_counts_on_standard_lattice() {
        let z2 = LatticeBasis::<Rational>::standard(2);
        let lo = [ratio(-2, 1), ratio(-2, 1)];
        let hi = [ratio(2, 1), ratio(2, 1)];
        assert_eq!(count_in_box(&z2, &lo, &hi).unwrap(), 24);
        let lo = [ratio(1, 2), ratio(-1, 3)];
        let hi = [ratio(5, 2), ratio(1, 3)];
        assert_eq!(count_in_box(&z2, &lo, &hi).unwrap(), 2);
        // degenerate box on a lattice line
        let lo = [ratio(0, 1), ratio(-2, 1)];
        let hi = [ratio(0, 1), ratio(2, 1)];
        assert_eq!(count_in_box(&z2, &lo, &hi).unwrap(), 4);
    }
}
