use mindenom::exact::{qmin, ratio, Rational};
use mindenom::haar::sample_indexed;
use mindenom::lattice::{
    f_cone, f_cone_exact, geodesic_2, geodesic_mn, horocycle_2, horocycle_mn, ConeSpec, LatticeBasis, Matrix,
    Sidedness,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const CAP: f64 = 1e6;

fn planar(delta: f64) -> ConeSpec<f64> {
    ConeSpec::planar(delta).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs()
}

fn unimodular(entries: Vec<f64>, d: usize) -> Option<LatticeBasis<f64>> {
    let m = Matrix::from_rows(entries.chunks(d).map(|r| r.to_vec()).collect()).unwrap();
    if m.det().unwrap().abs() < 0.2 {
        return None;
    }
    Some(LatticeBasis::<f64>::normalized(m).unwrap())
}

fn rat(n: i64, d: i64) -> Rational {
    ratio(n, d)
}

/// `diag(a, 1/a) h_x U` for an integer unimodular `U`.
fn rational_lattice(a: Rational, x: Rational, u: [i64; 4]) -> LatticeBasis<Rational> {
    let inv = Rational::from(BigInt::from(1)) / a.clone();
    let scale = Matrix::diagonal(vec![a, inv]);
    let u = Matrix::from_rows(vec![
        vec![rat(u[0], 1), rat(u[1], 1)],
        vec![rat(u[2], 1), rat(u[3], 1)],
    ])
    .unwrap();
    let m = scale.mul(&horocycle_2(x)).unwrap().mul(&u).unwrap();
    LatticeBasis::new(m).unwrap()
}

#[test]
fn frozen_planar_examples() {
    let z2 = LatticeBasis::<f64>::standard(2);
    assert_eq!(f_cone(&z2, &planar(1.0), CAP).unwrap().unorm, 1.0);
    let g = z2.transformed(&geodesic_2(4f64.ln())).unwrap();
    assert!(close(f_cone(&g, &planar(1.0), CAP).unwrap().unorm, 2.0));
    let sheared = LatticeBasis::new(horocycle_2(rat(9, 20))).unwrap();
    let hit = f_cone_exact(&sheared, &ConeSpec::planar(rat(1, 100)).unwrap(), &rat(1000, 1)).unwrap();
    assert_eq!(hit.unorm, rat(9, 1));
    assert_eq!(qmin(&rat(9, 20), &rat(1, 100)).unwrap().q, BigInt::from(9));
}

#[test]
fn conjugation_of_flows() {
    let t = 2f64.ln();
    let lhs = geodesic_2(t).mul(&horocycle_2(1.0)).unwrap().mul(&geodesic_2(-t)).unwrap();
    assert!(lhs.max_abs_diff(&horocycle_2(0.5)) < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn geodesic_scaling(index in 0u64..100_000, t in -3.0f64..3.0, delta in 0.05f64..2.0) {
        let lattice = sample_indexed(31, index).basis;
        let moved = lattice.transformed(&geodesic_2(t)).unwrap();
        let lhs = f_cone(&moved, &planar(delta), CAP).unwrap().unorm;
        let rhs = (t / 2.0).exp() * f_cone(&lattice, &planar(delta * t.exp()), CAP).unwrap().unorm;
        prop_assert!(close(lhs, rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn normalized_form(index in 0u64..100_000, delta in 0.01f64..1.0) {
        let lattice = sample_indexed(32, index).basis;
        let moved = lattice.transformed(&geodesic_2(-delta.ln())).unwrap();
        let lhs = f_cone(&moved, &planar(delta), CAP).unwrap().unorm;
        let rhs = f_cone(&lattice, &planar(1.0), CAP).unwrap().unorm / delta.sqrt();
        prop_assert!(close(lhs, rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn block_geodesic_scaling(
        (m, n) in prop_oneof![Just((2usize, 1usize)), Just((1, 2))],
        entries in prop::collection::vec(-2.0f64..2.0, 9),
        t in -3.0f64..3.0,
        delta in 0.1f64..1.0,
    ) {
        let Some(lattice) = unimodular(entries, 3) else { return Ok(()) };
        let cone = |d: f64| ConeSpec::new(n, m, d, Sidedness::TwoSided).unwrap();
        let moved = lattice.transformed(&geodesic_mn(t, m, n)).unwrap();
        let lhs = f_cone(&moved, &cone(delta), CAP).unwrap().unorm;
        let rhs = (t / (m + n) as f64).exp() * f_cone(&lattice, &cone(delta * (t / m as f64).exp()), CAP).unwrap().unorm;
        prop_assert!(close(lhs, rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn flows_keep_determinant_one(
        entries in prop::collection::vec(-2.0f64..2.0, 9),
        x in prop::collection::vec(-1.0f64..1.0, 2),
        t in -4.0f64..4.0,
    ) {
        let Some(lattice) = unimodular(entries, 3) else { return Ok(()) };
        let xm = Matrix::from_rows(vec![x]).unwrap();
        for g in [geodesic_mn(t, 1, 2), horocycle_mn(&xm)] {
            let moved = lattice.transformed(&g).unwrap();
            prop_assert!((moved.matrix().det().unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_minimum_is_complete(
        a in (1i64..=4, 1i64..=4).prop_map(|(n, d)| rat(n, d)),
        x in (1i64..=30).prop_flat_map(|d| (0..=d).prop_map(move |n| rat(n, d))),
        k in -3i64..=3,
        delta in (1i64..=20).prop_map(|n| rat(n, 10)),
        two_sided in any::<bool>(),
    ) {
        let lattice = rational_lattice(a, x, [1, k, 0, 1]);
        let sided = if two_sided { Sidedness::TwoSided } else { Sidedness::OneSided };
        let cone = ConeSpec::new(1, 1, delta, sided).unwrap();
        let hit = f_cone_exact(&lattice, &cone, &rat(100_000, 1)).unwrap();
        let mut naive: Option<Rational> = None;
        for i in -50i64..=50 {
            for j in -50i64..=50 {
                let p = lattice.point(&[i, j]);
                if (i, j) != (0, 0) && cone.contains(&p) {
                    let u = p[0].abs();
                    if naive.as_ref().is_none_or(|b| u < *b) {
                        naive = Some(u);
                    }
                }
            }
        }
        if let Some(best) = naive {
            prop_assert!(hit.unorm <= best);
            if hit.coeffs.iter().all(|c| c.abs() <= 50) {
                prop_assert_eq!(&hit.unorm, &best);
            }
        }
        prop_assert!(hit.unorm > Rational::zero());
    }
}
