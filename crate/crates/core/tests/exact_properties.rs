use mindenom::exact::{q_m, q_mn, qmin, qmin_bruteforce, ratio, Rational, RationalMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn rational(max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(|d| (0..=d).prop_map(move |n| ratio(n, d)))
}

/// `delta` in `(0, 1/2]`.
fn delta(max_den: i64) -> impl Strategy<Value = Rational> {
    (2..=max_den).prop_flat_map(|d| (1..=d / 2).prop_map(move |n| ratio(n, d)))
}

fn dist_to_int(v: &Rational) -> Rational {
    (v - v.round()).abs()
}

// Direct search over q, independent of the common-denominator scan.
fn q_m_naive(x: &[Rational], delta: &Rational) -> u64 {
    (1u64..)
        .find(|&q| {
            let qr = Rational::from(BigInt::from(q));
            x.iter().all(|xi| dist_to_int(&(xi * &qr)) < &qr * delta)
        })
        .unwrap()
}

// Every q in the box [-r, r]^n for growing r, no canonical shells.
fn q_mn_naive(x: &RationalMatrix, delta: &Rational) -> u64 {
    let (m, n) = (x.rows(), x.cols());
    for r in 1i64.. {
        let mut q = vec![-r; n];
        loop {
            let norm = q.iter().map(|c| c.abs()).max().unwrap();
            if norm == r {
                let ok = (0..m).all(|i| {
                    let xi: Rational = (0..n).map(|j| x.get(i, j) * Rational::from(BigInt::from(q[j]))).sum();
                    dist_to_int(&xi) < delta * Rational::from(BigInt::from(r))
                });
                if ok {
                    return r as u64;
                }
            }
            let mut k = 0;
            while k < n && q[k] == r {
                q[k] = -r;
                k += 1;
            }
            if k == n {
                break;
            }
            q[k] += 1;
        }
    }
    unreachable!()
}

#[test]
fn frozen_examples() {
    let q = |x: Rational, d: Rational| qmin(&x, &d).unwrap();
    let hit = q(ratio(9, 20), ratio(1, 100));
    assert_eq!((hit.p, hit.q), (BigInt::from(4), BigInt::from(9)));
    assert_eq!(q(ratio(1, 2), ratio(1, 4)).q, BigInt::from(2));
    assert_eq!(q(Rational::zero(), ratio(1, 10)).p, BigInt::zero());
    assert_eq!(q_m(&[ratio(1, 2), ratio(1, 3)], &ratio(1, 100)).unwrap(), 6);
    assert_eq!(q_m_naive(&[ratio(1, 2), ratio(1, 3)], &ratio(1, 100)), 6);
    let x = RationalMatrix::new(1, 2, vec![ratio(1, 2), ratio(1, 3)]).unwrap();
    let hit = q_mn(&x, &ratio(1, 5)).unwrap();
    assert_eq!((hit.qnorm, hit.q), (1, vec![1, 1]));
    assert_eq!(q_mn_naive(&x, &ratio(1, 5)), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn continued_fraction_matches_brute_force(x in rational(5000), d in delta(2000)) {
        let fast = qmin(&x, &d).unwrap();
        let slow = qmin_bruteforce(&x, &d).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn witness_lies_inside(x in rational(5000), d in delta(2000)) {
        let hit = qmin(&x, &d).unwrap();
        let f = Rational::new(hit.p.clone(), hit.q.clone());
        prop_assert!((f - &x).abs() < d);
    }

    #[test]
    fn qmin_is_monotone_in_delta(x in rational(2000), a in delta(500), b in delta(500)) {
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(qmin(&x, &small).unwrap().q >= qmin(&x, &large).unwrap().q);
    }

    #[test]
    fn q_m_is_monotone_in_delta(x in prop::collection::vec(rational(200), 2), a in delta(60), b in delta(60)) {
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(q_m(&x, &small).unwrap() >= q_m(&x, &large).unwrap());
    }

    #[test]
    fn q_mn_is_monotone_in_delta(x in prop::collection::vec(rational(50), 2), a in delta(16), b in delta(16)) {
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        let x = RationalMatrix::new(1, 2, x).unwrap();
        prop_assert!(q_mn(&x, &small).unwrap().qnorm >= q_mn(&x, &large).unwrap().qnorm);
    }

    #[test]
    fn specializations_agree(x in rational(3000), d in delta(1000)) {
        let one = qmin(&x, &d).unwrap().q;
        let vector = q_m(std::slice::from_ref(&x), &d).unwrap();
        let matrix = q_mn(&RationalMatrix::new(1, 1, vec![x]).unwrap(), &d).unwrap().qnorm;
        prop_assert_eq!(one.clone(), BigInt::from(vector));
        prop_assert_eq!(one, BigInt::from(matrix));
    }

    #[test]
    fn shift_and_reflection(x in rational(3000), d in delta(1000)) {
        let q = qmin(&x, &d).unwrap().q;
        prop_assert_eq!(&qmin(&(&x + Rational::one()), &d).unwrap().q, &q);
        prop_assert_eq!(&qmin(&(Rational::one() - &x), &d).unwrap().q, &q);
    }

    #[test]
    fn farey_ceiling(x in rational(5000), d in delta(5000)) {
        let bound = (Rational::one() / &d).floor().to_integer() + 1;
        prop_assert!(qmin(&x, &d).unwrap().q <= bound);
        prop_assert!(qmin_bruteforce(&x, &d).unwrap().q <= bound);
    }

    #[test]
    fn q_m_matches_direct_search(x in prop::collection::vec(rational(300), 1..=3), d in delta(80)) {
        prop_assert_eq!(q_m(&x, &d).unwrap(), q_m_naive(&x, &d));
    }

    #[test]
    fn q_mn_matches_box_search(
        (m, n, x) in (1usize..=2, 1usize..=2).prop_flat_map(|(m, n)| {
            (Just(m), Just(n), prop::collection::vec(rational(60), m * n))
        }),
        d in (4i64..=40).prop_map(|k| ratio(k, 100)),
    ) {
        let x = RationalMatrix::new(m, n, x).unwrap();
        prop_assert_eq!(q_mn(&x, &d).unwrap().qnorm, q_mn_naive(&x, &d));
    }
}
