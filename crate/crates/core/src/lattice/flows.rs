//! Diagonal and unipotent flows acting on lattices by left multiplication.

use super::matrix::Matrix;
use crate::exact::Rational;
use crate::scalar::Scalar;

/// `diag(e^{t/2}, e^{-t/2})`.
pub fn geodesic_2(t: f64) -> Matrix<f64> {
    Matrix::diagonal(vec![(t / 2.0).exp(), (-t / 2.0).exp()])
}

/// `[[1, 0], [-s, 1]]`.
pub fn horocycle_2<S: Scalar>(s: S) -> Matrix<S> {
    let mut m = Matrix::identity(2);
    m.set(1, 0, -s);
    m
}

/// Exact geodesic element `diag(a, 1/a)`, for cases where `e^{t/2}` is
/// rational.
pub fn geodesic_2_exact(scale: Rational) -> Matrix<Rational> {
    let inv = <Rational as Scalar>::one() / scale.clone();
    Matrix::diagonal(vec![scale, inv])
}

/// Block diagonal `diag(e^{t/(m+n)} Id_n, e^{-nt/(m(m+n))} Id_m)`, acting on
/// `R^n + R^m` with the `n` block first.
pub fn geodesic_mn(t: f64, m: usize, n: usize) -> Matrix<f64> {
    let (mf, nf) = (m as f64, n as f64);
    let expand = (t / (mf + nf)).exp();
    let contract = (-nf * t / (mf * (mf + nf))).exp();
    let mut diag = vec![expand; n];
    diag.extend(std::iter::repeat_n(contract, m));
    Matrix::diagonal(diag)
}

/// `[[Id_n, 0], [-X, Id_m]]` for an `m x n` matrix `X`.
pub fn horocycle_mn<S: Scalar>(x: &Matrix<S>) -> Matrix<S> {
    let (m, n) = (x.rows(), x.cols());
    let mut out = Matrix::identity(m + n);
    for i in 0..m {
        for j in 0..n {
            out.set(n + i, j, -x.get(i, j).clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn identities_at_zero() {
        assert_eq!(geodesic_2(0.0), Matrix::identity(2));
        assert_eq!(horocycle_2(0.0), Matrix::identity(2));
    }

    #[test]
    fn conjugacy_relation() {
        let t = 2f64.ln();
        let lhs = geodesic_2(t)
            .mul(&horocycle_2(1.0))
            .unwrap()
            .mul(&geodesic_2(-t))
            .unwrap();
        let rhs = horocycle_2(0.5);
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);

        // Exact version with e^{t/2} = 2.
        let g = geodesic_2_exact(ratio(2, 1));
        let g_inv = geodesic_2_exact(ratio(1, 2));
        let lhs = g.mul(&horocycle_2(ratio(3, 1))).unwrap().mul(&g_inv).unwrap();
        assert_eq!(lhs, horocycle_2(ratio(3, 4)));
    }

    #[test]
    fn block_flows_are_unimodular_and_specialize() {
        let g = geodesic_mn(1.0, 2, 1);
        assert!((g.det().unwrap() - 1.0).abs() < 1e-12);
        for t in [-2.5, 0.3, 1.7] {
            assert!(geodesic_mn(t, 1, 1).max_abs_diff(&geodesic_2(t)) < 1e-15);
        }
        let x = Matrix::from_rows(vec![vec![ratio(3, 7)]]).unwrap();
        assert_eq!(horocycle_mn(&x), horocycle_2(ratio(3, 7)));
        let x = Matrix::from_rows(vec![vec![ratio(1, 2), ratio(1, 3)]]).unwrap();
        assert_eq!(horocycle_mn(&x).det().unwrap(), ratio(1, 1));
    }
}
