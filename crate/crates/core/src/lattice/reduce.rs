//! Size reduction with Lovász swaps on column bases.

use super::matrix::Matrix;
use crate::scalar::Scalar;

/// Reduced basis `B U` together with the unimodular integer transform `U`
/// (stored row-major, `u[i][j]`).
#[derive(Debug, Clone)]
pub struct Reduced<S> {
    pub basis: Matrix<S>,
    pub transform: Vec<Vec<i64>>,
}

impl<S: Scalar> Reduced<S> {
    /// Coefficients with respect to the original basis of the point whose
    /// coefficients in the reduced basis are `c`.
    pub fn original_coeffs(&self, c: &[i64]) -> Vec<i64> {
        self.transform
            .iter()
            .map(|row| row.iter().zip(c).map(|(u, v)| u * v).sum())
            .collect()
    }
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

struct GramSchmidt<S> {
    mu: Vec<Vec<S>>,
    norms: Vec<S>,
}

fn gram_schmidt<S: Scalar>(cols: &[Vec<S>]) -> GramSchmidt<S> {
    let d = cols.len();
    let mut stars: Vec<Vec<S>> = Vec::with_capacity(d);
    let mut mu = vec![vec![S::zero(); d]; d];
    let mut norms: Vec<S> = Vec::with_capacity(d);
    for i in 0..d {
        let mut star = cols[i].clone();
        for j in 0..i {
            let m = if norms[j] == S::zero() {
                S::zero()
            } else {
                dot(&cols[i], &stars[j]) / norms[j].clone()
            };
            for (s, t) in star.iter_mut().zip(&stars[j]) {
                *s = s.clone() - m.clone() * t.clone();
            }
            mu[i][j] = m;
        }
        norms.push(dot(&star, &star));
        stars.push(star);
    }
    GramSchmidt { mu, norms }
}

/// LLL reduction with parameter 3/4. Gauss reduction in dimension two is the
/// special case.
pub fn reduce<S: Scalar>(basis: &Matrix<S>) -> Reduced<S> {
    let d = basis.cols();
    let mut cols: Vec<Vec<S>> = (0..d).map(|j| basis.column(j)).collect();
    let mut u: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    let lovasz = S::from_i64(3) / S::from_i64(4);
    let mut k = 1;
    let mut guard = 0usize;
    while k < d && guard < 100_000 {
        guard += 1;
        let mut gs = gram_schmidt(&cols);
        for j in (0..k).rev() {
            let r = gs.mu[k][j].round_i64();
            if r == 0 {
                continue;
            }
            let rs = S::from_i64(r);
            let (head, tail) = cols.split_at_mut(k);
            for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                *x = x.clone() - rs.clone() * y.clone();
            }
            for row in u.iter_mut() {
                row[k] -= r * row[j];
            }
            for i in 0..j {
                let v = gs.mu[k][i].clone() - rs.clone() * gs.mu[j][i].clone();
                gs.mu[k][i] = v;
            }
            gs.mu[k][j] = gs.mu[k][j].clone() - rs;
        }
        let m = gs.mu[k][k - 1].clone();
        let bound = (lovasz.clone() - m.clone() * m) * gs.norms[k - 1].clone();
        if gs.norms[k] >= bound {
            k += 1;
        } else {
            cols.swap(k, k - 1);
            for row in u.iter_mut() {
                row.swap(k, k - 1);
            }
            k = (k - 1).max(1);
        }
    }
    let mut out = Matrix::zeros(basis.rows(), d);
    for (j, col) in cols.into_iter().enumerate() {
        for (i, v) in col.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Reduced {
        basis: out,
        transform: u,
    }
}
