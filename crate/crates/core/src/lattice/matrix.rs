use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged or empty matrix".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let d = entries.len();
        let mut m = Self::zeros(d, d);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v = (0..self.cols).fold(S::zero(), |acc, k| {
                    acc + self.get(i, k).clone() * other.get(k, j).clone()
                });
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// `self * coeffs` for an integer vector.
    pub fn apply_int(&self, coeffs: &[i64]) -> Vec<S> {
        (0..self.rows)
            .map(|i| {
                coeffs.iter().enumerate().fold(S::zero(), |acc, (k, &c)| {
                    if c == 0 {
                        acc
                    } else {
                        acc + self.get(i, k).clone() * S::from_i64(c)
                    }
                })
            })
            .collect()
    }

    pub fn det(&self) -> Result<S> {
        let lu = self.eliminate()?;
        Ok(lu.0)
    }

    pub fn inverse(&self) -> Result<Matrix<S>> {
        let (det, inv) = self.eliminate()?;
        if det.is_zero() {
            return Err(Error::InvalidArgument("singular matrix".into()));
        }
        Ok(inv)
    }

    /// Gauss-Jordan elimination with largest-magnitude pivoting. Returns the
    /// determinant and, when nonsingular, the inverse.
    fn eliminate(&self) -> Result<(S, Matrix<S>)> {
        if self.rows != self.cols {
            return Err(Error::Dimension("square matrix required".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        let mut det = S::one();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .max_by(|&x, &y| {
                    a.get(x, col)
                        .abs()
                        .partial_cmp(&a.get(y, col).abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let Some(p) = pivot else {
                return Ok((S::zero(), inv));
            };
            if p != col {
                a.swap_rows(p, col);
                inv.swap_rows(p, col);
                det = -det;
            }
            let pv = a.get(col, col).clone();
            det = det * pv.clone();
            for c in 0..n {
                let v = a.get(col, c).clone() / pv.clone();
                a.set(col, c, v);
                let w = inv.get(col, c).clone() / pv.clone();
                inv.set(col, c, w);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in 0..n {
                    let v = a.get(r, c).clone() - f.clone() * a.get(col, c).clone();
                    a.set(r, c, v);
                    let w = inv.get(r, c).clone() - f.clone() * inv.get(col, c).clone();
                    inv.set(r, c, w);
                }
            }
        }
        Ok((det, inv))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Operator norm induced by the max norm: the largest absolute row sum.
    pub fn inf_norm(&self) -> S {
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(S::zero(), |acc, c| acc + self.get(r, c).abs())
            })
            .fold(S::zero(), |acc, v| if v > acc { v } else { acc })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Matrix<S>) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).abs().to_f64())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, Rational};

    #[test]
    fn det_and_inverse_exact() {
        let m: Matrix<Rational> = Matrix::from_rows(vec![
            vec![ratio(2, 1), ratio(1, 1), ratio(0, 1)],
            vec![ratio(1, 3), ratio(1, 1), ratio(1, 1)],
            vec![ratio(0, 1), ratio(1, 2), ratio(1, 1)],
        ])
        .unwrap();
        let det = m.det().unwrap();
        assert_eq!(det, ratio(2, 3));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn singular_is_detected() {
        let m: Matrix<f64> = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(m.det().unwrap(), 0.0);
        assert!(m.inverse().is_err());
    }

    #[test]
    fn inf_norm_is_max_row_sum() {
        let m: Matrix<f64> = Matrix::from_rows(vec![vec![1.0, -2.0], vec![0.5, 0.25]]).unwrap();
        assert_eq!(m.inf_norm(), 3.0);
    }
}
