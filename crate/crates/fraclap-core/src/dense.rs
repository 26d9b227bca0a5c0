//! Small dense matrices: the materialization oracle for the structured
//! operators and the direct-solve fallback. Row-major, partial-pivot LU.

use crate::error::{CoreError, Result};
use crate::scalar::Scalar;

/// Hard cap on dense materialization of structured operators (per axis N).
pub const DENSE_LIMIT: usize = 64;

#[derive(Debug, Clone)]
pub struct DenseMatrix<S: Scalar> {
    pub n: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![S::ZERO; n * n],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> S {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn matvec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![S::ZERO; self.n];
        for i in 0..self.n {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            let mut acc = S::ZERO;
            for (a, b) in row.iter().zip(x) {
                acc += *a * *b;
            }
            y[i] = acc;
        }
        y
    }

    /// Solve A x = b by LU with partial pivoting (A consumed as the factors).
    pub fn solve(mut self, b: &[S]) -> Result<Vec<S>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x: Vec<S> = b.to_vec();
        let mut piv: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut imax = k;
            let mut vmax = self.at(piv[k], k).abs();
            for i in (k + 1)..n {
                let v = self.at(piv[i], k).abs();
                if v > vmax {
                    vmax = v;
                    imax = i;
                }
            }
            if vmax == S::ZERO {
                return Err(CoreError::SolverStalled {
                    method: "dense-lu",
                    iterations: k,
                    residual: f64::INFINITY,
                });
            }
            piv.swap(k, imax);
            let pk = piv[k];
            let diag = self.at(pk, k);
            for i in (k + 1)..n {
                let pi = piv[i];
                let factor = self.at(pi, k) / diag;
                self.set(pi, k, factor);
                for j in (k + 1)..n {
                    let v = self.at(pi, j) - factor * self.at(pk, j);
                    self.set(pi, j, v);
                }
            }
        }
        // forward substitution on permuted rows
        let mut y = vec![S::ZERO; n];
        for i in 0..n {
            let mut acc = x[piv[i]];
            for j in 0..i {
                acc -= self.at(piv[i], j) * y[j];
            }
            y[i] = acc;
        }
        // back substitution
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in (i + 1)..n {
                acc -= self.at(piv[i], j) * x[j];
            }
            x[i] = acc / self.at(piv[i], i);
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lu_solves_small_system() {
        let mut a = DenseMatrix::zeros(3);
        let rows = [[4.0, 1.0, 0.0], [1.0, 3.0, -1.0], [0.0, -1.0, 2.0]];
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                a.set(i, j, v);
            }
        }
        let xtrue = [1.0, -2.0, 0.5];
        let b = a.matvec(&xtrue);
        let x = a.solve(&b).unwrap();
        for (got, want) in x.iter().zip(xtrue) {
            assert_relative_eq!(*got, want, max_relative = 1e-13);
        }
    }
}
