//! FFT application of the discrete fractional Laplacian: symmetric Toeplitz
//! in 1D, block-Toeplitz-Toeplitz-block in 2D, via circulant embedding.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::boundary::BoundaryVector;
use crate::dense::{DenseMatrix, DENSE_LIMIT};
use crate::error::{CoreError, Result};
use crate::kernel::{WeightKernel1D, WeightKernel2D};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Norm {
    Inf,
    L2,
}

fn next_pow2(n: usize) -> usize {
    n.next_power_of_two()
}

/// Symmetric Toeplitz operator B₁ with first column w^M_k, applied in
/// O(N log N) through a circulant embedding of size 2^⌈log₂ 2(N-1)⌉.
pub struct ToeplitzOperator1D<S: Scalar> {
    size: usize,
    h: S,
    first_col: Vec<S>,
    m: usize,
    symbol_fft: Vec<Complex<S>>,
    fft: Arc<dyn Fft<S>>,
    ifft: Arc<dyn Fft<S>>,
}

impl<S: Scalar> ToeplitzOperator1D<S> {
    pub fn from_kernel(kernel: &WeightKernel1D<S>) -> Self {
        Self::from_symbol(kernel.symbol(), kernel.h)
    }

    /// `first_col[k]` = matrix entry at offset k (symmetric).
    pub fn from_symbol(first_col: &[S], h: S) -> Self {
        let size = first_col.len();
        assert!(size >= 1);
        let m = next_pow2(2 * size);
        let mut planner = FftPlanner::<S>::new();
        let fft = planner.plan_fft_forward(m);
        let ifft = planner.plan_fft_inverse(m);
        let mut circ = vec![Complex::new(S::ZERO, S::ZERO); m];
        circ[0].re = first_col[0];
        for (k, &v) in first_col.iter().enumerate().skip(1) {
            circ[k].re = v;
            circ[m - k].re = v;
        }
        fft.process(&mut circ);
        ToeplitzOperator1D {
            size,
            h,
            first_col: first_col.to_vec(),
            m,
            symbol_fft: circ,
            fft,
            ifft,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn h(&self) -> S {
        self.h
    }

    /// v_i = Σ_j w_{|i-j|} u_j.
    pub fn apply(&self, u: &[S]) -> Vec<S> {
        assert_eq!(u.len(), self.size);
        let mut buf = vec![Complex::new(S::ZERO, S::ZERO); self.m];
        for (b, &x) in buf.iter_mut().zip(u) {
            b.re = x;
        }
        self.fft.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.symbol_fft) {
            *b = *b * *s;
        }
        self.ifft.process(&mut buf);
        let scale = S::ONE / S::from_real(self.m as f64);
        buf[..self.size].iter().map(|c| c.re * scale).collect()
    }

    /// Dense materialization, gated to small problems.
    pub fn to_dense(&self) -> Result<DenseMatrix<S>> {
        if self.size > DENSE_LIMIT * 2 {
            return Err(CoreError::DenseTooLarge {
                n: self.size,
                limit: DENSE_LIMIT * 2,
            });
        }
        let mut a = DenseMatrix::zeros(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                a.set(i, j, self.first_col[i.abs_diff(j)]);
            }
        }
        Ok(a)
    }
}

/// BTTB operator B₂ with symbol w^M_{p,q}, |p|,|q| ≤ N-2, applied through a
/// doubly circulant embedding and 2D FFTs.
pub struct BttbOperator2D<S: Scalar> {
    size: usize, // interior nodes per axis, N-1
    h: S,
    symbol: Vec<Vec<S>>, // quadrant, offsets 0..=N-2
    m: usize,
    symbol_fft: Vec<Complex<S>>,
    fft: Arc<dyn Fft<S>>,
    ifft: Arc<dyn Fft<S>>,
}

impl<S: Scalar> BttbOperator2D<S> {
    pub fn from_kernel(kernel: &WeightKernel2D<S>) -> Self {
        let n = kernel.n();
        let size = n - 1;
        let quadrant: Vec<Vec<S>> = (0..size)
            .map(|p| (0..size).map(|q| kernel.w[p][q]).collect())
            .collect();
        Self::from_symbol(quadrant, kernel.h)
    }

    /// `quadrant[p][q]` = symbol at offsets (±p, ±q).
    pub fn from_symbol(quadrant: Vec<Vec<S>>, h: S) -> Self {
        let size = quadrant.len();
        assert!(size >= 1 && quadrant.iter().all(|r| r.len() == size));
        let m = next_pow2(2 * size);
        let mut planner = FftPlanner::<S>::new();
        let fft = planner.plan_fft_forward(m);
        let ifft = planner.plan_fft_inverse(m);
        let mut grid = vec![Complex::new(S::ZERO, S::ZERO); m * m];
        for p in -(size as i64 - 1)..=(size as i64 - 1) {
            let ip = p.rem_euclid(m as i64) as usize;
            for q in -(size as i64 - 1)..=(size as i64 - 1) {
                let iq = q.rem_euclid(m as i64) as usize;
                grid[ip * m + iq].re =
                    quadrant[p.unsigned_abs() as usize][q.unsigned_abs() as usize];
            }
        }
        fft2_in_place(&fft, &mut grid, m);
        BttbOperator2D {
            size,
            h,
            symbol: quadrant,
            m,
            symbol_fft: grid,
            fft,
            ifft,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn h(&self) -> S {
        self.h
    }

    #[inline]
    pub fn symbol_at(&self, p: i64, q: i64) -> S {
        self.symbol[p.unsigned_abs() as usize][q.unsigned_abs() as usize]
    }

    /// V_{i,j} = Σ_{k,l} w_{|i-k|,|j-l|} U_{k,l}; `u` is row-major
    /// (N-1)×(N-1).
    pub fn apply(&self, u: &[S]) -> Vec<S> {
        let l = self.size;
        assert_eq!(u.len(), l * l);
        let m = self.m;
        let mut buf = vec![Complex::new(S::ZERO, S::ZERO); m * m];
        for i in 0..l {
            for j in 0..l {
                buf[i * m + j].re = u[i * l + j];
            }
        }
        fft2_in_place(&self.fft, &mut buf, m);
        for (b, s) in buf.iter_mut().zip(&self.symbol_fft) {
            *b = *b * *s;
        }
        fft2_in_place(&self.ifft, &mut buf, m);
        let scale = S::ONE / S::from_real((m * m) as f64);
        let mut out = vec![S::ZERO; l * l];
        for i in 0..l {
            for j in 0..l {
                out[i * l + j] = buf[i * m + j].re * scale;
            }
        }
        out
    }

    pub fn to_dense(&self) -> Result<DenseMatrix<S>> {
        if self.size + 1 > DENSE_LIMIT {
            return Err(CoreError::DenseTooLarge {
                n: self.size + 1,
                limit: DENSE_LIMIT,
            });
        }
        let l = self.size;
        let mut a = DenseMatrix::zeros(l * l);
        for i in 0..l {
            for j in 0..l {
                for k in 0..l {
                    for lq in 0..l {
                        let v = self.symbol_at(i as i64 - k as i64, j as i64 - lq as i64);
                        a.set(i * l + j, k * l + lq, v);
                    }
                }
            }
        }
        Ok(a)
    }
}

/// In-place 2D FFT on an m×m row-major complex grid: rows, transpose,
/// rows, transpose.
fn fft2_in_place<S: Scalar>(fft: &Arc<dyn Fft<S>>, grid: &mut [Complex<S>], m: usize) {
    let mut scratch = vec![Complex::new(S::ZERO, S::ZERO); fft.get_inplace_scratch_len()];
    for row in grid.chunks_exact_mut(m) {
        fft.process_with_scratch(row, &mut scratch);
    }
    transpose_square(grid, m);
    for row in grid.chunks_exact_mut(m) {
        fft.process_with_scratch(row, &mut scratch);
    }
    transpose_square(grid, m);
}

fn transpose_square<T: Copy>(grid: &mut [T], m: usize) {
    for i in 0..m {
        for j in (i + 1)..m {
            grid.swap(i * m + j, j * m + i);
        }
    }
}

/// Full discrete operator including the exterior contribution:
/// (-Δ)^s_{h,M} u = B u + G.
pub fn discrete_frac_laplacian_1d<S: Scalar>(
    op: &ToeplitzOperator1D<S>,
    boundary: &BoundaryVector<S>,
    u: &[S],
) -> Result<Vec<S>> {
    if u.len() != op.size() {
        return Err(CoreError::ShapeMismatch {
            expected: op.size(),
            got: u.len(),
        });
    }
    if boundary.g.len() != op.size() {
        return Err(CoreError::ShapeMismatch {
            expected: op.size(),
            got: boundary.g.len(),
        });
    }
    let mut v = op.apply(u);
    for (x, g) in v.iter_mut().zip(&boundary.g) {
        *x += *g;
    }
    Ok(v)
}

pub fn discrete_frac_laplacian_2d<S: Scalar>(
    op: &BttbOperator2D<S>,
    boundary: &BoundaryVector<S>,
    u: &[S],
) -> Result<Vec<S>> {
    let expect = op.size() * op.size();
    if u.len() != expect {
        return Err(CoreError::ShapeMismatch {
            expected: expect,
            got: u.len(),
        });
    }
    if boundary.g.len() != expect {
        return Err(CoreError::ShapeMismatch {
            expected: expect,
            got: boundary.g.len(),
        });
    }
    let mut v = op.apply(u);
    for (x, g) in v.iter_mut().zip(&boundary.g) {
        *x += *g;
    }
    Ok(v)
}

/// Norm of (operator output - reference). The discrete l² norm is scaled by
/// h^{n/2} so it is mesh-consistent.
pub fn deviation_norm<S: Scalar>(values: &[S], reference: &[S], norm: Norm, h: S, dim: u8) -> S {
    assert_eq!(values.len(), reference.len());
    match norm {
        Norm::Inf => values
            .iter()
            .zip(reference)
            .map(|(a, b)| (*a - *b).abs())
            .fold(S::ZERO, |m, v| if v > m { v } else { m }),
        Norm::L2 => {
            let mut acc = S::ZERO;
            for (a, b) in values.iter().zip(reference) {
                let d = *a - *b;
                acc += d * d;
            }
            acc.sqrt() * h.powf(S::from_real(dim as f64 / 2.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{FracOrder, Grid1D, Grid2D};
    use crate::kernel::{weights_1d, weights_2d};
    use crate::quadrature::QuadratureConfig;
    use approx::assert_relative_eq;

    #[test]
    fn impulse_reproduces_symbol_1d() {
        let k = weights_1d(&Grid1D::new(1.0f64, 16).unwrap(), FracOrder::new(0.3).unwrap())
            .unwrap();
        let op = ToeplitzOperator1D::from_kernel(&k);
        let mut e = vec![0.0; op.size()];
        e[5] = 1.0;
        let v = op.apply(&e);
        for (i, &vi) in v.iter().enumerate() {
            assert_relative_eq!(vi, k.w[i.abs_diff(5)], max_relative = 1e-11, epsilon = 1e-13);
        }
    }

    #[test]
    fn zero_maps_to_zero() {
        let k = weights_1d(&Grid1D::new(1.0f64, 16).unwrap(), FracOrder::new(0.7).unwrap())
            .unwrap();
        let op = ToeplitzOperator1D::from_kernel(&k);
        let v = op.apply(&vec![0.0; op.size()]);
        assert!(v.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn impulse_reproduces_symbol_2d() {
        let grid = Grid2D::new(1.0f64, 8).unwrap();
        let k = weights_2d(
            &grid,
            FracOrder::new(0.8).unwrap(),
            1.0,
            0.0,
            &QuadratureConfig::default(),
        )
        .unwrap();
        let op = BttbOperator2D::from_kernel(&k);
        let l = op.size();
        let mut e = vec![0.0; l * l];
        let (pi, pj) = (2usize, 4usize);
        e[pi * l + pj] = 1.0;
        let v = op.apply(&e);
        for i in 0..l {
            for j in 0..l {
                let expect = k.w_at(i as i64 - pi as i64, j as i64 - pj as i64);
                assert_relative_eq!(v[i * l + j], expect, max_relative = 1e-10, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let k = weights_1d(&Grid1D::new(1.0f64, 16).unwrap(), FracOrder::new(0.7).unwrap())
            .unwrap();
        let op = ToeplitzOperator1D::from_kernel(&k);
        let b = BoundaryVector::zero_1d(16);
        assert!(discrete_frac_laplacian_1d(&op, &b, &vec![0.0; 7]).is_err());
    }
}
