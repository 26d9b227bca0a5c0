//! Fractional order and uniform grids over [-L,L] and [-L,L]^2.

use crate::error::{CoreError, Result};
use crate::scalar::Scalar;
use serde::Serialize;

/// Fractional exponent s of (-Δ)^s, restricted to (0,1/2)∪(1/2,1).
///
/// s = 1/2 is rejected at construction: the one-dimensional splitting
/// constant c_{1,s-1} has a pole there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FracOrder<S: Scalar>(S);

impl<S: Scalar> FracOrder<S> {
    pub fn new(s: S) -> Result<Self> {
        let half = S::from_real(0.5);
        if !(s > S::ZERO && s < S::ONE) || s == half {
            return Err(CoreError::InvalidOrder(s.to_real()));
        }
        Ok(FracOrder(s))
    }

    #[inline]
    pub fn value(self) -> S {
        self.0
    }

    /// 1 - 2s, the kernel exponent of the negative-order operator in 1D.
    #[inline]
    pub fn sigma(self) -> S {
        S::ONE - S::TWO * self.0
    }

    /// 3 - 2s, the exponent of the double antiderivative ψ.
    #[inline]
    pub fn beta(self) -> S {
        S::from_real(3.0) - S::TWO * self.0
    }
}

/// Uniform mesh on [-L, L] with N cells, h = 2L/N, nodes x_i = -L + i·h.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Grid1D<S: Scalar> {
    l: S,
    n: usize,
    h: S,
}

impl<S: Scalar> Grid1D<S> {
    pub fn new(l: S, n: usize) -> Result<Self> {
        if !(l > S::ZERO) {
            return Err(CoreError::InvalidHalfWidth(l.to_real()));
        }
        if n < 4 {
            return Err(CoreError::GridTooCoarse(n));
        }
        let h = S::TWO * l / S::from_real(n as f64);
        debug_assert!(
            (h * S::from_real(n as f64) - S::TWO * l).abs()
                <= S::from_real(1e-14) * S::TWO * l
        );
        Ok(Grid1D { l, n, h })
    }

    #[inline]
    pub fn half_width(&self) -> S {
        self.l
    }
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn h(&self) -> S {
        self.h
    }
    /// Number of interior nodes (unknowns), N - 1.
    #[inline]
    pub fn interior_len(&self) -> usize {
        self.n - 1
    }
    /// Node x_i for i = 0..=N (frame nodes included).
    #[inline]
    pub fn node(&self, i: usize) -> S {
        -self.l + S::from_real(i as f64) * self.h
    }
    pub fn nodes(&self) -> Vec<S> {
        (0..=self.n).map(|i| self.node(i)).collect()
    }
    pub fn interior_nodes(&self) -> Vec<S> {
        (1..self.n).map(|i| self.node(i)).collect()
    }
}

/// Uniform tensor mesh on [-L, L]^2, square cells of side h = 2L/N.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Grid2D<S: Scalar> {
    axis: Grid1D<S>,
}

impl<S: Scalar> Grid2D<S> {
    pub fn new(l: S, n: usize) -> Result<Self> {
        Ok(Grid2D {
            axis: Grid1D::new(l, n)?,
        })
    }

    #[inline]
    pub fn half_width(&self) -> S {
        self.axis.l
    }
    #[inline]
    pub fn n(&self) -> usize {
        self.axis.n
    }
    #[inline]
    pub fn h(&self) -> S {
        self.axis.h
    }
    /// Interior nodes per axis, N - 1.
    #[inline]
    pub fn interior_len(&self) -> usize {
        self.axis.n - 1
    }
    #[inline]
    pub fn node(&self, i: usize) -> S {
        self.axis.node(i)
    }
    #[inline]
    pub fn axis(&self) -> &Grid1D<S> {
        &self.axis
    }
    pub fn interior_nodes(&self) -> Vec<S> {
        self.axis.interior_nodes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_half() {
        assert!(FracOrder::new(0.5f64).is_err());
        assert!(FracOrder::new(0.0f64).is_err());
        assert!(FracOrder::new(1.0f64).is_err());
        assert!(FracOrder::new(-0.3f64).is_err());
        assert!(FracOrder::new(f64::NAN).is_err());
        assert!(FracOrder::new(0.49999f64).is_ok());
    }

    #[test]
    fn grid_spacing_consistent() {
        let g = Grid1D::new(1.0f64, 128).unwrap();
        assert!((g.h() * 128.0 - 2.0).abs() < 1e-14);
        assert_eq!(g.node(0), -1.0);
        assert_eq!(g.node(128), 1.0);
        assert_eq!(g.interior_nodes().len(), 127);
        assert!(Grid1D::new(1.0f64, 3).is_err());
        assert!(Grid1D::new(0.0f64, 16).is_err());
    }
}
