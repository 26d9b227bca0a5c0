//! Operator-splitting finite-difference discretization of the integral
//! fractional Laplacian (-Δ)^s = (-Δ)(-Δ)^{s-1}, s ∈ (0,1/2)∪(1/2,1), in one
//! and two space dimensions, with FFT-accelerated Toeplitz / BTTB solvers
//! for the inhomogeneous fractional Dirichlet problem.
//!
//! The interpolation weights ω̄ come from exact piecewise antiderivatives of
//! the kernel (1D) and quadrant quadrature with analytic singular corners
//! (2D); composing with the discrete Laplacian gives the stencil w, with the
//! sign corrections that make the system matrix an M-matrix. The matrices are
//! symmetric Toeplitz (1D) and block-Toeplitz-Toeplitz-block (2D), applied
//! in O(N log N) by circulant embedding.
//!
//! Core math is generic over the scalar type via [`Scalar`] (f32/f64);
//! concrete f64 aliases are exported at the crate root.

pub mod analytic;
pub mod boundary;
pub mod dense;
pub mod error;
pub mod grid;
pub mod kernel;
pub mod operator;
pub mod quadrature;
pub mod scalar;
pub mod solver;

pub use error::{CoreError, Result};
pub use scalar::Scalar;

/// Default working precision of the solvers and the CLI.
pub type Real = f64;

pub type FracOrder = grid::FracOrder<Real>;
pub type Grid1D = grid::Grid1D<Real>;
pub type Grid2D = grid::Grid2D<Real>;
pub type WeightKernel1D = kernel::WeightKernel1D<Real>;
pub type WeightKernel2D = kernel::WeightKernel2D<Real>;
pub type ToeplitzOperator1D = operator::ToeplitzOperator1D<Real>;
pub type BttbOperator2D = operator::BttbOperator2D<Real>;
pub type BoundaryVector = boundary::BoundaryVector<Real>;
pub type ExteriorData1D = boundary::ExteriorData1D<Real>;
pub type ExteriorData2D = boundary::ExteriorData2D<Real>;
pub type DiscreteSystem1D = solver::DiscreteSystem1D<Real>;
pub type DiscreteSystem2D = solver::DiscreteSystem2D<Real>;
pub type DriftSystem = solver::DriftSystem<Real>;
pub type SolveReport = solver::SolveReport<Real>;
pub type DydaSolution = analytic::DydaSolution<Real>;
