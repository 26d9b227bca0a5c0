use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("fractional order s = {0} is outside (0,1/2)∪(1/2,1)")]
    InvalidOrder(f64),
    #[error("grid requires N >= 4, got {0}")]
    GridTooCoarse(usize),
    #[error("grid half-width must be positive, got {0}")]
    InvalidHalfWidth(f64),
    #[error("splitting constant undefined at exponent {0} (Gamma pole or zero)")]
    SplittingPole(f64),
    #[error("quadrature failed to reach tolerance {tol:e} (residual {residual:e})")]
    ToleranceNotReached { tol: f64, residual: f64 },
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("dense materialization limited to N <= {limit}, got N = {n}")]
    DenseTooLarge { n: usize, limit: usize },
    #[error("hypergeometric series did not converge (a={a}, b={b}, c={c}, z={z})")]
    SeriesDiverged { a: f64, b: f64, c: f64, z: f64 },
    #[error("{method} did not converge in {iterations} iterations (residual {residual:e})")]
    SolverStalled {
        method: &'static str,
        iterations: usize,
        residual: f64,
    },
    #[error("exterior datum support must contain the domain, got {0}")]
    InvalidSupport(f64),
}

pub type Result<T> = std::result::Result<T, CoreError>;
