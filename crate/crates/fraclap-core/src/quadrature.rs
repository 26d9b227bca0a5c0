//! Gauss-Legendre rules, the singular master moments of the 2D kernel,
//! and graded-panel quadrature for exterior data.

use crate::error::{CoreError, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Quadrature controls shared by the kernel builders and boundary assembly.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Tensor Gauss order on smooth kernel patches.
    pub gauss_order: usize,
    /// Dyadic subdivision depth of graded panel quadratures.
    pub grading_depth: usize,
    /// Convergence target for the singular master moments.
    pub tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            gauss_order: 10,
            grading_depth: 40,
            tol: 1e-12,
        }
    }
}

/// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on P_n.
#[derive(Debug, Clone)]
pub struct GaussRule<S: Scalar> {
    pub nodes: Vec<S>,
    pub weights: Vec<S>,
}

impl<S: Scalar> GaussRule<S> {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        // compute in f64, cast once
        let n = order;
        let mut nodes = vec![S::ZERO; n];
        let mut weights = vec![S::ZERO; n];
        for k in 0..(n + 1) / 2 {
            // Tricomi initial guess
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let (mut p, mut dp) = (0.0, 0.0);
            for _ in 0..100 {
                let (p0, d0) = legendre(n, x);
                p = p0;
                dp = d0;
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let _ = p;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[k] = S::from_real(-x);
            nodes[n - 1 - k] = S::from_real(x);
            weights[k] = S::from_real(w);
            weights[n - 1 - k] = S::from_real(w);
        }
        if n % 2 == 1 {
            // midpoint node of odd rules is exactly zero
            nodes[n / 2] = S::ZERO;
        }
        GaussRule { nodes, weights }
    }

    /// ∫_a^b f(x) dx.
    pub fn integrate<F: Fn(S) -> S>(&self, a: S, b: S, f: F) -> S {
        let half = (b - a) / S::TWO;
        let mid = (a + b) / S::TWO;
        let mut acc = S::ZERO;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Master moments of the singular 2D kernel over the unit square:
/// I_ab = ∫∫_{[0,1]^2} u^a v^b (u²+v²)^{-s} du dv for (a,b) ∈ {(0,0),(1,0),(1,1)}.
///
/// Reduced to smooth 1D integrals M_c = ∫_0^1 t^c (1+t²)^{-s} dt by splitting
/// the square along its diagonal and substituting v = t·u:
/// I_ab = (M_a + M_b)/(a+b+2-2s).
#[derive(Debug, Clone, Copy)]
pub struct MasterMoments<S: Scalar> {
    pub i00: S,
    pub i10: S,
    pub i11: S,
}

impl<S: Scalar> MasterMoments<S> {
    /// Evaluate for the given order; errors if doubling the rule moves the
    /// result by more than `tol` (relative).
    pub fn new(s: S, tol: f64) -> Result<Self> {
        let coarse = Self::with_order(s, 48);
        let fine = Self::with_order(s, 96);
        let residual = (coarse.i00 - fine.i00).abs().to_real() / fine.i00.abs().to_real();
        if residual > tol {
            return Err(CoreError::ToleranceNotReached { tol, residual });
        }
        Ok(fine)
    }

    fn with_order(s: S, order: usize) -> Self {
        let rule = GaussRule::<S>::new(order);
        let m0 = rule.integrate(S::ZERO, S::ONE, |t| (S::ONE + t * t).powf(-s));
        let m1 = rule.integrate(S::ZERO, S::ONE, |t| t * (S::ONE + t * t).powf(-s));
        let two_s = S::TWO * s;
        MasterMoments {
            i00: (m0 + m0) / (S::TWO - two_s),
            i10: (m0 + m1) / (S::from_real(3.0) - two_s),
            i11: (m1 + m1) / (S::from_real(4.0) - two_s),
        }
    }
}

/// Dyadic panel split of [a, b] graded toward both endpoints.
///
/// Returns panel boundaries a = t_0 < t_1 < ... < t_m = b where panel sizes
/// shrink geometrically toward `a` and `b` down to (b-a)·2^{-depth}.
pub fn graded_panels<S: Scalar>(a: S, b: S, depth: usize) -> Vec<S> {
    let len = b - a;
    let mut ts = Vec::with_capacity(2 * depth + 2);
    ts.push(a);
    for j in (1..=depth).rev() {
        ts.push(a + len * S::from_real(0.5f64.powi(j as i32 + 1)));
    }
    for j in 1..=depth {
        ts.push(b - len * S::from_real(0.5f64.powi(j as i32 + 1)));
    }
    ts.push(b);
    ts
}

/// ∫_a^b f over graded panels with a fixed Gauss rule per panel.
pub fn integrate_graded<S: Scalar, F: Fn(S) -> S>(
    a: S,
    b: S,
    depth: usize,
    rule: &GaussRule<S>,
    f: F,
) -> S {
    let ts = graded_panels(a, b, depth);
    let mut acc = S::ZERO;
    for w in ts.windows(2) {
        acc += rule.integrate(w[0], w[1], &f);
    }
    acc
}

/// Antiderivative helpers for ∫ (α + β·y)·|a - y|^σ dy with σ > -1.
///
/// With z = a - y:  A1(z) = sign(z)|z|^{σ+1}/(σ+1),  A2(z) = |z|^{σ+2}/(σ+2),
/// and the definite integral over [y0, y1] is G(a-y0) - G(a-y1) where
/// G(z) = (α + β·a)·A1(z) - β·A2(z). Exact across the z = 0 singularity.
pub fn linear_kernel_moment<S: Scalar>(a: S, y0: S, y1: S, alpha: S, beta: S, sigma: S) -> S {
    let g = |z: S| {
        let az = z.abs();
        let a1 = z.signum() * az.powf(sigma + S::ONE) / (sigma + S::ONE);
        let a2 = az.powf(sigma + S::TWO) / (sigma + S::TWO);
        (alpha + beta * a) * a1 - beta * a2
    };
    g(a - y0) - g(a - y1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_rule_exactness() {
        // order-n Gauss integrates degree 2n-1 exactly
        let rule = GaussRule::<f64>::new(10);
        let val = rule.integrate(0.0, 1.0, |x| x.powi(19));
        assert_relative_eq!(val, 0.05, max_relative = 1e-13);
        let val = rule.integrate(-1.0, 3.0, |x| 3.0 * x * x);
        assert_relative_eq!(val, 28.0, max_relative = 1e-13);
    }

    #[test]
    fn master_moments_match_polar_route() {
        // independent polar evaluation of I00 over the unit square
        for &s in &[0.2f64, 0.45, 0.8] {
            let m = MasterMoments::new(s, 1e-12).unwrap();
            let rule = GaussRule::<f64>::new(64);
            let quarter_pi = std::f64::consts::FRAC_PI_4;
            // I00 = 1/(1-s) ∫_0^{π/4} cosθ^{2s-2} dθ (two symmetric triangles)
            let polar =
                rule.integrate(0.0, quarter_pi, |t| t.cos().powf(2.0 * s - 2.0)) / (1.0 - s);
            assert_relative_eq!(m.i00, polar, max_relative = 1e-12);
        }
    }

    #[test]
    fn linear_moment_vs_graded() {
        // ∫_0^1 (2 - y)|0.25 - y|^{-0.3} dy, singular inside the range
        let sigma = -0.3;
        let exact = linear_kernel_moment(0.25, 0.0, 1.0, 2.0, -1.0, sigma);
        let rule = GaussRule::<f64>::new(16);
        let left = integrate_graded(0.0, 0.25, 40, &rule, |y: f64| {
            (2.0 - y) * (0.25 - y).abs().powf(sigma)
        });
        let right = integrate_graded(0.25, 1.0, 40, &rule, |y: f64| {
            (2.0 - y) * (0.25 - y).abs().powf(sigma)
        });
        assert_relative_eq!(exact, left + right, max_relative = 1e-10);
    }
}
