//! Analytic reference solutions: the Gauss hypergeometric function, the
//! closed-form benchmark pair u = (1-x²)^{P+s}, f = (-Δ)^s u, and the 2D
//! benchmark function.

use crate::error::{CoreError, Result};
use crate::grid::FracOrder;
use crate::scalar::Scalar;

const MAX_TERMS: usize = 1_000_000;
const SERIES_TOL: f64 = 1e-13;

fn is_nonpositive_integer<S: Scalar>(x: S) -> bool {
    x <= S::ZERO && x == x.round()
}

/// Plain power series Σ (a)_k (b)_k / ((c)_k k!) z^k, assuming it converges.
fn series<S: Scalar>(a: S, b: S, c: S, z: S) -> Result<S> {
    let mut term = S::ONE;
    let mut sum = S::ONE;
    let tol = S::from_real(SERIES_TOL);
    for k in 0..MAX_TERMS {
        let kf = S::from_real(k as f64);
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + S::ONE)) * z;
        sum += term;
        if term.abs() <= tol * (sum.abs() + S::ONE) && k > 2 {
            return Ok(sum);
        }
    }
    Err(CoreError::SeriesDiverged {
        a: a.to_real(),
        b: b.to_real(),
        c: c.to_real(),
        z: z.to_real(),
    })
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for real z ∈ [0, 1).
///
/// Terminating cases (a or b a nonpositive integer) are summed exactly;
/// otherwise the direct series is used for z ≤ 1/2 and the Euler
/// transformation (1-z)^{c-a-b} ₂F₁(c-a, c-b; c; z) for z > 1/2.
pub fn gauss_2f1<S: Scalar>(a: S, b: S, c: S, z: S) -> Result<S> {
    assert!(
        !is_nonpositive_integer(c),
        "2F1 undefined for nonpositive integer c"
    );
    assert!(z >= S::ZERO && z < S::ONE, "argument must lie in [0,1)");
    if z == S::ZERO {
        return Ok(S::ONE);
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        let (a, b) = if is_nonpositive_integer(b) { (a, b) } else { (b, a) };
        let terms = (-b.to_real()).round() as usize;
        let mut term = S::ONE;
        let mut sum = S::ONE;
        for k in 0..terms {
            let kf = S::from_real(k as f64);
            term *= (a + kf) * (b + kf) / ((c + kf) * (kf + S::ONE)) * z;
            sum += term;
        }
        return Ok(sum);
    }
    if z <= S::from_real(0.5) {
        series(a, b, c, z)
    } else {
        let pre = (S::ONE - z).powf(c - a - b);
        Ok(pre * series(c - a, c - b, c, z)?)
    }
}

/// The benchmark solution u(x) = (1 - (x/R)²)^{P+s} on (-R, R), zero outside,
/// together with its exact fractional Laplacian.
#[derive(Debug, Clone, Copy)]
pub struct DydaSolution<S: Scalar> {
    pub p: S,
    pub s: FracOrder<S>,
    pub radius: S,
}

impl<S: Scalar> DydaSolution<S> {
    pub fn new(p: S, s: FracOrder<S>, radius: S) -> Self {
        assert!(radius > S::ZERO);
        DydaSolution { p, s, radius }
    }

    pub fn unit(p: S, s: FracOrder<S>) -> Self {
        Self::new(p, s, S::ONE)
    }

    /// u(x); vanishes outside (-R, R).
    pub fn u(&self, x: S) -> S {
        let t = x / self.radius;
        if t.abs() < S::ONE {
            (S::ONE - t * t).powf(self.p + self.s.value())
        } else {
            S::ZERO
        }
    }

    /// f(x) = (-Δ)^s u(x) for |x| < R.
    pub fn f(&self, x: S) -> Result<S> {
        let s = self.s.value();
        let t = x / self.radius;
        debug_assert!(t.abs() < S::ONE);
        let scale = self.radius.powf(-S::TWO * s);
        Ok(scale * dyda_f_unit(t, self.p, self.s)?)
    }
}

/// f(x) = (-Δ)^s (1-x²)^{P+s} on the unit interval:
/// 2^{2s} Γ(1/2+s) Γ(P+1+s) / (√π Γ(P+1)) · ₂F₁(s+1/2, -P; 1/2; x²).
pub fn dyda_f_unit<S: Scalar>(x: S, p: S, s: FracOrder<S>) -> Result<S> {
    let s = s.value();
    let half = S::from_real(0.5);
    let pre = S::TWO.powf(S::TWO * s) * (half + s).gamma() * (p + S::ONE + s).gamma()
        / (S::PI().sqrt() * (p + S::ONE).gamma());
    Ok(pre * gauss_2f1(half + s, -p, half, x * x)?)
}

/// The 2D benchmark ((1-x²)(1-y²))² on Ω₂ = (-1,1)², zero outside.
pub fn benchmark_2d<S: Scalar>(x: S, y: S) -> S {
    if x.abs() < S::ONE && y.abs() < S::ONE {
        let v = (S::ONE - x * x) * (S::ONE - y * y);
        v * v
    } else {
        S::ZERO
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn f21_trivial_values() {
        assert_eq!(gauss_2f1(0.3f64, 1.7, 0.9, 0.0).unwrap(), 1.0);
        // b = 0 terminates at the constant term for every z
        for &z in &[0.1, 0.5, 0.99] {
            assert_eq!(gauss_2f1(0.8f64, 0.0, 0.5, z).unwrap(), 1.0);
        }
    }

    #[test]
    fn f21_terminating_linear() {
        // b = -1: F = 1 - (a/c) z
        let v = gauss_2f1(0.7f64, -1.0, 0.5, 0.36).unwrap();
        assert_relative_eq!(v, 1.0 - 0.7 / 0.5 * 0.36, max_relative = 1e-15);
    }

    #[test]
    fn f21_direct_vs_euler_crossover() {
        // both branches must agree around the z = 1/2 switch
        for &z in &[0.47f64, 0.4999, 0.5001, 0.55] {
            let direct = series(1.1f64, -1.8, 0.5, z).unwrap();
            let euler = (1.0 - z).powf(0.5 - 1.1 + 1.8)
                * series(0.5 - 1.1, 0.5 + 1.8, 0.5, z).unwrap();
            assert_relative_eq!(direct, euler, max_relative = 1e-11);
            let v = gauss_2f1(1.1f64, -1.8, 0.5, z).unwrap();
            assert_relative_eq!(v, direct, max_relative = 1e-11);
        }
    }

    #[test]
    fn dyda_f_symmetry_and_gamma_point() {
        let s = FracOrder::new(0.3f64).unwrap();
        // P = 1, x = 0: pure Gamma expression
        let f0 = dyda_f_unit(0.0, 1.0, s).unwrap();
        let expect = 2f64.powf(0.6) * statrs::function::gamma::gamma(0.8)
            * statrs::function::gamma::gamma(2.3)
            / (std::f64::consts::PI.sqrt() * statrs::function::gamma::gamma(2.0));
        assert_relative_eq!(f0, expect, max_relative = 1e-14);
        // even in x
        let d = DydaSolution::unit(1.7, s);
        assert_eq!(d.f(0.42).unwrap(), d.f(-0.42).unwrap());
        assert_eq!(d.u(0.42), d.u(-0.42));
    }

    #[test]
    fn benchmark_values() {
        assert_eq!(benchmark_2d(0.0f64, 0.0), 1.0);
        assert_eq!(benchmark_2d(1.0f64, 0.3), 0.0);
        assert_eq!(benchmark_2d(-1.0f64, 0.9), 0.0);
        assert_relative_eq!(benchmark_2d(0.5f64, 0.5), 0.31640625, max_relative = 1e-15);
    }

    #[test]
    fn radius_scaling() {
        // u_R(x) = u_1(x/R) ⇒ f_R(x) = R^{-2s} f_1(x/R)
        let s = FracOrder::new(0.7f64).unwrap();
        let unit = DydaSolution::unit(0.0, s);
        let scaled = DydaSolution::new(0.0, s, 2.0);
        let f_unit = unit.f(0.25).unwrap();
        let f_scaled = scaled.f(0.5).unwrap();
        assert_relative_eq!(f_scaled, 2f64.powf(-1.4) * f_unit, max_relative = 1e-13);
    }
}
