//! One-dimensional weights.
//!
//! The hat-function convolution has the exact form
//! ω̄_k = c_{1,s-1} ∫_{-h}^{h} |kh - y|^{1-2s} (1 - |y|/h) dy
//!     = c_{1,s-1} h^{β-1} D₂(k, β) / ((β-1)β),        β = 3 - 2s,
//! where D₂(k,β) = (k+1)^β - 2k^β + (k-1)^β is the second central difference
//! of z ↦ |z|^β at z = k. Composing with the discrete Laplacian telescopes to
//! the fourth difference,
//! w_k = -(−Δ)_h-composed = -c_{1,s-1} h^{β-3} D₄(k, β) / ((β-1)β).
//!
//! Direct differencing loses ~k⁴ relative digits, so beyond a small k both
//! differences are evaluated by the binomial expansion
//! D₄(k,β) = Σ_{m≥4 even} C(β,m) T_m k^{β-m},  T_m = 2(2^m - 4),
//! which is exact to machine precision for all k of interest.

use super::splitting_constant;
use crate::error::Result;
use crate::grid::{FracOrder, Grid1D};
use crate::scalar::Scalar;
use serde::Serialize;

const D2_DIRECT_MAX: u64 = 16;
const D4_DIRECT_MAX: u64 = 12;

fn d2<S: Scalar>(k: u64, beta: S) -> S {
    if k <= D2_DIRECT_MAX {
        let kf = S::from_real(k as f64);
        let prev = S::from_real((k as i64 - 1).unsigned_abs() as f64);
        (kf + S::ONE).powf(beta) - S::TWO * kf.powf(beta) + prev.powf(beta)
    } else {
        // 2 Σ_{m even ≥ 2} C(β,m) k^{-m}, times k^β
        let kf = S::from_real(k as f64);
        let inv2 = (S::ONE / (kf * kf)).to_real();
        let mut sum = S::ZERO;
        let mut binom = S::ONE; // C(β, 0)
        let mut kpow = S::ONE;
        let mut m = 0u32;
        loop {
            if m >= 2 && m % 2 == 0 {
                let term = binom * kpow;
                sum += term;
                if term.abs() <= S::from_real(1e-17) * sum.abs() && m > 6 {
                    break;
                }
            }
            binom *= (beta - S::from_real(m as f64)) / S::from_real((m + 1) as f64);
            if m % 2 == 1 {
                kpow *= S::from_real(inv2);
            }
            m += 1;
            if m > 200 {
                break;
            }
        }
        S::TWO * sum * kf.powf(beta)
    }
}

fn d4<S: Scalar>(k: u64, beta: S) -> S {
    if k <= D4_DIRECT_MAX {
        let p = |j: i64| S::from_real(j.unsigned_abs() as f64).powf(beta);
        let k = k as i64;
        let four = S::from_real(4.0);
        let six = S::from_real(6.0);
        p(k + 2) - four * p(k + 1) + six * p(k) - four * p(k - 1) + p(k - 2)
    } else {
        // Σ_{m even ≥ 4} C(β,m) T_m k^{-m}, T_m = 2(2^m - 4), times k^β
        let kf = S::from_real(k as f64);
        let mut sum = S::ZERO;
        let mut binom = S::ONE;
        let mut m = 0u32;
        loop {
            if m >= 4 && m % 2 == 0 {
                let tm = S::from_real(2.0 * ((2.0f64).powi(m as i32) - 4.0));
                let term = binom * tm * kf.powf(-S::from_real(m as f64));
                sum += term;
                if term.abs() <= S::from_real(1e-17) * sum.abs() && m > 8 {
                    break;
                }
            }
            binom *= (beta - S::from_real(m as f64)) / S::from_real((m + 1) as f64);
            m += 1;
            if m > 200 {
                break;
            }
        }
        sum * kf.powf(beta)
    }
}

/// ω̄_k in closed form (exact piecewise antiderivatives of the kernel).
pub fn omega_bar_1d<S: Scalar>(k: u64, h: S, s: FracOrder<S>) -> Result<S> {
    assert!(h > S::ZERO);
    let beta = s.beta();
    let c = splitting_constant(1, s.value() - S::ONE)?;
    let denom = (beta - S::ONE) * beta;
    Ok(c * h.powf(beta - S::ONE) * d2(k, beta) / denom)
}

/// Uncorrected w_1 in the closed form
/// -c_{1,s-1} h^{-2s} (7 - 2^{5-2s} + 3^{3-2s}) / ((2s-3)(2s-2)).
pub fn w1_closed_form<S: Scalar>(h: S, s: FracOrder<S>) -> Result<S> {
    let sv = s.value();
    let c = splitting_constant(1, sv - S::ONE)?;
    let five = S::from_real(5.0);
    let three = S::from_real(3.0);
    let seven = S::from_real(7.0);
    let numer = seven - S::TWO.powf(five - S::TWO * sv) + three.powf(three - S::TWO * sv);
    let denom = (S::TWO * sv - three) * (S::TWO * sv - S::TWO);
    Ok(-c * h.powf(-S::TWO * sv) * numer / denom)
}

/// Stencil weights of the 1D discrete operator.
///
/// `omega_bar[k]` for k = 0..=N, `w[k]` (corrected w^M) and `w_raw[k]`
/// (uncorrected) for k = 0..=N-1. The operator symbol uses offsets
/// 0..=N-2; the extra entry participates in row-sum diagnostics only.
#[derive(Debug, Clone, Serialize)]
pub struct WeightKernel1D<S: Scalar> {
    pub s: FracOrder<S>,
    pub h: S,
    pub omega_bar: Vec<S>,
    pub w: Vec<S>,
    pub w_raw: Vec<S>,
    /// Whether the ω̄₀ ↦ 0 sign correction was applied (w_raw[1] ≥ 0).
    pub modified: bool,
}

impl<S: Scalar> WeightKernel1D<S> {
    pub fn n(&self) -> usize {
        self.omega_bar.len() - 1
    }

    /// First column of the (N-1)×(N-1) symmetric Toeplitz matrix B₁.
    pub fn symbol(&self) -> &[S] {
        &self.w[..self.n() - 1]
    }

    /// ω̄₀^M - ω̄₀ (the diagonal replacement; zero when unmodified).
    pub fn diagonal_shift(&self) -> S {
        if self.modified {
            -self.omega_bar[0]
        } else {
            S::ZERO
        }
    }

    /// Σ_{i=-N+1}^{N-1} w^M_i, which telescopes to 2(ω̄_{N-1} - ω̄_N)/h².
    pub fn full_row_sum(&self) -> S {
        let mut acc = self.w[0];
        for k in 1..self.w.len() {
            acc += S::TWO * self.w[k];
        }
        acc
    }

    pub fn telescoped_row_sum(&self) -> S {
        let n = self.n();
        S::TWO * (self.omega_bar[n - 1] - self.omega_bar[n]) / (self.h * self.h)
    }
}

/// Build the 1D kernel: ω̄ by closed form, w = (-Δ)_h ω̄ by the stable
/// fourth-difference route, then the sign correction of ω̄₀ when w₁ ≥ 0.
pub fn weights_1d<S: Scalar>(grid: &Grid1D<S>, s: FracOrder<S>) -> Result<WeightKernel1D<S>> {
    let n = grid.n();
    let h = grid.h();
    let beta = s.beta();
    let c = splitting_constant(1, s.value() - S::ONE)?;
    let denom = (beta - S::ONE) * beta;

    let ob_scale = c * h.powf(beta - S::ONE) / denom;
    let omega_bar: Vec<S> = (0..=n as u64).map(|k| ob_scale * d2(k, beta)).collect();

    let w_scale = -c * h.powf(beta - S::from_real(3.0)) / denom;
    let w_raw: Vec<S> = (0..n as u64).map(|k| w_scale * d4(k, beta)).collect();

    let mut w = w_raw.clone();
    let h2 = h * h;
    let modified = w_raw[1] >= S::ZERO;
    if modified {
        // ω̄₀^M = 0: only w₀ and w₁ change
        w[0] = -(S::TWO * omega_bar[1]) / h2;
        w[1] = (S::TWO * omega_bar[1] - omega_bar[2]) / h2;
    }

    Ok(WeightKernel1D {
        s,
        h,
        omega_bar,
        w,
        w_raw,
        modified,
    })
}
