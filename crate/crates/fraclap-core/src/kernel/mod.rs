//! Stencil weights of the split discrete operator (-Δ)_h (-Δ)_h^{s-1}:
//! interpolation weights ω̄, composed weights w, sign corrections, and the
//! solvability condition checks.

mod conditions;
mod one_d;
pub(crate) mod two_d;

pub use conditions::{verify_conditions_1d, verify_conditions_2d, ConditionReport};
pub use one_d::{omega_bar_1d, weights_1d, w1_closed_form, WeightKernel1D};
pub use two_d::{omega_bar_2d, weights_2d, WeightKernel2D};

use crate::error::{CoreError, Result};
use crate::scalar::Scalar;

/// Normalization constant of the integral kernels,
/// c_{n,s'} = 2^{2s'} s' Γ(n/2+s') / (π^{n/2} Γ(1-s')) for s' ∈ (0,1),
/// with a leading minus sign for the negative-order range s' < 0.
pub fn splitting_constant<S: Scalar>(n: u8, sp: S) -> Result<S> {
    assert!(n == 1 || n == 2, "dimension must be 1 or 2");
    if sp == S::ZERO {
        return Err(CoreError::SplittingPole(sp.to_real()));
    }
    let half_n = S::from_real(n as f64 / 2.0);
    let g_arg = half_n + sp;
    // Γ poles at nonpositive integers
    if g_arg <= S::ZERO && g_arg == g_arg.round() {
        return Err(CoreError::SplittingPole(sp.to_real()));
    }
    let one_minus = S::ONE - sp;
    if one_minus <= S::ZERO && one_minus == one_minus.round() {
        return Err(CoreError::SplittingPole(sp.to_real()));
    }
    let v = S::TWO.powf(S::TWO * sp) * sp * g_arg.gamma()
        / (S::PI().powf(half_n) * one_minus.gamma());
    Ok(if sp < S::ZERO { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_constant_signs() {
        // c_{1,s-1} < 0 for s < 1/2, > 0 for s > 1/2
        assert!(splitting_constant(1, 0.3f64 - 1.0).unwrap() < 0.0);
        assert!(splitting_constant(1, 0.7f64 - 1.0).unwrap() > 0.0);
        // c_{2,s-1} > 0 on both sides
        assert!(splitting_constant(2, 0.3f64 - 1.0).unwrap() > 0.0);
        assert!(splitting_constant(2, 0.7f64 - 1.0).unwrap() > 0.0);
        // Eq.(2) range is positive
        assert!(splitting_constant(1, 0.3f64).unwrap() > 0.0);
    }

    #[test]
    fn splitting_constant_poles() {
        assert!(splitting_constant(1, 0.0f64).is_err());
        assert!(splitting_constant(1, -0.5f64).is_err()); // Γ(1/2 - 1/2) pole
    }
}
