//! The M-matrix-type solvability conditions: positive diagonal weight,
//! strictly negative off-diagonal weights, positive minimum row sum.

use super::{WeightKernel1D, WeightKernel2D};
use crate::scalar::Scalar;
use serde::Serialize;

const MAX_OFFENDERS: usize = 64;

/// Outcome of the sign / row-sum checks for a stencil.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub sign_ok: bool,
    pub row_sum_min: f64,
    pub row_sum_positive: bool,
    /// Offsets violating the sign pattern (at most 64 recorded).
    pub offending_indices: Vec<Vec<i64>>,
    pub offender_count: usize,
}

impl ConditionReport {
    pub fn feasible(&self) -> bool {
        self.sign_ok && self.row_sum_positive
    }
}

/// Check the corrected 1D weights: w₀ > 0, w_k < 0 for 1 ≤ k ≤ N-2, and
/// min over rows of the Toeplitz matrix B₁ of the row sums, via prefix sums.
pub fn verify_conditions_1d<S: Scalar>(kernel: &WeightKernel1D<S>) -> ConditionReport {
    let n = kernel.n();
    let w = kernel.symbol(); // offsets 0..=N-2
    let mut offenders = Vec::new();
    let mut count = 0usize;
    if !(w[0] > S::ZERO) {
        offenders.push(vec![0i64]);
        count += 1;
    }
    for (k, &v) in w.iter().enumerate().skip(1) {
        if !(v < S::ZERO) {
            count += 1;
            if offenders.len() < MAX_OFFENDERS {
                offenders.push(vec![k as i64]);
            }
        }
    }
    // prefix[m] = Σ_{k=0..=m} w_k; row i (1..=N-1) sums offsets
    // -(N-1-i)..=(i-1): prefix[i-1] + prefix[N-1-i] - w0
    let mut prefix = vec![S::ZERO; w.len()];
    let mut acc = S::ZERO;
    for (k, &v) in w.iter().enumerate() {
        acc += v;
        prefix[k] = acc;
    }
    let mut row_min = S::infinity();
    for i in 1..n {
        let row = prefix[i - 1] + prefix[n - 1 - i] - w[0];
        if row < row_min {
            row_min = row;
        }
    }
    ConditionReport {
        sign_ok: count == 0,
        row_sum_min: row_min.to_real(),
        row_sum_positive: row_min > S::ZERO,
        offending_indices: offenders,
        offender_count: count,
    }
}

/// Check the corrected 2D weights over the full stencil support
/// |p|,|q| ≤ N-2: w₀₀ > 0, every other entry strictly negative, and the
/// minimum over (p,q) of Σ_{i,j=1}^{N-1} w_{|p-i|,|q-j|} via 2D prefix sums.
pub fn verify_conditions_2d<S: Scalar>(kernel: &WeightKernel2D<S>) -> ConditionReport {
    let n = kernel.n();
    let m = n - 1; // offsets 0..=N-2
    let w = &kernel.w;
    let mut offenders = Vec::new();
    let mut count = 0usize;
    if !(w[0][0] > S::ZERO) {
        offenders.push(vec![0i64, 0]);
        count += 1;
    }
    for p in 0..m {
        for q in 0..m {
            if p == 0 && q == 0 {
                continue;
            }
            if !(w[p][q] < S::ZERO) {
                count += 1;
                if offenders.len() < MAX_OFFENDERS {
                    offenders.push(vec![p as i64, q as i64]);
                }
            }
        }
    }

    // quadrant-inclusive prefixes over offsets 0..=N-2
    // q2[a][b] = Σ_{α<=a, β<=b} w_{α,β}
    let mut q2 = vec![vec![S::ZERO; m]; m];
    for a in 0..m {
        let mut rowacc = S::ZERO;
        for b in 0..m {
            rowacc += w[a][b];
            q2[a][b] = rowacc + if a > 0 { q2[a - 1][b] } else { S::ZERO };
        }
    }
    // axis prefixes along the zero lines
    let mut v0 = vec![S::ZERO; m]; // Σ_{α<=A} w_{α,0}
    let mut r0 = vec![S::ZERO; m]; // Σ_{β<=B} w_{0,β}
    let mut acc = S::ZERO;
    for a in 0..m {
        acc += w[a][0];
        v0[a] = acc;
    }
    acc = S::ZERO;
    for b in 0..m {
        acc += w[0][b];
        r0[b] = acc;
    }

    let mut row_min = S::infinity();
    for p in 1..n {
        let a1 = p - 1;
        let a2 = n - 1 - p;
        for q in 1..n {
            let b1 = q - 1;
            let b2 = n - 1 - q;
            let sum = q2[a1][b1] + q2[a1][b2] + q2[a2][b1] + q2[a2][b2]
                - v0[a1]
                - v0[a2]
                - r0[b1]
                - r0[b2]
                + w[0][0];
            if sum < row_min {
                row_min = sum;
            }
        }
    }
    ConditionReport {
        sign_ok: count == 0,
        row_sum_min: row_min.to_real(),
        row_sum_positive: row_min > S::ZERO,
        offending_indices: offenders,
        offender_count: count,
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
    fn sign_ok_large_s() {
        let k = weights_1d(&Grid1D::new(1.0f64, 128).unwrap(), FracOrder::new(0.7).unwrap())
            .unwrap();
        let rep = verify_conditions_1d(&k);
        assert!(rep.sign_ok);
        assert!(rep.row_sum_min > 0.0);
        assert!(rep.row_sum_positive);
    }

    #[test]
    fn corrected_small_s_feasible() {
        let k = weights_1d(&Grid1D::new(1.0f64, 64).unwrap(), FracOrder::new(0.2).unwrap())
            .unwrap();
        assert!(k.modified);
        let rep = verify_conditions_1d(&k);
        assert!(rep.sign_ok);
        assert!(rep.row_sum_positive);
    }

    #[test]
    fn constructed_counterexample() {
        // all w_k = 0 except w₀ = 1: strict negativity fails at every k ≥ 1
        let n = 16usize;
        let mut k = weights_1d(&Grid1D::new(1.0f64, n).unwrap(), FracOrder::new(0.7).unwrap())
            .unwrap();
        for v in k.w.iter_mut() {
            *v = 0.0;
        }
        k.w[0] = 1.0;
        let rep = verify_conditions_1d(&k);
        assert!(!rep.sign_ok);
        assert_eq!(rep.offender_count, n - 2);
        let expected: Vec<Vec<i64>> = (1..=(n as i64 - 2)).map(|k| vec![k]).collect();
        assert_eq!(rep.offending_indices, expected);
    }

    #[test]
    fn row_sums_match_brute_force_2d() {
        let n = 8usize;
        let grid = Grid2D::new(1.0f64, n).unwrap();
        let k = weights_2d(
            &grid,
            FracOrder::new(0.6).unwrap(),
            0.5,
            1.0,
            &QuadratureConfig::default(),
        )
        .unwrap();
        let rep = verify_conditions_2d(&k);
        let mut brute = f64::INFINITY;
        for p in 1..n as i64 {
            for q in 1..n as i64 {
                let mut sum = 0.0;
                for i in 1..n as i64 {
                    for j in 1..n as i64 {
                        sum += k.w_at(p - i, q - j);
                    }
                }
                brute = brute.min(sum);
            }
        }
        assert_relative_eq!(rep.row_sum_min, brute, max_relative = 1e-13);
    }

    #[test]
    fn feasibility_examples() {
        let q = QuadratureConfig::default();
        // (s=0.25, θ=0.5, c00=1): feasible
        let k = weights_2d(
            &Grid2D::new(1.0f64, 32).unwrap(),
            FracOrder::new(0.25).unwrap(),
            0.5,
            1.0,
            &q,
        )
        .unwrap();
        assert!(verify_conditions_2d(&k).feasible());
        // (s=0.8, θ=1, c00=0): report generated; value recorded
        let k = weights_2d(
            &Grid2D::new(1.0f64, 32).unwrap(),
            FracOrder::new(0.8).unwrap(),
            1.0,
            0.0,
            &q,
        )
        .unwrap();
        let rep = verify_conditions_2d(&k);
        assert!(rep.row_sum_min.is_finite());
    }
}
