//! Two-dimensional weights.
//!
//! ω̄_{p,q} = c_{2,s-1} ∫∫_{[-h,h]²} |(ph+ξ, qh+η)|^{-2s} φ̄₂(ξ,η) dξ dη.
//!
//! The patch is split into its four quadrants. On a quadrant whose corner
//! carries the kernel singularity (possible only for |p|,|q| ≤ 1) the
//! bilinear hat is exactly a₀ + a_u·u + a_v·v + a_uv·uv in corner-local
//! coordinates, so the integral reduces to the three master moments of
//! (u²+v²)^{-s} over [0,h]² — no grading needed. Remaining quadrants are
//! analytic at distance ≥ h from the singularity and a fixed tensor Gauss
//! rule converges geometrically.

use super::splitting_constant;
use crate::error::Result;
use crate::grid::{FracOrder, Grid2D};
use crate::quadrature::{GaussRule, MasterMoments, QuadratureConfig};
use crate::scalar::Scalar;
use rayon::prelude::*;
use serde::Serialize;

/// Per-s quadrature context reused across all patches.
pub(crate) struct PatchEvaluator<S: Scalar> {
    s: S,
    pub(crate) moments: MasterMoments<S>,
    nodes: Vec<S>,
    weights: Vec<S>,
}

impl<S: Scalar> PatchEvaluator<S> {
    pub(crate) fn new(s: FracOrder<S>, quad: &QuadratureConfig) -> Result<Self> {
        let rule = GaussRule::<S>::new(quad.gauss_order);
        Ok(PatchEvaluator {
            s: s.value(),
            moments: MasterMoments::new(s.value(), quad.tol)?,
            nodes: rule.nodes,
            weights: rule.weights,
        })
    }

    /// ∫∫ over one quadrant (signs sx, sy ∈ {-1,+1}) of the patch centered
    /// at lattice offset (dx, dy), kernel |((dx)h+ξ, (dy)h+η)|^{-2s| times
    /// the hat. Without the c_{2,s-1} factor.
    pub(crate) fn quadrant(&self, dx: i64, dy: i64, sx: i64, sy: i64, h: S) -> S {
        let s = self.s;
        // corner-local coordinate of the singularity along each axis,
        // if it lies on this quadrant
        let ustar = if dx == 0 {
            Some(S::ZERO)
        } else if dx * sx == -1 {
            Some(h)
        } else {
            None
        };
        let vstar = if dy == 0 {
            Some(S::ZERO)
        } else if dy * sy == -1 {
            Some(h)
        } else {
            None
        };
        if let (Some(uc), Some(vc)) = (ustar, vstar) {
            // hat factor is exactly linear in the distance coordinate:
            // corner at 0 gives (1 - a/h), corner at h gives a/h
            let (au, bu) = if uc == S::ZERO {
                (S::ONE, -S::ONE / h)
            } else {
                (S::ZERO, S::ONE / h)
            };
            let (av, bv) = if vc == S::ZERO {
                (S::ONE, -S::ONE / h)
            } else {
                (S::ZERO, S::ONE / h)
            };
            let m = &self.moments;
            let two_s = S::TWO * s;
            let j00 = h.powf(S::TWO - two_s) * m.i00;
            let j10 = h.powf(S::from_real(3.0) - two_s) * m.i10;
            let j11 = h.powf(S::from_real(4.0) - two_s) * m.i11;
            return au * av * j00 + (bu * av + au * bv) * j10 + bu * bv * j11;
        }
        // smooth quadrant: tensor Gauss on (u,v) ∈ [0,h]²
        let half = h / S::TWO;
        let xo = S::from_real((dx * sx) as f64) * h; // kernel offset along u
        let yo = S::from_real((dy * sy) as f64) * h;
        let mut acc = S::ZERO;
        for (i, &xi) in self.nodes.iter().enumerate() {
            let u = half + half * xi;
            let hat_u = S::ONE - u / h;
            let ku = xo + u;
            let mut row = S::ZERO;
            for (j, &xj) in self.nodes.iter().enumerate() {
                let v = half + half * xj;
                let hat_v = S::ONE - v / h;
                let kv = yo + v;
                let kernel = (ku * ku + kv * kv).powf(-s);
                row += self.weights[j] * hat_v * kernel;
            }
            acc += self.weights[i] * hat_u * row;
        }
        acc * half * half
    }

    /// Full-patch integral (all four quadrants), without c_{2,s-1}.
    pub(crate) fn patch(&self, dx: i64, dy: i64, h: S) -> S {
        let mut acc = S::ZERO;
        for sx in [-1i64, 1] {
            for sy in [-1i64, 1] {
                acc += self.quadrant(dx, dy, sx, sy, h);
            }
        }
        acc
    }
}

/// ω̄_{p,q} for p, q ≥ 0.
pub fn omega_bar_2d<S: Scalar>(
    p: u64,
    q: u64,
    h: S,
    s: FracOrder<S>,
    quad: &QuadratureConfig,
) -> Result<S> {
    assert!(h > S::ZERO);
    let ev = PatchEvaluator::new(s, quad)?;
    let c = splitting_constant(2, s.value() - S::ONE)?;
    Ok(c * ev.patch(p as i64, q as i64, h))
}

/// Stencil weights of the 2D discrete operator.
///
/// Quadrant storage: `omega_bar[p][q]` for 0 ≤ p,q ≤ N (radially symmetric,
/// ω̄_{p,q} = ω̄_{|p|,|q|} = ω̄_{q,p}); `w[p][q]` holds the corrected w^M for
/// 0 ≤ p,q ≤ N-1, of which offsets ≤ N-2 form the BTTB symbol.
///
/// The central correction adds γ = c00·c_{2,s-1}·h^{2-2s} to ω̄₀₀ before the
/// Laplacian stencils are applied; c00 is the dimensionless knob.
#[derive(Debug, Clone, Serialize)]
pub struct WeightKernel2D<S: Scalar> {
    pub s: FracOrder<S>,
    pub h: S,
    pub theta: S,
    pub c00: S,
    pub omega_bar: Vec<Vec<S>>,
    pub w: Vec<Vec<S>>,
}

impl<S: Scalar> WeightKernel2D<S> {
    pub fn n(&self) -> usize {
        self.omega_bar.len() - 1
    }

    /// ω̄₀₀^M - ω̄₀₀ = c00 · c_{2,s-1} · h^{2-2s}.
    pub fn diagonal_shift(&self) -> S {
        let s = self.s.value();
        let c2 = splitting_constant(2, s - S::ONE).expect("validated at construction");
        self.c00 * c2 * self.h.powf(S::TWO - S::TWO * s)
    }

    /// w^M at arbitrary signed offsets, via reflection symmetry.
    #[inline]
    pub fn w_at(&self, p: i64, q: i64) -> S {
        self.w[p.unsigned_abs() as usize][q.unsigned_abs() as usize]
    }

    /// Σ_{i,j=-N+1}^{N-1} w^M_{i,j} (the full stencil sum of the row-sum theorem).
    pub fn full_row_sum(&self) -> S {
        let m = self.w.len();
        let mut acc = S::ZERO;
        for p in 0..m {
            for q in 0..m {
                let mult = S::from_real(
                    (if p == 0 { 1.0 } else { 2.0 }) * (if q == 0 { 1.0 } else { 2.0 }),
                );
                acc += mult * self.w[p][q];
            }
        }
        acc
    }
}

/// Build the 2D kernel: ω̄ by patch quadrature, the θ-combination of the
/// five-point and diagonal Laplacian stencils, and the c00 correction.
pub fn weights_2d<S: Scalar>(
    grid: &Grid2D<S>,
    s: FracOrder<S>,
    theta: S,
    c00: S,
    quad: &QuadratureConfig,
) -> Result<WeightKernel2D<S>> {
    assert!(theta >= S::ZERO && theta <= S::ONE, "theta must be in [0,1]");
    assert!(c00 >= S::ZERO, "c00 must be nonnegative");
    let n = grid.n();
    let h = grid.h();
    let ev = PatchEvaluator::new(s, quad)?;
    let c2 = splitting_constant(2, s.value() - S::ONE)?;

    // quadrant table of ω̄, exploiting p↔q symmetry
    let mut omega_bar: Vec<Vec<S>> = (0..=n)
        .into_par_iter()
        .map(|p| {
            (0..=n)
                .map(|q| {
                    if q > p {
                        S::ZERO // filled by reflection below
                    } else {
                        c2 * ev.patch(p as i64, q as i64, h)
                    }
                })
                .collect()
        })
        .collect();
    for p in 0..=n {
        for q in (p + 1)..=n {
            omega_bar[p][q] = omega_bar[q][p];
        }
    }

    let gamma = c00 * c2 * h.powf(S::TWO - S::TWO * s.value());
    let ob = |a: i64, b: i64| -> S {
        let (pa, qa) = (a.unsigned_abs() as usize, b.unsigned_abs() as usize);
        let base = omega_bar[pa][qa];
        if pa == 0 && qa == 0 {
            base + gamma
        } else {
            base
        }
    };

    let h2 = h * h;
    let four = S::from_real(4.0);
    let w: Vec<Vec<S>> = (0..n as i64)
        .into_par_iter()
        .map(|p| {
            (0..n as i64)
                .map(|q| {
                    let five_point =
                        -(ob(p - 1, q) + ob(p + 1, q) + ob(p, q - 1) + ob(p, q + 1)
                            - four * ob(p, q))
                            / h2;
                    let diagonal = -(ob(p - 1, q - 1)
                        + ob(p + 1, q - 1)
                        + ob(p - 1, q + 1)
                        + ob(p + 1, q + 1)
                        - four * ob(p, q))
                        / (S::TWO * h2);
                    theta * five_point + (S::ONE - theta) * diagonal
                })
                .collect()
        })
        .collect();

    Ok(WeightKernel2D {
        s,
        h,
        theta,
        c00,
        omega_bar,
        w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn symmetry_pq() {
        let s = FracOrder::new(0.4f64).unwrap();
        let a = omega_bar_2d(3, 4, 1.0 / 32.0, s, &cfg()).unwrap();
        let b = omega_bar_2d(4, 3, 1.0 / 32.0, s, &cfg()).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn homogeneity() {
        let s = FracOrder::new(0.8f64).unwrap();
        let h = 0.125f64;
        let at_h = omega_bar_2d(0, 0, h, s, &cfg()).unwrap();
        let at_one = omega_bar_2d(0, 0, 1.0, s, &cfg()).unwrap();
        assert_relative_eq!(at_h, h.powf(2.0 - 1.6) * at_one, max_relative = 1e-12);
        let at_h = omega_bar_2d(2, 1, h, s, &cfg()).unwrap();
        let at_one = omega_bar_2d(2, 1, 1.0, s, &cfg()).unwrap();
        assert_relative_eq!(at_h, h.powf(0.4) * at_one, max_relative = 1e-12);
    }

    #[test]
    fn five_point_identity_at_theta_one() {
        let grid = Grid2D::new(1.0f64, 8).unwrap();
        let s = FracOrder::new(0.3).unwrap();
        let k = weights_2d(&grid, s, 1.0, 0.0, &cfg()).unwrap();
        let h2 = grid.h() * grid.h();
        let ob = |a: i64, b: i64| k.omega_bar[a.unsigned_abs() as usize][b.unsigned_abs() as usize];
        for p in 0..7i64 {
            for q in 0..7i64 {
                let expect =
                    -(ob(p - 1, q) + ob(p + 1, q) + ob(p, q - 1) + ob(p, q + 1) - 4.0 * ob(p, q))
                        / h2;
                assert_relative_eq!(k.w[p as usize][q as usize], expect, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn c00_effect_on_stencil() {
        let grid = Grid2D::new(1.0f64, 8).unwrap();
        let s = FracOrder::new(0.3).unwrap();
        let theta = 0.5;
        let base = weights_2d(&grid, s, theta, 0.0, &cfg()).unwrap();
        let bumped = weights_2d(&grid, s, theta, 1.0, &cfg()).unwrap();
        let gamma = bumped.diagonal_shift();
        let h2 = grid.h() * grid.h();
        assert_relative_eq!(
            bumped.w[0][0] - base.w[0][0],
            gamma * (4.0 * theta / h2 + 4.0 * (1.0 - theta) / (2.0 * h2)),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            bumped.w[1][0] - base.w[1][0],
            -theta * gamma / h2,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            bumped.w[1][1] - base.w[1][1],
            -(1.0 - theta) * gamma / (2.0 * h2),
            max_relative = 1e-12
        );
        // entries not touching the origin are unchanged
        assert_eq!(bumped.w[2][1], base.w[2][1]);
    }

    #[test]
    fn kernel_symmetric_storage() {
        let grid = Grid2D::new(1.0f64, 8).unwrap();
        let s = FracOrder::new(0.6).unwrap();
        let k = weights_2d(&grid, s, 0.5, 1.0, &cfg()).unwrap();
        for p in 0..8 {
            for q in 0..8 {
                assert_eq!(k.omega_bar[p][q], k.omega_bar[q][p]);
                if p < 8 && q < 8 {
                    assert_relative_eq!(
                        k.w[p.min(7)][q.min(7)],
                        k.w[q.min(7)][p.min(7)],
                        max_relative = 1e-13
                    );
                }
            }
        }
    }
}
