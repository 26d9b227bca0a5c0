//! Exterior-datum contribution: the boundary vector R (inner-operator values
//! from the frame-node basis terms and the exterior integral of g) and its
//! discrete-Laplacian image G.

use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::grid::{Grid1D, Grid2D};
use crate::kernel::{splitting_constant, WeightKernel1D, WeightKernel2D};
use crate::quadrature::{
    integrate_graded, linear_kernel_moment, GaussRule, QuadratureConfig,
};
use crate::scalar::Scalar;

/// Exterior datum g in one dimension: g vanishes on Ω and outside `support`.
#[derive(Clone)]
pub struct ExteriorData1D<S: Scalar> {
    datum: Datum1D<S>,
    support: (S, S),
    /// Override for (u₀, u_N); defaults to the exterior limit of g at ∓L.
    pub boundary_values: Option<(S, S)>,
}

#[derive(Clone)]
pub enum Datum1D<S: Scalar> {
    Zero,
    /// (1 - (y/radius)²)^{p+s} on (-radius, radius) \ Ω.
    Dyda { p: S, s: S, radius: S },
    /// Linear interpolation of samples on a fine exterior mesh.
    Tabulated { positions: Vec<S>, values: Vec<S> },
    Custom(Arc<dyn Fn(S) -> S + Send + Sync>),
}

impl<S: Scalar> Datum1D<S> {
    fn eval(&self, y: S) -> S {
        match self {
            Datum1D::Zero => S::ZERO,
            Datum1D::Dyda { p, s, radius } => {
                let t = y / *radius;
                if t.abs() < S::ONE {
                    (S::ONE - t * t).powf(*p + *s)
                } else {
                    S::ZERO
                }
            }
            Datum1D::Tabulated { positions, values } => {
                interp_linear(positions, values, y)
            }
            Datum1D::Custom(f) => f(y),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Datum1D::Zero)
    }
}

fn interp_linear<S: Scalar>(xs: &[S], ys: &[S], x: S) -> S {
    if xs.is_empty() || x < xs[0] || x > xs[xs.len() - 1] {
        return S::ZERO;
    }
    let mut lo = 0usize;
    let mut hi = xs.len() - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if xs[mid] <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    ys[lo] + t * (ys[hi] - ys[lo])
}

impl<S: Scalar> ExteriorData1D<S> {
    pub fn new(datum: Datum1D<S>, support: (S, S)) -> Self {
        ExteriorData1D {
            datum,
            support,
            boundary_values: None,
        }
    }

    pub fn zero() -> Self {
        ExteriorData1D {
            datum: Datum1D::Zero,
            support: (S::ZERO, S::ZERO),
            boundary_values: None,
        }
    }

    pub fn with_boundary_values(mut self, u0: S, un: S) -> Self {
        self.boundary_values = Some((u0, un));
        self
    }

    pub fn value(&self, y: S) -> S {
        self.datum.eval(y)
    }
}

/// R over all nodes (frame included) and G = composed discrete Laplacian of R
/// over interior nodes.
#[derive(Debug, Clone)]
pub struct BoundaryVector<S: Scalar> {
    pub r: Vec<S>,
    pub g: Vec<S>,
}

impl<S: Scalar> BoundaryVector<S> {
    pub fn zero_1d(n: usize) -> Self {
        BoundaryVector {
            r: vec![S::ZERO; n + 1],
            g: vec![S::ZERO; n - 1],
        }
    }

    pub fn zero_2d(n: usize) -> Self {
        BoundaryVector {
            r: vec![S::ZERO; (n + 1) * (n + 1)],
            g: vec![S::ZERO; (n - 1) * (n - 1)],
        }
    }
}

pub use crate::kernel::WeightKernel1D as Kernel1DRef;

/// Assemble R and G in one dimension.
///
/// The two boundary half-hat terms are integrated in closed form; the g term
/// by graded panels with the leading kernel moment split off analytically
/// (the integrand g(e)·|x_i-y|^σ at the Ω-adjacent endpoint e), so that frame
/// node evaluations keep full accuracy. When the kernel carries the ω̄₀ ↦ 0
/// correction, the frame nodes receive the same diagonal replacement
/// (R₀ += (ω̄₀^M - ω̄₀)·u₀), which the composed scheme needs for consistency
/// at the first interior node.
pub fn boundary_vector_1d<S: Scalar>(
    grid: &Grid1D<S>,
    ext: &ExteriorData1D<S>,
    kernel: &WeightKernel1D<S>,
    quad: &QuadratureConfig,
) -> Result<BoundaryVector<S>> {
    let n = grid.n();
    let h = grid.h();
    let l = grid.half_width();
    let sigma = kernel.s.sigma();
    let c = splitting_constant(1, kernel.s.value() - S::ONE)?;

    let (u0, un) = ext
        .boundary_values
        .unwrap_or_else(|| (ext.value(-l), ext.value(l)));

    let zero_datum = ext.datum.is_zero();
    if zero_datum && u0 == S::ZERO && un == S::ZERO {
        return Ok(BoundaryVector::zero_1d(n));
    }

    let (sa, sb) = ext.support;
    if !zero_datum && (sa > -l || sb < l) {
        return Err(CoreError::InvalidSupport(sa.to_real()));
    }

    let rule = GaussRule::<S>::new(quad.gauss_order.max(12));
    let x0 = grid.node(0);
    let x1 = grid.node(1);
    let xm = grid.node(n - 1);
    let xn = grid.node(n);

    let mut r = vec![S::ZERO; n + 1];
    for (i, ri) in r.iter_mut().enumerate() {
        let xi = grid.node(i);
        // half hats: φ₀ = 1 - (y-x₀)/h on [x₀,x₁], φ_N = 1 - (x_N-y)/h on [x_{N-1},x_N]
        let mut acc = u0
            * linear_kernel_moment(xi, x0, x1, S::ONE + x0 / h, -S::ONE / h, sigma)
            + un * linear_kernel_moment(xi, xm, xn, S::ONE - xn / h, S::ONE / h, sigma);
        if !zero_datum {
            for (a, b, e) in [(sa, -l, -l), (l, sb, l)] {
                if b <= a {
                    continue;
                }
                let ge = ext.value(e);
                // leading term: g(e) times the exact kernel moment
                acc += ge * linear_kernel_moment(xi, a, b, S::ONE, S::ZERO, sigma);
                // remainder vanishes at e; graded panels resolve both the
                // kernel kink at e and any datum endpoint singularity at the
                // far support edge
                acc += integrate_graded(a, b, quad.grading_depth, &rule, |y: S| {
                    (ext.value(y) - ge) * (xi - y).abs().powf(sigma)
                });
            }
        }
        *ri = c * acc;
    }
    // diagonal replacement at the frame when the correction is active
    let shift = kernel.diagonal_shift();
    if shift != S::ZERO {
        r[0] += shift * u0;
        r[n] += shift * un;
    }

    let h2 = h * h;
    let g = (1..n)
        .map(|i| -(r[i - 1] - S::TWO * r[i] + r[i + 1]) / h2)
        .collect();
    Ok(BoundaryVector { r, g })
}

/// Exterior datum in two dimensions.
#[derive(Clone)]
pub struct ExteriorData2D<S: Scalar> {
    datum: Datum2D<S>,
    /// Axis-aligned support box (x_lo, x_hi, y_lo, y_hi).
    support: (S, S, S, S),
    pub frame_values: FrameValues<S>,
}

#[derive(Clone)]
pub enum Datum2D<S: Scalar> {
    Zero,
    /// Bilinear interpolation of samples on a regular lattice covering the box.
    Tabulated {
        x: Vec<S>,
        y: Vec<S>,
        /// Row-major values, len x.len()·y.len().
        values: Vec<S>,
    },
    Custom(Arc<dyn Fn(S, S) -> S + Send + Sync>),
}

#[derive(Clone)]
pub enum FrameValues<S: Scalar> {
    /// Exterior limit of g at the frame nodes.
    FromDatum,
    /// Sparse overrides (i, j, value); unlisted frame nodes get zero.
    Sparse(Vec<(usize, usize, S)>),
}

impl<S: Scalar> Datum2D<S> {
    fn eval(&self, x: S, y: S) -> S {
        match self {
            Datum2D::Zero => S::ZERO,
            Datum2D::Tabulated { x: xs, y: ys, values } => {
                if xs.len() < 2 || ys.len() < 2 {
                    return S::ZERO;
                }
                let fx = locate(xs, x);
                let fy = locate(ys, y);
                match (fx, fy) {
                    (Some((i, tx)), Some((j, ty))) => {
                        let ny = ys.len();
                        let v00 = values[i * ny + j];
                        let v10 = values[(i + 1) * ny + j];
                        let v01 = values[i * ny + j + 1];
                        let v11 = values[(i + 1) * ny + j + 1];
                        let a = v00 + tx * (v10 - v00);
                        let b = v01 + tx * (v11 - v01);
                        a + ty * (b - a)
                    }
                    _ => S::ZERO,
                }
            }
            Datum2D::Custom(f) => f(x, y),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Datum2D::Zero)
    }
}

fn locate<S: Scalar>(xs: &[S], x: S) -> Option<(usize, S)> {
    if x < xs[0] || x > xs[xs.len() - 1] {
        return None;
    }
    let mut lo = 0usize;
    let mut hi = xs.len() - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if xs[mid] <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(((lo).min(xs.len() - 2), (x - xs[lo]) / (xs[lo + 1] - xs[lo])))
}

impl<S: Scalar> ExteriorData2D<S> {
    pub fn new(datum: Datum2D<S>, support: (S, S, S, S)) -> Self {
        ExteriorData2D {
            datum,
            support,
            frame_values: FrameValues::FromDatum,
        }
    }

    pub fn zero() -> Self {
        ExteriorData2D {
            datum: Datum2D::Zero,
            support: (S::ZERO, S::ZERO, S::ZERO, S::ZERO),
            frame_values: FrameValues::FromDatum,
        }
    }

    pub fn with_frame_values(mut self, values: Vec<(usize, usize, S)>) -> Self {
        self.frame_values = FrameValues::Sparse(values);
        self
    }

    pub fn value(&self, x: S, y: S) -> S {
        self.datum.eval(x, y)
    }
}

/// Assemble R over the full (N+1)² lattice and G over the interior, with the
/// θ-combined five-point/diagonal stencil.
pub fn boundary_vector_2d<S: Scalar>(
    grid: &Grid2D<S>,
    ext: &ExteriorData2D<S>,
    kernel: &WeightKernel2D<S>,
    quad: &QuadratureConfig,
) -> Result<BoundaryVector<S>> {
    use crate::kernel::two_d::PatchEvaluator;

    let n = grid.n();
    let h = grid.h();
    let l = grid.half_width();
    let nn = n + 1;
    let s = kernel.s;
    let theta = kernel.theta;
    let c = splitting_constant(2, s.value() - S::ONE)?;

    // frame node values
    let mut frame: Vec<(usize, usize, S)> = Vec::new();
    match &ext.frame_values {
        FrameValues::Sparse(list) => {
            for &(i, j, v) in list {
                assert!(
                    i == 0 || i == n || j == 0 || j == n,
                    "frame override must sit on the frame"
                );
                if v != S::ZERO {
                    frame.push((i, j, v));
                }
            }
        }
        FrameValues::FromDatum => {
            if !ext.datum.is_zero() {
                for i in 0..=n {
                    for j in 0..=n {
                        if i == 0 || i == n || j == 0 || j == n {
                            let v = ext.value(grid.node(i), grid.node(j));
                            if v != S::ZERO {
                                frame.push((i, j, v));
                            }
                        }
                    }
                }
            }
        }
    }

    if ext.datum.is_zero() && frame.is_empty() {
        return Ok(BoundaryVector::zero_2d(n));
    }

    let ev = PatchEvaluator::new(s, quad)?;
    let mut r = vec![S::ZERO; nn * nn];

    // frame-node basis terms: hat patches restricted to Ω
    for &(p, q, v) in &frame {
        let quadrants: Vec<(i64, i64)> = [-1i64, 1]
            .iter()
            .flat_map(|&sx| [-1i64, 1].iter().map(move |&sy| (sx, sy)))
            .filter(|&(sx, sy)| {
                let x_ok = if sx == 1 { p < n } else { p > 0 };
                let y_ok = if sy == 1 { q < n } else { q > 0 };
                x_ok && y_ok
            })
            .collect();
        for i in 0..=n {
            for j in 0..=n {
                let mut acc = S::ZERO;
                for &(sx, sy) in &quadrants {
                    acc += ev.quadrant(p as i64 - i as i64, q as i64 - j as i64, sx, sy, h);
                }
                r[i * nn + j] += c * v * acc;
            }
        }
    }

    // exterior integral of g over support \ Ω: up to 8 rectangles
    if !ext.datum.is_zero() {
        let (xl, xr, yl, yr) = ext.support;
        if xl > -l || xr < l || yl > -l || yr < l {
            return Err(CoreError::InvalidSupport(xl.to_real()));
        }
        let rects = [
            (xl, -l, yl, yr),
            (l, xr, yl, yr),
            (-l, l, yl, -l),
            (-l, l, l, yr),
        ];
        let rule = GaussRule::<S>::new(quad.gauss_order.max(10));
        let depth = quad.grading_depth.min(14);
        for (ax, bx, ay, by) in rects {
            if bx <= ax || by <= ay {
                continue;
            }
            let xs = crate::quadrature::graded_panels(ax, bx, depth);
            let ys = crate::quadrature::graded_panels(ay, by, depth);
            for i in 0..=n {
                let xi = grid.node(i);
                for j in 0..=n {
                    let yj = grid.node(j);
                    let mut acc = S::ZERO;
                    for px in xs.windows(2) {
                        for py in ys.windows(2) {
                            acc += tensor_panel(&rule, px[0], px[1], py[0], py[1], |x, y| {
                                let dx = xi - x;
                                let dy = yj - y;
                                let r2 = dx * dx + dy * dy;
                                if r2 == S::ZERO {
                                    S::ZERO
                                } else {
                                    ext.value(x, y) * r2.powf(-s.value())
                                }
                            });
                        }
                    }
                    r[i * nn + j] += c * acc;
                }
            }
        }
    }

    // diagonal replacement at frame nodes (c00 correction)
    let shift = kernel.diagonal_shift();
    if shift != S::ZERO {
        for &(p, q, v) in &frame {
            r[p * nn + q] += shift * v;
        }
    }

    // G = [θ(-Δ)_{h,1} + (1-θ)(-Δ)_{h,2}] R on the interior
    let h2 = h * h;
    let four = S::from_real(4.0);
    let at = |i: usize, j: usize| r[i * nn + j];
    let mut g = vec![S::ZERO; (n - 1) * (n - 1)];
    for i in 1..n {
        for j in 1..n {
            let five = -(at(i - 1, j) + at(i + 1, j) + at(i, j - 1) + at(i, j + 1)
                - four * at(i, j))
                / h2;
            let diag = -(at(i - 1, j - 1) + at(i + 1, j - 1) + at(i - 1, j + 1)
                + at(i + 1, j + 1)
                - four * at(i, j))
                / (S::TWO * h2);
            g[(i - 1) * (n - 1) + (j - 1)] = theta * five + (S::ONE - theta) * diag;
        }
    }
    Ok(BoundaryVector { r, g })
}

fn tensor_panel<S: Scalar, F: Fn(S, S) -> S>(
    rule: &GaussRule<S>,
    ax: S,
    bx: S,
    ay: S,
    by: S,
    f: F,
) -> S {
    let hx = (bx - ax) / S::TWO;
    let mx = (ax + bx) / S::TWO;
    let hy = (by - ay) / S::TWO;
    let my = (ay + by) / S::TWO;
    let mut acc = S::ZERO;
    for (&xi, &wi) in rule.nodes.iter().zip(&rule.weights) {
        let x = mx + hx * xi;
        let mut row = S::ZERO;
        for (&xj, &wj) in rule.nodes.iter().zip(&rule.weights) {
            row += wj * f(x, my + hy * xj);
        }
        acc += wi * row;
    }
    acc * hx * hy
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::FracOrder;
    use crate::kernel::{weights_1d, weights_2d};

    #[test]
    fn zero_datum_annihilates() {
        let grid = Grid1D::new(1.0f64, 16).unwrap();
        let k = weights_1d(&grid, FracOrder::new(0.3).unwrap()).unwrap();
        let b = boundary_vector_1d(&grid, &ExteriorData1D::zero(), &k, &QuadratureConfig::default())
            .unwrap();
        assert!(b.r.iter().all(|&v| v == 0.0));
        assert!(b.g.iter().all(|&v| v == 0.0));

        let grid2 = Grid2D::new(1.0f64, 8).unwrap();
        let k2 = weights_2d(&grid2, FracOrder::new(0.3).unwrap(), 0.5, 0.0, &QuadratureConfig::default())
            .unwrap();
        let b2 = boundary_vector_2d(&grid2, &ExteriorData2D::zero(), &k2, &QuadratureConfig::default())
            .unwrap();
        assert!(b2.r.iter().all(|&v| v == 0.0));
        assert!(b2.g.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn kernel_sign_transfers_to_r() {
        // nonnegative datum: sign(R_i) = sign(c_{1,s-1})
        let grid = Grid1D::new(0.5f64, 16).unwrap();
        let quad = QuadratureConfig::default();
        for &sv in &[0.3f64, 0.7] {
            let s = FracOrder::new(sv).unwrap();
            let k = weights_1d(&grid, s).unwrap();
            let ext = ExteriorData1D::new(
                Datum1D::Dyda { p: 0.0, s: sv, radius: 1.0 },
                (-1.0, 1.0),
            );
            let b = boundary_vector_1d(&grid, &ext, &k, &quad).unwrap();
            let c = splitting_constant(1, sv - 1.0).unwrap();
            assert!(b.r.iter().all(|&v| v.signum() == c.signum()), "s = {sv}");
        }
    }
}
