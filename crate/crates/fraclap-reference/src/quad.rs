//! Brute-force quadrature: fixed-level tanh-sinh rules (robust to endpoint
//! singularities) and the polar-coordinate patch integrator for the 2D
//! kernel weights.

use crate::gamma::gamma_de;

/// Tanh-sinh quadrature of ∫_a^b f. The integrand receives
/// (y, y-a, b-y) with the endpoint distances computed in transform space,
/// so integrable endpoint singularities keep full accuracy. Interior kinks
/// must be split by the caller.
pub fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(a: f64, b: f64, f: F) -> f64 {
    let half = 0.5 * (b - a);
    let h = 1.0 / 128.0;
    let t_max = 6.0;
    let n = (t_max / h) as i64;
    let pi_2 = std::f64::consts::FRAC_PI_2;
    let mut acc = 0.0;
    for k in -n..=n {
        let t = h * k as f64;
        let u = pi_2 * t.sinh();
        // 1 ± tanh(u), stable at both extremes
        let (one_plus, one_minus) = if u >= 0.0 {
            let e = (-2.0 * u).exp();
            (2.0 / (1.0 + e), 2.0 * e / (1.0 + e))
        } else {
            let e = (2.0 * u).exp();
            (2.0 * e / (1.0 + e), 2.0 / (1.0 + e))
        };
        let sech = 1.0 / u.cosh();
        let w = pi_2 * t.cosh() * sech * sech;
        if w == 0.0 {
            continue;
        }
        let da = half * one_plus;
        let db = half * one_minus;
        if da == 0.0 || db == 0.0 {
            continue;
        }
        let y = if u < 0.0 { a + da } else { b - db };
        let v = f(y, da, db);
        if v.is_finite() {
            acc += w * v;
        }
    }
    acc * half * h
}

/// Iterated tanh-sinh on a rectangle (smooth integrands).
pub fn tanh_sinh_2d<F: Fn(f64, f64) -> f64 + Copy>(
    ax: f64,
    bx: f64,
    ay: f64,
    by: f64,
    f: F,
) -> f64 {
    tanh_sinh(ax, bx, |x, _, _| tanh_sinh(ay, by, |y, _, _| f(x, y)))
}

/// Kernel normalization c_{n,s'} evaluated through the Gamma oracle.
pub fn splitting_constant_oracle(n: u8, sp: f64) -> f64 {
    let v = 2f64.powf(2.0 * sp) * sp * gamma_de(n as f64 / 2.0 + sp)
        / (std::f64::consts::PI.powf(n as f64 / 2.0) * gamma_de(1.0 - sp));
    if sp < 0.0 {
        -v
    } else {
        v
    }
}

/// ω̄_k oracle: direct quadrature of
/// c_{1,s-1} ∫_{-h}^{h} |kh - y|^{1-2s} (1-|y|/h) dy,
/// split at the hat kink y = 0 (the kernel point kh is an endpoint of the
/// resulting pieces for k ≤ 1 and lies outside them for k ≥ 2).
pub fn omega_bar_1d_oracle(k: u64, h: f64, s: f64) -> f64 {
    let sigma = 1.0 - 2.0 * s;
    let c = splitting_constant_oracle(1, s - 1.0);
    let target = k as f64 * h;
    let splits = [-h, 0.0, h];
    let mut acc = 0.0;
    for w in splits.windows(2) {
        let (p0, p1) = (w[0], w[1]);
        acc += tanh_sinh(p0, p1, |y, da, db| {
            // |target - y| from the stable endpoint distance when the
            // kernel point coincides with an endpoint of this piece
            let dist = if target == p0 {
                da
            } else if target == p1 {
                db
            } else {
                (target - y).abs()
            };
            dist.powf(sigma) * (1.0 - y.abs() / h)
        });
    }
    c * acc
}

/// ω̄_{p,q} oracle: quadrant-split double quadrature of
/// c_{2,s-1} ∫∫ |(ph+ξ, qh+η)|^{-2s} (1-|ξ|/h)(1-|η|/h) dξ dη.
/// Quadrants carrying the kernel point at a corner are integrated in polar
/// coordinates around it (radial tanh-sinh handles r^{1-2s}); the rest by
/// iterated tanh-sinh.
pub fn omega_bar_2d_oracle(p: u64, q: u64, h: f64, s: f64) -> f64 {
    let c = splitting_constant_oracle(2, s - 1.0);
    let hat = move |xi: f64, eta: f64| (1.0 - xi.abs() / h) * (1.0 - eta.abs() / h);
    let px = -(p as f64) * h; // kernel point in (ξ,η) coordinates
    let py = -(q as f64) * h;
    let mut acc = 0.0;
    for (x0, x1) in [(-h, 0.0), (0.0, h)] {
        for (y0, y1) in [(-h, 0.0), (0.0, h)] {
            let corner_x = if px == x0 {
                Some(x0)
            } else if px == x1 {
                Some(x1)
            } else {
                None
            };
            let corner_y = if py == y0 {
                Some(y0)
            } else if py == y1 {
                Some(y1)
            } else {
                None
            };
            if let (Some(cx), Some(cy)) = (corner_x, corner_y) {
                // polar around (cx, cy); the quadrant spans [0,h] in local
                // directions (dx, dy)
                let dx: f64 = if cx == x0 { 1.0 } else { -1.0 };
                let dy: f64 = if cy == y0 { 1.0 } else { -1.0 };
                let quarter = std::f64::consts::FRAC_PI_4;
                for (t0, t1, along_x) in [(0.0, quarter, true), (quarter, 2.0 * quarter, false)] {
                    acc += tanh_sinh(t0, t1, |theta, _, _| {
                        let (ct, st) = (theta.cos(), theta.sin());
                        let rmax = if along_x { h / ct } else { h / st };
                        tanh_sinh(0.0, rmax, |_, r, _| {
                            let xi = cx + dx * r * ct;
                            let eta = cy + dy * r * st;
                            r.powf(1.0 - 2.0 * s) * hat(xi, eta)
                        })
                    });
                }
            } else {
                acc += tanh_sinh_2d(x0, x1, y0, y1, |xi, eta| {
                    let ddx = p as f64 * h + xi;
                    let ddy = q as f64 * h + eta;
                    (ddx * ddx + ddy * ddy).powf(-s) * hat(xi, eta)
                });
            }
        }
    }
    c * acc
}
