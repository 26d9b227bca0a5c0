//! Hypergeometric series oracle in double-double arithmetic:
//! ₂F₁(a,b;c;z) = Σ (a)_k (b)_k / ((c)_k k!) z^k, summed term-recursively
//! with ~31-digit intermediates. Valid for |z| < 1 (slow near 1).

use crate::dd::Dd;

pub fn hyp2f1_dd(a: f64, b: f64, c: f64, z: f64) -> f64 {
    assert!(z.abs() < 1.0);
    let z = Dd::from(z);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 0..2_000_000u64 {
        let kf = k as f64;
        let num = Dd::from(a + kf).mul(Dd::from(b + kf));
        let den = Dd::from(c + kf).mul(Dd::from(1.0 + kf));
        term = term.mul(num).div(den).mul(z);
        sum = sum.add(term);
        if term.abs().to_f64() <= 1e-25 * (sum.abs().to_f64() + 1.0) && k > 4 {
            break;
        }
        if term.hi == 0.0 {
            break; // terminated polynomial case
        }
    }
    sum.to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_value_at_known_point() {
        // 2F1(1, 1; 2; z) = -ln(1-z)/z
        let z = 0.36;
        let expect = -(1.0f64 - z).ln() / z;
        assert!((hyp2f1_dd(1.0, 1.0, 2.0, z) - expect).abs() / expect < 1e-14);
        // terminating: 2F1(a, -1; c; z) = 1 - a z / c
        let v = hyp2f1_dd(0.7, -1.0, 0.5, 0.25);
        assert!((v - (1.0 - 0.7 * 0.25 / 0.5)).abs() < 1e-15);
    }
}
