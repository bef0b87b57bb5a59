//! Complex log-gamma by upward recurrence and the Stirling series.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// B_{2k} for k = 1..=10.
const BERNOULLI_2K: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Real part at which the Stirling series is applied.
const STIRLING_SHIFT: f64 = 16.0;

/// True when `z` is 0, -1, -2, ...
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn stirling(z: Complex64) -> Complex64 {
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let mut sum = (z - 0.5) * z.ln() - z + half_ln_2pi;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        sum += pow * (b / (two_k * (two_k - 1.0)));
        pow *= inv2;
    }
    sum
}

/// Principal branch of log Γ(z).
///
/// The branch is the analytic continuation from the positive real axis with
/// a cut along the negative real axis, so `exp(log_gamma(z)) == Γ(z)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("log_gamma argument".into()));
    }
    if z.im < 0.0 {
        return log_gamma(z.conj()).map(|w| w.conj());
    }
    let mut shifted = z;
    let mut correction = Complex64::new(0.0, 0.0);
    while shifted.re < STIRLING_SHIFT {
        correction += shifted.ln();
        shifted += 1.0;
    }
    Ok(stirling(shifted) - correction)
}

/// Γ(z) for complex `z`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re > 0.0 && z.re < 171.0 && z.re == z.re.round() {
        // exact factorials for small positive integers
        let n = z.re as u32;
        let mut f = 1.0f64;
        for k in 2..n {
            f *= k as f64;
        }
        return Ok(Complex64::new(f, 0.0));
    }
    log_gamma(z).map(|l| l.exp())
}

/// 1/Γ(z), defined as zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Complex64 {
    match gamma(z) {
        Ok(g) => g.inv(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// Real factorial as f64.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Binomial coefficient C(n, k) as f64 (zero outside 0 <= k <= n).
pub fn binomial(n: i64, k: i64) -> f64 {
    if k < 0 || n < 0 || k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0f64;
    for j in 0..k {
        c = c * (n - j) as f64 / (j + 1) as f64;
    }
    c.round()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_gamma_examples() {
        assert_abs_diff_eq!(log_gamma(c(1.0, 0.0)).unwrap().norm(), 0.0, epsilon = 1e-15);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(half.re, PI.sqrt().ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(half.im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(log_gamma(c(4.0, 0.0)).unwrap().re, 6f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn poles_are_reported() {
        for n in 0..5 {
            assert!(matches!(log_gamma(c(-(n as f64), 0.0)), Err(Error::Pole(_))));
        }
        assert_eq!(rgamma(c(-3.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn reflection_identity() {
        // Γ(z)Γ(1-z) = π / sin(πz)
        for &z in &[c(0.3, 0.7), c(-2.4, 1.1), c(3.7, -5.0), c(-0.5, 0.0)] {
            let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
            let rhs = PI / (z * PI).sin();
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm(), "{z}");
        }
    }

    #[test]
    fn recurrence_and_conjugation() {
        let z = c(0.25, 14.0);
        let a = gamma(z + 1.0).unwrap();
        let b = z * gamma(z).unwrap();
        assert!((a - b).norm() < 1e-13 * a.norm());
        let g = gamma(z).unwrap();
        assert_eq!(gamma(z.conj()).unwrap(), g.conj());
    }

    #[test]
    fn principal_branch_is_continuous_across_recurrence() {
        // log Γ(z+1) - log Γ(z) = log z on the principal branch
        let z = c(-7.3, 2.0);
        let d = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap();
        assert!((d - z.ln()).norm() < 1e-12);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(5, 6), 0.0);
        assert_eq!(binomial(0, 0), 1.0);
        assert_eq!(factorial(5), 120.0);
    }
}
