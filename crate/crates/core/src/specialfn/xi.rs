//! The completed zeta function ξ(s) = ½ s(s−1) π^{−s/2} Γ(s/2) ζ(s) and Ξ.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::cauchy::RefinedTaylor;
use super::gamma::log_gamma;
use super::PrecisionProfile;
use crate::error::{Error, Result};

/// Cauchy-circle radius for derivatives of the entire function ξ.
const XI_RADIUS: f64 = 1.0;
const XI_MAX_ORDER: usize = 12;

/// ξ(s); entire, with ξ(0) = ξ(1) = ½.
pub fn xi(s: Complex64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::NonFinite("xi argument".into()));
    }
    // evaluate on the half-plane Re(s) >= 1/2, where Γ(s/2) has no poles
    let s = if s.re < 0.5 { 1.0 - s } else { s };
    let profile = PrecisionProfile::active();
    let log_part = log_gamma(s / 2.0)? - s / 2.0 * PI.ln();
    Ok(log_part.exp() * s * 0.5 * profile.zeta_times_sm1(s)?)
}

/// Ξ(y) = ξ(½ + iy), real for real y.
pub fn big_xi(y: f64) -> Result<f64> {
    Ok(xi(Complex64::new(0.5, y))?.re)
}

/// ξ^{(k)}(s0) for k = 0..=K.
pub fn xi_derivatives(s0: Complex64, k_max: usize) -> Result<Vec<Complex64>> {
    if k_max > XI_MAX_ORDER {
        return Err(Error::Domain(format!(
            "xi derivatives limited to order {XI_MAX_ORDER}, got {k_max}"
        )));
    }
    let t = RefinedTaylor::compute(xi, s0, XI_RADIUS, 64, k_max, 1e-12)?;
    Ok((0..=k_max).map(|k| t.derivative(k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn special_points() {
        assert_abs_diff_eq!(xi(c(0.0, 0.0)).unwrap().re, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(xi(c(1.0, 0.0)).unwrap().re, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(xi(c(0.5, 0.0)).unwrap().re, 0.497_120_778_188_314_1, epsilon = 1e-14);
        // ξ(2) = π/6
        assert_abs_diff_eq!(xi(c(2.0, 0.0)).unwrap().re, PI / 6.0, epsilon = 1e-14);
    }

    #[test]
    fn functional_equation_and_conjugation() {
        for &(re, im) in &[(0.3, 4.0), (-1.5, 2.0), (2.5, -7.0), (0.9, 30.0)] {
            let s = c(re, im);
            let a = xi(s).unwrap();
            let b = xi(1.0 - s).unwrap();
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
            assert!((xi(s.conj()).unwrap() - a.conj()).norm() <= 1e-12 * a.norm());
        }
    }

    #[test]
    fn big_xi_vanishes_at_first_zero() {
        assert!(big_xi(14.134_725_141_734_693).unwrap().abs() < 1e-14);
        assert!(big_xi(14.0).unwrap() * big_xi(14.2).unwrap() < 0.0);
    }

    #[test]
    fn derivatives_symmetry() {
        let half = xi_derivatives(c(0.5, 0.0), 8).unwrap();
        for k in (1..=8).step_by(2) {
            assert!(half[k].norm() < 1e-10, "k={k}");
        }
        let d0 = xi_derivatives(c(0.0, 0.0), 6).unwrap();
        let d1 = xi_derivatives(c(1.0, 0.0), 6).unwrap();
        for k in 0..=6 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((d0[k] - d1[k] * sign).norm() < 1e-10, "k={k}");
        }
        assert_abs_diff_eq!(d1[0].re, 0.5, epsilon = 1e-13);
        assert!(xi_derivatives(c(1.0, 0.0), 13).is_err());
    }
}
