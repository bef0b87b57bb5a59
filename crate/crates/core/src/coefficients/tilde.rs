//! Coefficients of ζ(σ + ix)·cos^v: the Whittaker series (n ≥ 1) and the
//! closed form for n < 0.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::exp_sinh;
use crate::specialfn::{gamma, is_nonpositive_integer, rgamma, whittaker_w, zeta};

use super::convention::{require, Family};
use super::spec::WeightVariant;

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.5 && sigma < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("sigma must lie in (1/2, 1), got {sigma}")))
    }
}

/// 2Γ(v+2) / (Γ(v/2+n+1) Γ(v/2−n+1)), the k = 1 term; reciprocal Γ is zero
/// at its poles.
pub fn tilde_first_term(v: Complex64, n: i64) -> Result<Complex64> {
    let half = v / 2.0;
    Ok(gamma(v + 2.0)? * 2.0 * rgamma(half + n as f64 + 1.0) * rgamma(half - n as f64 + 1.0))
}

/// Re-derived k = 1 term (2/π)∫_0^{π/2} cos^v φ cos 2nφ dφ
/// = Γ(v+1) / (2^v Γ(v/2+n+1) Γ(v/2−n+1)).
pub fn tilde_first_term_rederived(v: Complex64, n: i64) -> Result<Complex64> {
    let half = v / 2.0;
    Ok(gamma(v + 1.0)? / Complex64::new(2.0, 0.0).powc(v)
        * rgamma(half + n as f64 + 1.0)
        * rgamma(half - n as f64 + 1.0))
}

/// G(x) = x^{−σ} (log x / 2)^{v/2} W_{n,−(v+1)/2}(log x), the k-dependence
/// shared by both forms of the series.
struct Summand {
    sigma: f64,
    v: Complex64,
    n: i64,
}

impl Summand {
    /// G at x = e^z.
    fn at_log(&self, z: f64) -> Result<Complex64> {
        let kappa = Complex64::new(self.n as f64, 0.0);
        let mu = -(self.v + 1.0) / 2.0;
        let w = whittaker_w(kappa, mu, z)?;
        Ok((-self.sigma * z).exp() * Complex64::new(z / 2.0, 0.0).powc(self.v / 2.0) * w)
    }

    fn at(&self, x: f64) -> Result<Complex64> {
        self.at_log(x.ln())
    }
}

/// Value of the Whittaker series with its error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TildeSeries {
    /// The series as printed: 2Γ(v+2)/(Γ(v/2+n+1)Γ(v/2−n+1)) +
    /// π/2^{v/2+1} Σ_{k>1} G(k) / Γ(1+v/2+n).
    pub value: Complex64,
    /// The same sum with the constants of the underlying integrals,
    /// Γ(v+1)/(2^v ΓΓ) + 2^{−v/2} Σ G(k)/Γ(1+v/2+n), less the residue
    /// [`tilde_pole_term`] of the real-line pole (half-angle weight).
    pub rederived: Complex64,
    /// Summation cutoff reached: terms 2 ≤ k < k_used are summed directly.
    pub k_used: usize,
    /// ∫_{k_used}^∞ of the printed summand: the size of the tail a plain
    /// partial sum would drop.
    pub tail_integral: f64,
    /// Bound on the error of `value` left after the Euler–Maclaurin tail
    /// correction.
    pub error_estimate: f64,
}

/// Σ_{k≥K} G(k) by Euler–Maclaurin: ∫_K^∞ G + G(K)/2 − G'(K)/12 + G'''(K)/720.
/// Returns (value, integral, size of the last correction).
fn em_tail(g: &Summand, big_k: f64, tol: f64) -> Result<(Complex64, Complex64, f64)> {
    let z0 = big_k.ln();
    // ∫_K^∞ G(x) dx = ∫_{log K}^∞ G(e^z) e^z dz
    let integral = exp_sinh(
        |t| {
            g.at_log(z0 + t)
                .map_or(Complex64::new(f64::NAN, 0.0), |v| v * (z0 + t).exp())
        },
        tol,
    )?
    .value;
    let h = big_k / 16.0;
    let s: Vec<Complex64> = (-2..=2).map(|j| g.at(big_k + j as f64 * h)).collect::<Result<_>>()?;
    let d1 = (s[3] - s[1]) / (2.0 * h);
    let d3 = (s[4] - s[3] * 2.0 + s[1] * 2.0 - s[0]) / (2.0 * h * h * h);
    let last = d3 / 720.0;
    Ok((integral + s[2] / 2.0 - d1 / 12.0 + last, integral, last.norm()))
}

/// Whittaker series for ã_n, n ≥ 1: first term plus Σ_{k>1} of the
/// Whittaker summand. The sum runs directly up to a cutoff K and the
/// remainder is added by Euler–Maclaurin; K doubles from 256 until two
/// consecutive values agree within `tol`, failing with `SlowConvergence`
/// past `k_max`.
pub fn coeff_tilde_series(sigma: f64, v: Complex64, n: i64, k_max: usize, tol: f64) -> Result<TildeSeries> {
    check_sigma(sigma)?;
    if n < 1 {
        return Err(Error::Domain(format!("the Whittaker series needs n >= 1, got {n}")));
    }
    if !(v.re > -1.0) {
        return Err(Error::Domain(format!("the Whittaker series needs Re v > -1, got {v}")));
    }
    if is_nonpositive_integer(v / 2.0 + 1.0 + n as f64) {
        return Err(Error::Domain(format!(
            "v/2 + n = {} is a negative integer",
            v / 2.0 + n as f64
        )));
    }
    let g = Summand { sigma, v, n };
    let half = v / 2.0;
    let two = Complex64::new(2.0, 0.0);
    let inv_gamma = rgamma(half + 1.0 + n as f64);
    let printed_scale = Complex64::new(PI, 0.0) / two.powc(half + 1.0) * inv_gamma;
    let rederived_scale = two.powc(-half) * inv_gamma;
    let first = tilde_first_term(v, n)?;
    let quad_tol = (tol * 1e-3).max(1e-13);
    let mut partial = Complex64::new(0.0, 0.0);
    let mut next_k = 2usize;
    let mut k = 256usize.min(k_max.max(4));
    let mut prev: Option<Complex64> = None;
    loop {
        while next_k < k {
            partial += g.at(next_k as f64)?;
            next_k += 1;
        }
        let (tail, integral, last) = em_tail(&g, k as f64, quad_tol)?;
        let sum = partial + tail;
        let value = first + printed_scale * sum;
        if let Some(p) = prev {
            let change = (value - p).norm();
            if change <= tol {
                let rederived = tilde_first_term_rederived(v, n)? + rederived_scale * sum
                    - tilde_pole_term(sigma, v, WeightVariant::HalfAngle, n)?;
                return Ok(TildeSeries {
                    value,
                    rederived,
                    k_used: k,
                    tail_integral: (printed_scale * integral).norm(),
                    error_estimate: change + printed_scale.norm() * last,
                });
            }
            if 2 * k > k_max {
                return Err(Error::SlowConvergence {
                    tail: change,
                    tol,
                    k_max,
                });
            }
        }
        prev = Some(value);
        k *= 2;
    }
}

/// ã_n for n < 0 exactly as stated:
/// (2σ² − 4σ + 5/2) / (2(σ−½)²(3/2−σ)²) · ((3/2−σ)/(σ−½))^n.
pub fn coeff_tilde_negative(sigma: f64, n: i64) -> Result<f64> {
    check_sigma(sigma)?;
    if n >= 0 {
        return Err(Error::Domain(format!("the closed form needs n < 0, got {n}")));
    }
    let d = sigma - 0.5;
    let e = 1.5 - sigma;
    let p = (2.0 * sigma * sigma - 4.0 * sigma + 2.5) / (2.0 * d * d * e * e);
    Ok(p * (e / d).powi(n as i32))
}

/// Readings of the n < 0 closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TildeConvention {
    /// Weight whose quadrature the closed form describes.
    pub variant: WeightVariant,
    /// Overall sign flipped relative to the statement.
    pub negate: bool,
    /// The residue ½ζ(σ+½) of the simple pole at s = 0 is added at n = −1
    /// instead of being carried as a constant term.
    pub pole_at_minus_one: bool,
}

impl TildeConvention {
    pub const AS_STATED: TildeConvention = TildeConvention {
        variant: WeightVariant::HalfAngle,
        negate: false,
        pole_at_minus_one: false,
    };

    pub fn all() -> Vec<TildeConvention> {
        let mut out = Vec::with_capacity(8);
        for variant in WeightVariant::ALL {
            for negate in [false, true] {
                for pole_at_minus_one in [false, true] {
                    out.push(TildeConvention {
                        variant,
                        negate,
                        pole_at_minus_one,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for TildeConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{}",
            self.variant.name(),
            if self.negate { "-" } else { "+" },
            if self.pole_at_minus_one {
                "pole-at-n=-1"
            } else {
                "pole-as-constant"
            }
        )
    }
}

/// The n < 0 closed form under a convention, without the calibration check.
pub fn tilde_negative_formula(sigma: f64, n: i64, convention: TildeConvention) -> Result<f64> {
    let mut value = coeff_tilde_negative(sigma, n)?;
    if convention.negate {
        value = -value;
    }
    if convention.pole_at_minus_one && n == -1 {
        value += 0.5 * zeta(Complex64::new(sigma + 0.5, 0.0))?.re;
    }
    Ok(value)
}

/// The n < 0 closed form under the calibrated convention.
pub fn coeff_tilde_negative_calibrated(sigma: f64, n: i64, convention: TildeConvention) -> Result<f64> {
    require(Family::TildeNegative, &convention)?;
    tilde_negative_formula(sigma, n, convention)
}

/// The real-line pole of ζ(σ + iy) at y = −i(1 − σ) lies between the
/// line Re s = 1 where the Dirichlet series converges and the real axis. Its
/// residue, w(y_p) r^n / ((σ−½)(3/2−σ)) with r = (3/2−σ)/(σ−½), separates
/// the analytically continued series from the integral over ℝ.
pub fn tilde_pole_term(sigma: f64, v: Complex64, variant: WeightVariant, n: i64) -> Result<Complex64> {
    check_sigma(sigma)?;
    let d = sigma - 0.5;
    let e = 1.5 - sigma;
    // cos(arctan 2y_p) and cos(2 arctan 2y_p) at 2y_p = −2i(1−σ)
    let base = match variant {
        WeightVariant::HalfAngle => 1.0 / (4.0 * d * e).sqrt(),
        WeightVariant::DoubleAngle => (1.0 + 4.0 * (1.0 - sigma).powi(2)) / (4.0 * d * e),
    };
    let w = Complex64::new(base, 0.0).powc(v);
    Ok(w * (e / d).powi(n as i32) / (d * e))
}
