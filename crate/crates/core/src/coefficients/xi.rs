//! Coefficients ä_n of (¼ + y²)Ξ(y): log-power integrals of the Euler-operator
//! images 𝔇_nΘ combined with the residue of (s/(1−s))^n ξ(s) at s = 1
//! (n ≥ 1) or of ((1−s)/s)^n ξ(s) at s = 0 (n ≤ −1).

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::QuadratureSpec;
use crate::error::{Error, Result};
use crate::quadrature::tanh_sinh;
use crate::specialfn::{binomial, factorial, theta_big, theta_d_operator, xi_derivatives};

use super::convention::{require, Family};
use super::direct::DirectIntegrator;
use super::spec::FunctionSpec;

const MAX_ORDER: i64 = 12;
/// Θ and its operator images are below 1e−80 outside [1/8, 8].
const LOG_SPAN: f64 = 2.079_441_541_679_835_8; // ln 8

fn check_order(n: i64) -> Result<()> {
    if n == 0 || n.abs() > MAX_ORDER {
        return Err(Error::Domain(format!(
            "n must satisfy 1 <= |n| <= {MAX_ORDER}, got {n}"
        )));
    }
    Ok(())
}

fn signed_pow(t: f64, k: i64) -> f64 {
    if k == 0 {
        1.0
    } else {
        t.powi(k as i32)
    }
}

/// ∫_0^{ln 8} g(t) dt by tanh-sinh.
fn integrate_log(g: impl Fn(f64) -> Result<f64>, tol: f64) -> Result<f64> {
    let failed = std::cell::Cell::new(None);
    let est = tanh_sinh(
        |t, _, _| match g(t) {
            Ok(v) => Complex64::new(v, 0.0),
            Err(e) => {
                failed.set(Some(e));
                Complex64::new(0.0, 0.0)
            }
        },
        0.0,
        LOG_SPAN,
        tol,
    )?;
    match failed.into_inner() {
        Some(e) => Err(e),
        None => Ok(est.value.re),
    }
}

/// −(1/n!) ∫_0^1 logⁿ(y) 𝔇_nΘ(y) dy, evaluated in t = −log y.
pub fn theta_log_integral(n: i64, q: &QuadratureSpec) -> Result<f64> {
    if !(1..=MAX_ORDER).contains(&n) {
        return Err(Error::Domain(format!(
            "theta_log_integral needs 1 <= n <= {MAX_ORDER}, got {n}"
        )));
    }
    // dy = e^{−t} dt, logⁿ y = (−t)ⁿ
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let v = integrate_log(
        |t| Ok(sign * signed_pow(t, n) * theta_d_operator((-t).exp(), n as usize)? * (-t).exp()),
        q.tol * 1e-2,
    )?;
    Ok(-v / factorial(n as u32))
}

/// (1/(n−1)!) ∫_1^∞ log^{n−1}(y) 𝔇_nΘ(y) dy = (1/2πi)∫_{(c>1)} (s/(1−s))ⁿ ξ(s) ds.
pub fn theta_upper_integral(n: i64, q: &QuadratureSpec) -> Result<f64> {
    check_order(n)?;
    let m = n.abs();
    let v = integrate_log(
        |t| Ok(signed_pow(t, m - 1) * theta_d_operator(t.exp(), m as usize)? * t.exp()),
        q.tol * 1e-2,
    )?;
    Ok(v / factorial((m - 1) as u32))
}

/// −(1/(n−1)!) ∫_0^1 log^{n−1}(y) Σ_j C(n,j) 𝔇_jΘ(y) dy/y
/// = (1/2πi)∫_{(c<0)} ((1−s)/s)ⁿ ξ(s) ds.
pub fn theta_lower_integral(n: i64, q: &QuadratureSpec) -> Result<f64> {
    check_order(n)?;
    let m = n.abs();
    let sign = if (m - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let v = integrate_log(
        |t| {
            let y = (-t).exp();
            let mut acc = 0.0;
            for j in 0..=m {
                acc += binomial(m, j) * theta_d_operator(y, j as usize)?;
            }
            Ok(sign * signed_pow(t, m - 1) * acc)
        },
        q.tol * 1e-2,
    )?;
    Ok(-v / factorial((m - 1) as u32))
}

/// Point at which the ξ derivatives of a residue sum are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XiPoint {
    Zero,
    One,
}

impl XiPoint {
    fn s(self) -> Complex64 {
        match self {
            XiPoint::Zero => Complex64::new(0.0, 0.0),
            XiPoint::One => Complex64::new(1.0, 0.0),
        }
    }
}

/// ((−1)ⁿ/(n−1)!) Σ_{k=0}^{n−1} C(n−1,k) n!/(k+1)! ξ^{(k)}(at). At s = 1 this
/// is the residue of (s/(1−s))ⁿ ξ(s).
pub fn xi_residue_sum(n: i64, at: XiPoint) -> Result<f64> {
    if !(1..=MAX_ORDER).contains(&n) {
        return Err(Error::Domain(format!(
            "xi_residue_sum needs 1 <= n <= {MAX_ORDER}, got {n}"
        )));
    }
    let d = xi_derivatives(at.s(), (n - 1) as usize)?;
    let nf = factorial(n as u32);
    let mut acc = 0.0;
    for k in 0..n {
        acc += binomial(n - 1, k) * nf / factorial((k + 1) as u32) * d[k as usize].re;
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * acc / factorial((n - 1) as u32))
}

/// Res_{s=0} ((1−s)/s)ⁿ ξ(s) = (1/(n−1)!) Σ_k C(n−1,k) (−1)^{n−1−k} n!/(k+1)! ξ^{(k)}(0).
pub fn xi_residue_at_zero(n: i64) -> Result<f64> {
    if !(1..=MAX_ORDER).contains(&n) {
        return Err(Error::Domain(format!(
            "xi_residue_at_zero needs 1 <= n <= {MAX_ORDER}, got {n}"
        )));
    }
    let d = xi_derivatives(XiPoint::Zero.s(), (n - 1) as usize)?;
    let nf = factorial(n as u32);
    let mut acc = 0.0;
    for k in 0..n {
        let sign = if (n - 1 - k) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(n - 1, k) * nf / factorial((k + 1) as u32) * d[k as usize].re;
    }
    Ok(acc / factorial((n - 1) as u32))
}

/// Which pair of kernel and residue the Theta route uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XiForm {
    /// −(1/|n|!)∫_0^1 log^{|n|} 𝔇_{|n|}Θ combined with
    /// [`xi_residue_sum`] at 1 (n ≥ 1) or 0 (n ≤ −1).
    Printed,
    /// [`theta_upper_integral`] with the residue at s = 1 for n ≥ 1;
    /// [`theta_lower_integral`] with [`xi_residue_at_zero`] for n ≤ −1.
    Rederived,
}

/// Form and residue signs of the Theta route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct XiConvention {
    pub form: XiForm,
    /// Sign of the residue term for n ≥ 1.
    pub positive_sign: i8,
    /// Sign of the residue term for n ≤ −1.
    pub negative_sign: i8,
}

impl XiConvention {
    /// The statement of the theorem: + residue for n ≥ 1, − for n ≤ −1.
    pub const AS_STATED: XiConvention = XiConvention {
        form: XiForm::Printed,
        positive_sign: 1,
        negative_sign: -1,
    };

    pub fn all() -> Vec<XiConvention> {
        let mut out = Vec::with_capacity(8);
        for form in [XiForm::Printed, XiForm::Rederived] {
            for positive_sign in [1, -1] {
                for negative_sign in [1, -1] {
                    out.push(XiConvention {
                        form,
                        positive_sign,
                        negative_sign,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for XiConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: i8| if s > 0 { "+" } else { "-" };
        let form = match self.form {
            XiForm::Printed => "printed",
            XiForm::Rederived => "rederived",
        };
        write!(
            f,
            "{form},{}R(n>0),{}R(n<0)",
            sign(self.positive_sign),
            sign(self.negative_sign)
        )
    }
}

/// ä_n by the Theta route under `convention`, without the calibration check.
pub fn xi_theta_formula(n: i64, convention: XiConvention, q: &QuadratureSpec) -> Result<f64> {
    check_order(n)?;
    let m = n.abs();
    let (integral, residue) = match (convention.form, n > 0) {
        (XiForm::Printed, true) => (theta_log_integral(m, q)?, xi_residue_sum(m, XiPoint::One)?),
        (XiForm::Printed, false) => (theta_log_integral(m, q)?, xi_residue_sum(m, XiPoint::Zero)?),
        (XiForm::Rederived, true) => (theta_upper_integral(m, q)?, xi_residue_sum(m, XiPoint::One)?),
        (XiForm::Rederived, false) => (theta_lower_integral(m, q)?, xi_residue_at_zero(m)?),
    };
    let sign = if n > 0 {
        convention.positive_sign
    } else {
        convention.negative_sign
    };
    Ok(integral + sign as f64 * residue)
}

/// Route for [`coeff_xi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XiMethod {
    Quadrature,
    ThetaResidue(XiConvention),
}

/// ä_n = (1/2π)∫ Ξ(y) e^{2in·arctan 2y} dy. The Theta route needs
/// 1 ≤ |n| ≤ 12 and a calibrated convention; at n = 0 it returns Θ(1).
pub fn coeff_xi(n: i64, method: XiMethod, q: &QuadratureSpec) -> Result<Complex64> {
    match method {
        XiMethod::Quadrature => Ok(DirectIntegrator::shared(&FunctionSpec::XiWeighted, q)?
            .coefficient(n)?
            .value),
        XiMethod::ThetaResidue(_) if n == 0 => Ok(Complex64::new(theta_big(1.0)?, 0.0)),
        XiMethod::ThetaResidue(convention) => {
            require(Family::Xi, &convention)?;
            Ok(Complex64::new(xi_theta_formula(n, convention, q)?, 0.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn residue_sums_at_low_order() {
        // n = 1: −ξ(1) = −½
        assert_abs_diff_eq!(xi_residue_sum(1, XiPoint::One).unwrap(), -0.5, epsilon = 1e-12);
        // n = 2: 2ξ(1) + ξ'(1)
        let d = xi_derivatives(Complex64::new(1.0, 0.0), 1).unwrap();
        assert_abs_diff_eq!(
            xi_residue_sum(2, XiPoint::One).unwrap(),
            2.0 * d[0].re + d[1].re,
            epsilon = 1e-12
        );
        // the residue at 0 mirrors the one at 1
        for n in 1..=6 {
            assert_abs_diff_eq!(
                xi_residue_at_zero(n).unwrap(),
                -xi_residue_sum(n, XiPoint::One).unwrap(),
                epsilon = 1e-10
            );
        }
        assert!(xi_residue_sum(0, XiPoint::One).is_err());
    }

    #[test]
    fn upper_and_lower_integrals_mirror() {
        let q = QuadratureSpec::default();
        for n in 1..=5 {
            let a = theta_upper_integral(n, &q).unwrap();
            let b = theta_lower_integral(n, &q).unwrap();
            assert!((a - b).abs() < 1e-11 * a.abs().max(1.0), "n={n}: {a} vs {b}");
        }
    }
}
