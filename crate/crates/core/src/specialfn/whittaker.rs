//! Whittaker functions M_{κ,μ} and W_{κ,μ}.
//!
//! W is evaluated as e^{−z/2} z^{μ+½} U(½+μ−κ, 1+2μ, z) with the Tricomi
//! function U from its Laplace integral (Re a > 0), the forward recurrence
//! in decreasing a otherwise, and the terminating polynomial when a is a
//! nonpositive integer. The two-term M-combination is kept as an
//! independent route.

use num_complex::Complex64;

use super::gamma::{binomial, is_nonpositive_integer, log_gamma};
use crate::error::{tolerance, Error, Result};
use crate::quadrature::exp_sinh;

const HYP_MAX_TERMS: usize = 2000;
const LIMIT_EPS: f64 = 1e-6;
const U_INTEGRAL_TOL: f64 = 1e-13;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Kummer's ₁F₁(a; b; z) by its power series.
pub fn hyp1f1(a: Complex64, b: Complex64, z: f64) -> Result<Complex64> {
    if is_nonpositive_integer(b) {
        return Err(Error::DegenerateParam(format!("1F1 with b = {b}")));
    }
    let mut term = c(1.0);
    let mut sum = c(1.0);
    let mut peak: f64 = 1.0;
    for k in 0..HYP_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / ((b + kf) * (kf + 1.0)) * z;
        sum += term;
        peak = peak.max(term.norm());
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) && kf > z.abs() {
            return Ok(sum);
        }
        if term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(tolerance("1F1 series", term.norm() / sum.norm(), 1e-17))
}

/// M_{κ,μ}(z) = e^{−z/2} z^{μ+½} ₁F₁(μ−κ+½; 1+2μ; z).
pub fn whittaker_m(kappa: Complex64, mu: Complex64, z: f64) -> Result<Complex64> {
    positive(z)?;
    let f = hyp1f1(mu - kappa + 0.5, 1.0 + 2.0 * mu, z)?;
    Ok(prefactor(mu, z) * f)
}

fn positive(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Whittaker argument must be positive, got {z}")))
    }
}

/// e^{−z/2} z^{μ+½}.
fn prefactor(mu: Complex64, z: f64) -> Complex64 {
    ((mu + 0.5) * z.ln() - z / 2.0).exp()
}

/// Nonpositive integer value of `a`, if any.
fn nonpositive_integer(a: Complex64) -> Option<u32> {
    if is_nonpositive_integer(a) {
        Some((-a.re).round() as u32)
    } else {
        None
    }
}

/// U(−m, b, z) = (−1)^m Σ_s C(m,s) (b+s)_{m−s} (−z)^s.
fn tricomi_polynomial(m: u32, b: Complex64, z: f64) -> Complex64 {
    let mut acc = c(0.0);
    for s in 0..=m {
        let mut poch = c(1.0);
        for j in 0..(m - s) {
            poch *= b + (s + j) as f64;
        }
        acc += poch * binomial(m as i64, s as i64) * (-z).powi(s as i32);
    }
    if m % 2 == 1 {
        -acc
    } else {
        acc
    }
}

/// U(a, b, z) = Γ(a)^{-1} ∫_0^∞ e^{−zt} t^{a−1} (1+t)^{b−a−1} dt, Re a > 0.
fn tricomi_integral(a: Complex64, b: Complex64, z: f64) -> Result<Complex64> {
    let e = exp_sinh(
        |t| {
            let lt = t.ln();
            let l1 = t.ln_1p();
            ((a - 1.0) * lt + (b - a - 1.0) * l1 - z * t).exp()
        },
        U_INTEGRAL_TOL,
    )?;
    Ok(e.value * (-log_gamma(a)?).exp())
}

/// Tricomi's confluent hypergeometric function U(a, b, z), z > 0.
pub fn tricomi_u(a: Complex64, b: Complex64, z: f64) -> Result<Complex64> {
    positive(z)?;
    if let Some(m) = nonpositive_integer(a) {
        return Ok(tricomi_polynomial(m, b, z));
    }
    if a.re >= 1.0 {
        return tricomi_integral(a, b, z);
    }
    // U(a−1) = (z + 2a − b) U(a) − a(a − b + 1) U(a + 1), stable as a decreases
    let shift = (1.0 - a.re).ceil() as u32;
    let top = a + shift as f64;
    let mut upper = tricomi_integral(top + 1.0, b, z)?;
    let mut cur = tricomi_integral(top, b, z)?;
    let mut ak = top;
    for _ in 0..shift {
        let next = (z + 2.0 * ak - b) * cur - ak * (ak - b + 1.0) * upper;
        upper = cur;
        cur = next;
        ak -= 1.0;
    }
    Ok(cur)
}

/// W_{κ,μ}(z) for z > 0.
pub fn whittaker_w(kappa: Complex64, mu: Complex64, z: f64) -> Result<Complex64> {
    positive(z)?;
    // W is even in μ; Re μ >= 0 keeps the U parameters in the integral's range
    let mu = if mu.re < 0.0 { -mu } else { mu };
    let u = tricomi_u(0.5 + mu - kappa, 1.0 + 2.0 * mu, z)?;
    Ok(prefactor(mu, z) * u)
}

/// |W'' + (−¼ + κ/z + (¼ − μ²)/z²) W| at z, with W'' by the five-point
/// central difference of step h.
pub fn whittaker_ode_residual(kappa: Complex64, mu: Complex64, z: f64, h: f64) -> Result<f64> {
    let w = |t: f64| whittaker_w(kappa, mu, t);
    let (m2, m1, c0, p1, p2) = (w(z - 2.0 * h)?, w(z - h)?, w(z)?, w(z + h)?, w(z + 2.0 * h)?);
    let second = (-m2 + m1 * 16.0 - c0 * 30.0 + p1 * 16.0 - p2) / (12.0 * h * h);
    let q = -0.25 + kappa / z + (0.25 - mu * mu) / (z * z);
    Ok((second + q * c0).norm())
}

fn is_half_integer_multiple(mu: Complex64) -> bool {
    let t = 2.0 * mu;
    t.im == 0.0 && t.re == t.re.round()
}

/// W from the two-term combination
/// Γ(−2μ)/Γ(½−μ−κ) M_{κ,μ} + Γ(2μ)/Γ(½+μ−κ) M_{κ,−μ}.
///
/// When 2μ is an integer the symmetric pair μ ± ε is averaged. Loses
/// relative accuracy like e^{z} through cancellation; intended for z ≲ 10.
pub fn whittaker_w_mcombination(kappa: Complex64, mu: Complex64, z: f64) -> Result<Complex64> {
    positive(z)?;
    if is_half_integer_multiple(mu) {
        let eps = Complex64::new(LIMIT_EPS, 0.0);
        let lo = combination(kappa, mu - eps, z)?;
        let hi = combination(kappa, mu + eps, z)?;
        let scale = lo.norm().max(hi.norm()).max(1e-300);
        if (lo - hi).norm() > 1e-3 * scale {
            return Err(Error::DegenerateParam(format!(
                "M-combination limit at kappa={kappa}, mu={mu} does not cancel"
            )));
        }
        return Ok((lo + hi) * 0.5);
    }
    combination(kappa, mu, z)
}

fn combination(kappa: Complex64, mu: Complex64, z: f64) -> Result<Complex64> {
    let first = gamma_ratio(-2.0 * mu, 0.5 - mu - kappa)?;
    let second = gamma_ratio(2.0 * mu, 0.5 + mu - kappa)?;
    let mut total = c(0.0);
    if first != c(0.0) {
        total += first * whittaker_m(kappa, mu, z)?;
    }
    if second != c(0.0) {
        total += second * whittaker_m(kappa, -mu, z)?;
    }
    Ok(total)
}

/// Γ(p)/Γ(q), zero when q is a pole of Γ.
fn gamma_ratio(p: Complex64, q: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(q) {
        return Ok(c(0.0));
    }
    if is_nonpositive_integer(p) {
        return Err(Error::DegenerateParam(format!("Γ({p}) in M-combination")));
    }
    let v = (log_gamma(p)? - log_gamma(q)?).exp();
    Ok(fix_real_sign(v, p, q))
}

/// log Γ on the negative real axis carries an imaginary part ±kπ; restore
/// the real sign of the ratio for real arguments.
fn fix_real_sign(v: Complex64, p: Complex64, q: Complex64) -> Complex64 {
    if p.im == 0.0 && q.im == 0.0 {
        let sign = gamma_sign(p.re) * gamma_sign(q.re);
        c(sign * v.norm())
    } else {
        v
    }
}

fn gamma_sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else {
        // Γ(x) < 0 on (−1, 0), (−3, −2), ...
        if (x.floor() as i64).rem_euclid(2) == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Truncated large-z expansion
/// W ~ e^{−z/2} z^κ Σ_k (½+μ−κ)_k (½−μ−κ)_k / (k! (−z)^k).
#[derive(Debug, Clone, Copy)]
pub struct WhittakerAsymptotic {
    pub value: Complex64,
    /// Modulus of the first omitted term relative to the leading factor.
    pub last_term: f64,
    pub terms: usize,
}

/// Asymptotic series summed up to its smallest term (at most `max_terms`).
pub fn whittaker_w_asymptotic(
    kappa: Complex64,
    mu: Complex64,
    z: f64,
    max_terms: usize,
) -> Result<WhittakerAsymptotic> {
    positive(z)?;
    let lead = (kappa * z.ln() - z / 2.0).exp();
    let a = 0.5 + mu - kappa;
    let b = 0.5 - mu - kappa;
    let mut term = c(1.0);
    let mut sum = c(1.0);
    let mut last = f64::INFINITY;
    let mut used = 1;
    for k in 0..max_terms {
        let kf = k as f64;
        let next = term * (a + kf) * (b + kf) / ((kf + 1.0) * -z);
        if next.norm() >= term.norm() && k > 0 {
            last = next.norm();
            break;
        }
        term = next;
        sum += term;
        used += 1;
        last = term.norm();
        if term.norm() == 0.0 {
            break;
        }
    }
    Ok(WhittakerAsymptotic {
        value: lead * sum,
        last_term: last,
        terms: used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn terminating_case() {
        let w = whittaker_w(c(1.0), c(0.5), 2.0).unwrap();
        assert_abs_diff_eq!(w.re, 2.0 / std::f64::consts::E, epsilon = 1e-15);
        for &(mu, z) in &[(0.25, 0.7), (1.5, 3.0), (-0.75, 12.0)] {
            let w = whittaker_w(c(mu + 0.5), c(mu), z).unwrap();
            let exact = (-z / 2.0).exp() * z.powf(mu + 0.5);
            assert!((w.re - exact).abs() < 1e-12 * exact, "mu={mu}");
        }
    }

    #[test]
    fn reference_values() {
        // W_{2,-3/4}(3) and U(-1/2, 3, 2) from an arbitrary-precision evaluation
        let w = whittaker_w(c(2.0), c(-0.75), 3.0).unwrap();
        assert_abs_diff_eq!(w.re, 0.817_916_361_290_368_3, epsilon = 1e-12);
        let u = tricomi_u(c(-0.5), c(3.0), 2.0).unwrap();
        assert_abs_diff_eq!(u.re, 0.346_162_782_763_154, epsilon = 1e-12);
    }

    #[test]
    fn large_argument_ratio() {
        let w = whittaker_w(c(3.0), c(-1.0), 40.0).unwrap();
        let ratio = w.re / ((-20.0f64).exp() * 40f64.powi(3));
        assert_abs_diff_eq!(ratio, 0.870_813_658_346_687_8, epsilon = 1e-10);
        let asy = whittaker_w_asymptotic(c(3.0), c(-1.0), 40.0, 30).unwrap();
        assert!((asy.value - w).norm() < 1e-9 * w.norm());
    }

    #[test]
    fn satisfies_whittaker_equation() {
        for k in 0..=18 {
            let z = 1.0 + 0.5 * k as f64;
            assert!(
                whittaker_ode_residual(c(2.0), c(-0.75), z, 1e-3).unwrap() < 1e-6,
                "z={z}"
            );
        }
    }

    #[test]
    fn m_combination_agrees_for_small_z() {
        for &(k, m, z) in &[(2.0, 0.3, 1.5), (0.4, 0.85, 4.0), (1.0, -1.0, 2.0), (3.0, 0.5, 0.5)] {
            let a = whittaker_w(c(k), c(m), z).unwrap();
            let b = whittaker_w_mcombination(c(k), c(m), z).unwrap();
            assert!((a - b).norm() < 1e-8 * a.norm(), "({k},{m},{z}): {a} vs {b}");
        }
    }

    #[test]
    fn complex_parameters_satisfy_conjugation() {
        let k = Complex64::new(1.5, 0.4);
        let m = Complex64::new(-0.6, 0.2);
        let a = whittaker_w(k, m, 2.5).unwrap();
        let b = whittaker_w(k.conj(), m.conj(), 2.5).unwrap();
        assert!((a - b.conj()).norm() < 1e-12 * a.norm());
    }
}
