//! Θ(y) = 2y² Σ_{n≥1} (2π²n⁴y² − 3πn²) e^{−πn²y²} and its Euler-operator
//! powers 𝔇_n = (y d/dy)^n.
//!
//! With u = πn²y² every summand of 𝔇_jΘ is Q_j(u) e^{−u}, where
//! Q_0(u) = 4u² − 6u and Q_{j+1}(u) = 2u (Q_j'(u) − Q_j(u)).
//! For y < 1 the identity Θ(1/y) = yΘ(y) moves the evaluation to 1/y.

use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::gamma::binomial;

const MAX_TERMS: usize = 200;
const REL_TRUNCATION: f64 = 1e-18;

/// Coefficients (ascending powers of u) of Q_n.
pub fn theta_operator_polynomial(n: usize) -> Vec<f64> {
    let mut q = vec![0.0, -6.0, 4.0];
    for _ in 0..n {
        let mut next = vec![0.0; q.len() + 1];
        for (p, &c) in q.iter().enumerate() {
            // 2u * (p c u^{p-1}) - 2u * c u^p
            if p > 0 {
                next[p] += 2.0 * p as f64 * c;
            }
            next[p + 1] -= 2.0 * c;
        }
        q = next;
    }
    q
}

fn horner(q: &[f64], u: f64) -> f64 {
    q.iter().rev().fold(0.0, |acc, &c| acc * u + c)
}

/// Σ_n Q(πn²y²) e^{−πn²y²} for y >= 1.
fn series(q: &[f64], y: f64) -> f64 {
    let deg = (q.len() - 1) as f64;
    let mut sum = 0.0;
    for n in 1..=MAX_TERMS {
        let u = PI * (n * n) as f64 * y * y;
        if u > 1e3 {
            // e^{−u} underflows; the polynomial alone could overflow
            break;
        }
        let term = horner(q, u) * (-u).exp();
        sum += term;
        if u > deg && term.abs() <= REL_TRUNCATION * sum.abs() {
            break;
        }
    }
    sum
}

/// Θ(y) for y > 0.
pub fn theta_big(y: f64) -> Result<f64> {
    theta_d_operator(y, 0)
}

/// (y d/dy)^n Θ(y) for y > 0.
pub fn theta_d_operator(y: f64, n: usize) -> Result<f64> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("theta needs y > 0, got {y}")));
    }
    if y >= 1.0 {
        return Ok(series(&theta_operator_polynomial(n), y));
    }
    // 𝔇_nΘ(y) = (−1)^n u Σ_j C(n,j) 𝔇_jΘ(u),  u = 1/y
    let u = 1.0 / y;
    let mut acc = 0.0;
    for j in 0..=n {
        acc += binomial(n as i64, j as i64) * series(&theta_operator_polynomial(j), u);
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * u * acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn direct(y: f64) -> f64 {
        let mut s = 0.0;
        for n in 1..=60 {
            let n2 = (n * n) as f64;
            s += (2.0 * PI * PI * n2 * n2 * y * y - 3.0 * PI * n2) * (-PI * n2 * y * y).exp();
        }
        2.0 * y * y * s
    }

    #[test]
    fn matches_direct_summation() {
        for &y in &[0.7, 1.0, 1.5, 3.0] {
            let a = theta_big(y).unwrap();
            assert!((a - direct(y)).abs() < 1e-13 * a.abs(), "y={y}");
        }
        // direct summation cancels badly here; 30-digit reference instead
        let small = theta_big(0.3).unwrap();
        assert!((small - 1.076_318_778_520_076_1e-11).abs() < 1e-24);
        assert_abs_diff_eq!(theta_big(1.0).unwrap(), 0.893_393_800_934_246_9, epsilon = 1e-9);
    }

    #[test]
    fn one_term_regime() {
        let y: f64 = 3.0;
        let first = 2.0 * 9.0 * (2.0 * PI * PI * 9.0 - 3.0 * PI) * (-9.0 * PI).exp();
        assert!((theta_big(y).unwrap() - first).abs() < 1e-20 * first.abs().max(1.0) + first * 1e-12);
    }

    #[test]
    fn operator_matches_finite_differences() {
        let h = 1e-4;
        let t = |y: f64| theta_big(y).unwrap();
        let d1 = theta_d_operator(1.0, 1).unwrap();
        assert!((d1 - (t(1.0 + h) - t(1.0 - h)) / (2.0 * h)).abs() < 1e-6);
        let e1 = |y: f64| y * (t(y + h) - t(y - h)) / (2.0 * h);
        let h2 = 2e-4;
        let d2 = theta_d_operator(1.0, 2).unwrap();
        assert!((d2 - (e1(1.0 + h2) - e1(1.0 - h2)) / (2.0 * h2)).abs() < 1e-4);
        // both sides of y = 1 agree for the operator
        for n in 0..6 {
            let a = theta_d_operator(1.0 - 1e-12, n).unwrap();
            let b = theta_d_operator(1.0, n).unwrap();
            assert!((a - b).abs() < 1e-9 * b.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(theta_big(0.0).is_err());
        assert!(theta_big(-1.0).is_err());
    }
}
