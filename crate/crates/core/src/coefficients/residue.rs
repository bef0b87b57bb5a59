//! Residue closed forms for the expansions of 1/ζ(σ ± ix).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specialfn::{binomial, inv_zeta_series, zeta, zeta_prime_trivial};

use super::convention::{require, Family, Orientation, SumBound, SumConvention, ZeroSumConvention};
use super::zeros::ZeroTable;

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.5 && sigma < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("sigma must lie in (1/2, 1), got {sigma}")))
    }
}

/// (1/n!) Σ_k C(n,k) (−1)^n (n−1)!/(k−1)! ∂^k_s [1/ζ(c + dir·s)]_{s=0} for
/// n ≥ 1 under `convention`, where `dir` is the direction written in the
/// formula. The k = 0 term vanishes (1/(−1)! = 0).
pub fn binomial_residue_sum(c: f64, dir: f64, n: i64, convention: SumConvention) -> Result<Complex64> {
    if n < 1 {
        return Err(Error::Domain(format!("binomial residue sum needs n >= 1, got {n}")));
    }
    let dir = match convention.orientation {
        Orientation::AsWritten => dir,
        Orientation::Reflected => -dir,
    };
    // Taylor coefficients g_k = ∂^k/k!; the term is (−1)^n C(n−1, k−1) g_k
    let g = inv_zeta_series(c, n as usize, dir)?;
    let top = match convention.bound {
        SumBound::Strict => n - 1,
        SumBound::Inclusive => n,
    };
    let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=top {
        acc += g[k as usize] * (sign_n * binomial(n - 1, k - 1));
    }
    Ok(acc * convention.sign())
}

/// ā_n under an explicit convention, without the calibration check.
pub fn bar_formula(sigma: f64, n: i64, convention: SumConvention) -> Result<Complex64> {
    check_sigma(sigma)?;
    match n {
        n if n < 0 => Ok(Complex64::new(0.0, 0.0)),
        0 => Ok(Complex64::new(convention.sign(), 0.0) / zeta(Complex64::new(sigma + 0.5, 0.0))?),
        _ => binomial_residue_sum(sigma + 0.5, -1.0, n, convention),
    }
}

/// ā_n: coefficients of 1/ζ(σ + ix). Requires `convention` to have been
/// confirmed by the calibration pass.
pub fn coeff_bar(sigma: f64, n: i64, convention: SumConvention) -> Result<Complex64> {
    require(Family::Bar, &convention)?;
    bar_formula(sigma, n, convention)
}

/// A truncated series with an estimate of the neglected part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail: f64,
}

/// Term of S for the zero ½ + iβ (β of either sign).
fn zero_term(n: i64, sigma: f64, beta: f64, zeta_prime: Complex64) -> Complex64 {
    let a = Complex64::new(sigma, -beta);
    let c = Complex64::new(1.0 - sigma, beta);
    (a / c).powi(n as i32) / (zeta_prime * c * a)
}

/// Term of S for the trivial zero −2k.
fn trivial_term(n: i64, sigma: f64, k: u32) -> Result<f64> {
    let p = 0.5 + sigma + 2.0 * k as f64;
    let m = 0.5 - sigma - 2.0 * k as f64;
    Ok((p / m).powi(n as i32) / (zeta_prime_trivial(k)? * m * p))
}

/// Extrapolated remainder of a slowly converging sequence of partial sums
/// sampled at counts K/4, K/2, K: the last block change continued
/// geometrically with the observed block ratio (clamped to [½, 0.9]).
fn doubling_tail(quarter: Complex64, half: Complex64, full: Complex64) -> f64 {
    let d1 = (full - half).norm();
    let d2 = (half - quarter).norm();
    let r = if d2 > 0.0 { (d1 / d2).clamp(0.5, 0.9) } else { 0.5 };
    d1 * r / (1.0 - r)
}

/// S(n, σ): sum over the zeros in `zeros` (in conjugate pairs ±β with
/// ascending β when `pairs`) plus the trivial zeros k = 1..=k_trivial_max.
pub fn s_sum_with(n: i64, sigma: f64, zeros: &ZeroTable, k_trivial_max: u32, pairs: bool) -> Result<SeriesValue> {
    check_sigma(sigma)?;
    if zeros.count() < 4 {
        return Err(Error::Domain("S(n, sigma) needs at least four zeros".into()));
    }
    let count = zeros.count();
    let mut partial = Vec::with_capacity(count);
    let mut acc = Complex64::new(0.0, 0.0);
    for (&beta, &d) in zeros.betas().iter().zip(zeros.zeta_prime()) {
        acc += zero_term(n, sigma, beta, d);
        if pairs {
            acc += zero_term(n, sigma, -beta, d.conj());
        }
        partial.push(acc);
    }
    let zero_tail = doubling_tail(partial[count / 4 - 1], partial[count / 2 - 1], acc);
    let mut trivial = 0.0;
    let mut last = 0.0;
    for k in 1..=k_trivial_max {
        last = trivial_term(n, sigma, k)?;
        trivial += last;
    }
    Ok(SeriesValue {
        value: acc + trivial,
        tail: zero_tail + last.abs(),
    })
}

/// S(n, σ) over conjugate pairs of zeros.
pub fn s_sum(n: i64, sigma: f64, zeros: &ZeroTable, k_trivial_max: u32) -> Result<SeriesValue> {
    s_sum_with(n, sigma, zeros, k_trivial_max, true)
}

/// â_n under explicit conventions, without the calibration check: for
/// n ≥ 1 the binomial sum at σ − ½ combined with S, for n < 0 S alone, and
/// 1/ζ(σ + ½) at n = 0.
pub fn hat_formula(
    sigma: f64,
    n: i64,
    zeros: &ZeroTable,
    k_trivial_max: u32,
    sum: SumConvention,
    zero_sum: ZeroSumConvention,
) -> Result<SeriesValue> {
    check_sigma(sigma)?;
    if n == 0 {
        return Ok(SeriesValue {
            value: Complex64::new(sum.sign(), 0.0) / zeta(Complex64::new(sigma + 0.5, 0.0))?,
            tail: 0.0,
        });
    }
    let s = s_sum_with(n, sigma, zeros, k_trivial_max, zero_sum.pairs)?;
    let s_value = if zero_sum.subtract { -s.value } else { s.value };
    let head = if n >= 1 {
        binomial_residue_sum(sigma - 0.5, 1.0, n, sum)?
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok(SeriesValue {
        value: head + s_value,
        tail: s.tail,
    })
}

/// â_n: coefficients of 1/ζ(σ − ix). Both conventions must have been
/// confirmed by calibration; fails with `TailTooLarge` when the S-tail
/// estimate exceeds `tol`.
pub fn coeff_hat(
    sigma: f64,
    n: i64,
    zeros: &ZeroTable,
    k_trivial_max: u32,
    conventions: (SumConvention, ZeroSumConvention),
    tol: f64,
) -> Result<SeriesValue> {
    require(Family::Hat, &HatConvention::from(conventions))?;
    let v = hat_formula(sigma, n, zeros, k_trivial_max, conventions.0, conventions.1)?;
    if v.tail > tol {
        return Err(Error::TailTooLarge { tail: v.tail, tol });
    }
    Ok(v)
}

/// The pair of conventions of â_n, displayed as one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatConvention {
    pub sum: SumConvention,
    pub zero_sum: ZeroSumConvention,
}

impl From<(SumConvention, ZeroSumConvention)> for HatConvention {
    fn from((sum, zero_sum): (SumConvention, ZeroSumConvention)) -> Self {
        Self { sum, zero_sum }
    }
}

impl std::fmt::Display for HatConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{};{}", self.sum, self.zero_sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::convention::register;

    const TRUE_SUM: SumConvention = SumConvention {
        bound: SumBound::Inclusive,
        negate: false,
        orientation: Orientation::Reflected,
    };

    #[test]
    fn bar_constant_and_negative_indices() {
        let z = zeta(Complex64::new(1.25, 0.0)).unwrap().re;
        for conv in SumConvention::all() {
            let a0 = bar_formula(0.75, 0, conv).unwrap();
            assert!((a0.re - conv.sign() / z).abs() < 1e-14);
            assert_eq!(bar_formula(0.75, -3, conv).unwrap(), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn strict_bound_drops_only_the_last_term() {
        // with k < n, ā_1 keeps only the vanishing k = 0 term
        assert_eq!(
            bar_formula(0.75, 1, SumConvention::AS_STATED).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let inclusive = SumConvention {
            bound: SumBound::Inclusive,
            ..SumConvention::AS_STATED
        };
        assert!(bar_formula(0.75, 1, inclusive).unwrap().norm() > 0.1);
    }

    #[test]
    fn uncalibrated_convention_is_rejected() {
        let odd = SumConvention {
            bound: SumBound::Strict,
            negate: true,
            orientation: Orientation::Reflected,
        };
        register(Family::Bar, &TRUE_SUM);
        assert!(matches!(coeff_bar(0.75, 2, odd), Err(Error::ConventionUnvalidated(_))));
        assert!(coeff_bar(0.75, 2, TRUE_SUM).is_ok());
    }

    #[test]
    fn trivial_series_converges_fast() {
        for n in [-3i64, 1, 4] {
            // |ζ'(−2k)| dips until k = 3, then grows factorially
            let mut prev = trivial_term(n, 0.75, 5).unwrap().abs();
            for k in 6..14 {
                let t = trivial_term(n, 0.75, k).unwrap().abs();
                assert!(t < 0.5 * prev, "k = {k}");
                prev = t;
            }
        }
    }

    #[test]
    fn pair_sums_are_real_and_doubling_is_within_the_tail() {
        let zeros = ZeroTable::bundled().unwrap();
        let half = zeros.truncated(50);
        for n in [-2i64, 1, 3] {
            let full = s_sum(n, 0.75, &zeros, 30).unwrap();
            assert!(full.value.im.abs() < 1e-12);
            let s50 = s_sum(n, 0.75, &half, 30).unwrap();
            assert!((full.value - s50.value).norm() < s50.tail);
        }
    }
}
