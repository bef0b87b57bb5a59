//! Riemann ζ by Euler–Maclaurin summation, with the functional equation for
//! Re(s) < 0, and the derivatives built on it.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::cauchy::RefinedTaylor;
use super::gamma::{factorial, log_gamma};
use super::PrecisionProfile;
use crate::error::{Error, Result};

const MAX_BERNOULLI: usize = 60;
const SIEVE_LIMIT: usize = 1 << 16;

/// B_{2k} / (2k)! for k = 1..=MAX_BERNOULLI, from
/// B_{2k} = (-1)^{k+1} 2 (2k)! ζ(2k) / (2π)^{2k}.
fn bernoulli_over_factorial() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (1..=MAX_BERNOULLI)
            .map(|k| {
                let p = 2.0 * k as f64;
                // ζ(2k) by direct summation plus the integral tail
                let n = 64usize;
                let mut z = 0.0;
                for j in (1..n).rev() {
                    z += (j as f64).powf(-p);
                }
                let nf = n as f64;
                z += nf.powf(1.0 - p) / (p - 1.0) + 0.5 * nf.powf(-p) + p / 12.0 * nf.powf(-p - 1.0);
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * 2.0 * z / (2.0 * PI).powf(p)
            })
            .collect()
    })
}

/// Smallest prime factor and ln(n) tables for the power sums.
struct Sieve {
    spf: Vec<u32>,
    ln: Vec<f64>,
}

fn sieve() -> &'static Sieve {
    static SIEVE: OnceLock<Sieve> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let mut spf = vec![0u32; SIEVE_LIMIT];
        for i in 2..SIEVE_LIMIT {
            if spf[i] == 0 {
                let mut j = i;
                while j < SIEVE_LIMIT {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        let ln = (0..SIEVE_LIMIT)
            .map(|n| if n == 0 { 0.0 } else { (n as f64).ln() })
            .collect();
        Sieve { spf, ln }
    })
}

/// n^{-s} for n = 0..n_max (entry 0 unused). Composite n reuse the
/// factorisation n = p * (n / p).
fn negative_powers(s: Complex64, n_max: usize) -> Vec<Complex64> {
    let sv = sieve();
    let mut out = vec![Complex64::new(0.0, 0.0); n_max + 1];
    if n_max >= 1 {
        out[1] = Complex64::new(1.0, 0.0);
    }
    for n in 2..=n_max {
        if n < SIEVE_LIMIT {
            let p = sv.spf[n] as usize;
            out[n] = if p == n {
                (-s * sv.ln[n]).exp()
            } else {
                out[p] * out[n / p]
            };
        } else {
            out[n] = (-s * (n as f64).ln()).exp();
        }
    }
    out
}

fn em_cutoff(profile: &PrecisionProfile, s: Complex64) -> usize {
    profile.em_terms.max((s.norm() / PI).ceil() as usize + 2)
}

/// Euler–Maclaurin pieces: (Σ_{n<N} n^{-s} + N^{-s}/2 + Bernoulli terms, N^{1-s}).
/// ζ(s) = first + second / (s - 1).
fn em_parts(profile: &PrecisionProfile, s: Complex64) -> (Complex64, Complex64) {
    let n = em_cutoff(profile, s);
    let pows = negative_powers(s, n);
    let mut head = Complex64::new(0.0, 0.0);
    for p in pows[1..n].iter().rev() {
        head += p;
    }
    let n_s = pows[n];
    let nf = n as f64;
    head += n_s * 0.5;
    let bern = bernoulli_over_factorial();
    let limit = profile.em_bernoulli.clamp(1, MAX_BERNOULLI);
    // term_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let mut poch = s;
    let mut npow = n_s / nf;
    let inv_n2 = 1.0 / (nf * nf);
    for (k, b) in bern.iter().enumerate().take(limit) {
        let term = poch * npow * *b;
        head += term;
        if term.norm() < 1e-17 * head.norm() {
            break;
        }
        let kk = 2.0 * (k as f64 + 1.0);
        poch *= (s + (kk - 1.0)) * (s + kk);
        npow *= inv_n2;
    }
    (head, n_s * nf)
}

fn reflection_factor(s: Complex64) -> Result<Complex64> {
    // 2^s π^{s-1} sin(πs/2) Γ(1-s) for Im(s) >= 0, with the growth of sin
    // folded into the exponent
    let i = Complex64::new(0.0, 1.0);
    let log_part = s * 2f64.ln() + (s - 1.0) * PI.ln() + log_gamma(1.0 - s)? - i * PI * s / 2.0;
    Ok(log_part.exp() * (i * 0.5) * (1.0 - (i * PI * s).exp()))
}

impl PrecisionProfile {
    /// ζ(s).
    pub fn zeta(&self, s: Complex64) -> Result<Complex64> {
        if s == Complex64::new(1.0, 0.0) {
            return Err(Error::Pole(s));
        }
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::NonFinite("zeta argument".into()));
        }
        if s.im < 0.0 {
            return self.zeta(s.conj()).map(|z| z.conj());
        }
        if s.re < 0.0 {
            let other = self.zeta(1.0 - s)?;
            return Ok(reflection_factor(s)? * other);
        }
        let (head, tail) = em_parts(self, s);
        Ok(head + tail / (s - 1.0))
    }

    /// (s - 1) ζ(s), entire; equals 1 at s = 1.
    pub fn zeta_times_sm1(&self, s: Complex64) -> Result<Complex64> {
        if s == Complex64::new(1.0, 0.0) {
            return Ok(Complex64::new(1.0, 0.0));
        }
        if s.im < 0.0 {
            return self.zeta_times_sm1(s.conj()).map(|z| z.conj());
        }
        if s.re < 0.0 {
            return Ok((s - 1.0) * self.zeta(s)?);
        }
        let (head, tail) = em_parts(self, s);
        Ok(head * (s - 1.0) + tail)
    }

    /// k-th derivative of ζ at `s` by Cauchy-circle differentiation.
    pub fn zeta_derivative(&self, s: Complex64, k: usize) -> Result<Complex64> {
        if k == 0 {
            return self.zeta(s);
        }
        let r = self.deriv_radius;
        if (s - 1.0).norm() <= r {
            return Err(Error::Pole(Complex64::new(1.0, 0.0)));
        }
        let t = RefinedTaylor::compute(|z| self.zeta(z), s, r, self.deriv_nodes, k, self.series_tol)?;
        Ok(t.derivative(k))
    }
}

/// ζ(s) with the default precision profile.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    PrecisionProfile::active().zeta(s)
}

/// (s - 1) ζ(s) with the default precision profile.
pub fn zeta_times_sm1(s: Complex64) -> Result<Complex64> {
    PrecisionProfile::active().zeta_times_sm1(s)
}

/// k-th derivative of ζ with the default precision profile.
pub fn zeta_derivative(s: Complex64, k: usize) -> Result<Complex64> {
    PrecisionProfile::active().zeta_derivative(s, k)
}

/// Radius of the Cauchy circle for the entire function (s - 1) ζ(s).
const ENTIRE_RADIUS: f64 = 0.5;

/// Taylor coefficients g_0..=g_K of t ↦ 1/ζ(a + direction·t) at t = 0.
///
/// Built by power-series arithmetic: the series of the entire function
/// (s - 1)ζ(s) about `a` is inverted and multiplied by (a - 1 + t).
pub fn inv_zeta_series(a: f64, k_max: usize, direction: f64) -> Result<Vec<Complex64>> {
    let profile = PrecisionProfile::active();
    let center = Complex64::new(a, 0.0);
    let h = RefinedTaylor::compute(
        |z| profile.zeta_times_sm1(z),
        center,
        ENTIRE_RADIUS,
        profile.deriv_nodes,
        k_max,
        profile.series_tol,
    )?
    .coefficients;
    let h0 = h[0];
    if h0.norm() < 1e-12 * (a - 1.0).abs().max(1.0) {
        return Err(Error::ZeroDivision(h0.norm()));
    }
    // q = 1 / h as a power series
    let mut q = vec![Complex64::new(0.0, 0.0); k_max + 1];
    q[0] = h0.inv();
    for n in 1..=k_max {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=n {
            acc += h[j] * q[n - j];
        }
        q[n] = -acc / h0;
    }
    // multiply by (a - 1 + t)
    let mut g: Vec<Complex64> = (0..=k_max)
        .map(|n| q[n] * (a - 1.0) + if n > 0 { q[n - 1] } else { Complex64::new(0.0, 0.0) })
        .collect();
    if ((a - 1.0) * q[0]).norm() < 1e-300 && a != 1.0 {
        return Err(Error::ZeroDivision(0.0));
    }
    if direction < 0.0 {
        for (k, gk) in g.iter_mut().enumerate() {
            if k % 2 == 1 {
                *gk = -*gk;
            }
        }
    }
    Ok(g)
}

/// Derivatives d^k/ds^k [1/ζ(a - s)] at s = 0 for k = 0..=K.
pub fn inv_zeta_taylor(a: f64, k_max: usize) -> Result<Vec<Complex64>> {
    let g = inv_zeta_series(a, k_max, -1.0)?;
    Ok(g.into_iter()
        .enumerate()
        .map(|(k, c)| c * factorial(k as u32))
        .collect())
}

/// ζ'(-2k) = (-1)^k (2k)! ζ(2k+1) / (2^{2k+1} π^{2k}).
pub fn zeta_prime_trivial(k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("zeta_prime_trivial needs k >= 1".into()));
    }
    let z = zeta(Complex64::new(2.0 * k as f64 + 1.0, 0.0))?.re;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    // (2k)! / (2^{2k+1} π^{2k}) accumulated as a product to stay in range
    let mut ratio = 0.5;
    for j in 1..=(2 * k) {
        ratio *= j as f64 / (2.0 * PI);
    }
    Ok(sign * ratio * z)
}
