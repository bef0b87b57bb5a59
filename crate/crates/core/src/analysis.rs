//! Partial sums, Fejér means, Parseval checks and reconstruction errors.
//!
//! Kernel routes integrate f against D_N or K_N in φ-space. For sampled
//! functions the asymptotic mean m is handled by its coefficients, as in the
//! coefficient quadrature itself, so the truncated real line costs nothing.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::{basis_e, dirichlet_kernel, fejer_kernel, inner_product_routes, phi_of_x, QuadratureSpec};
use crate::coefficients::{CoefficientTable, DirectIntegrator, FunctionSpec, Route, Sample};
use crate::error::{Error, Result};
use crate::quadrature::tanh_sinh;

fn resolving(spec: &FunctionSpec, q: &QuadratureSpec, n: u32) -> Result<std::sync::Arc<DirectIntegrator>> {
    DirectIntegrator::shared_resolving(spec, q, n)
}

fn sum_samples(
    integrator: &DirectIntegrator,
    route: Route,
    mut h: impl FnMut(&Sample) -> Complex64,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    integrator.for_each_sample(route, |s| acc += h(&s) * s.weight)?;
    Ok(acc)
}

/// ∫ f(y) K(φ(y)) dμ for a real kernel K with frequencies |k| ≤ n, given
/// the kernel's weight on e^{ikφ}, i.e. K(φ) = Σ c_k e^{ikφ}.
fn kernel_integral(
    spec: &FunctionSpec,
    q: &QuadratureSpec,
    n: u32,
    kernel: impl Fn(f64) -> f64 + Copy,
    weight: impl Fn(i64) -> Complex64,
) -> Result<Complex64> {
    if let FunctionSpec::Custom(c) = spec {
        let f = c.f.clone();
        let (value, _) = inner_product_routes(move |y| f(y), move |y| Complex64::new(kernel(phi_of_x(y)), 0.0), q)?;
        return Ok(value);
    }
    let integrator = resolving(spec, q, n)?;
    let mut acc = sum_samples(&integrator, Route::RealLine, |s| s.residual * kernel(s.phi))?;
    for k in -(n as i64)..=(n as i64) {
        acc += weight(k) * spec.mean_coefficient(k)?;
    }
    Ok(acc)
}

/// S_N(x) = Σ_{|n|≤N} a_n e^{−2in·arctan(2x)} from a table.
pub fn partial_sum(table: &CoefficientTable, x: f64, n: u32) -> Result<Complex64> {
    table.require_symmetric(n)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in -(n as i64)..=(n as i64) {
        acc += table.get(k)? * basis_e(k, x);
    }
    Ok(acc)
}

/// S_N(x) as the Dirichlet-kernel convolution ∫ f(y) D_N(φ(y) − φ(x)) dμ(y).
pub fn partial_sum_kernel(spec: &FunctionSpec, x: f64, n: u32, q: &QuadratureSpec) -> Result<Complex64> {
    let phi0 = phi_of_x(x);
    kernel_integral(
        spec,
        q,
        n,
        move |phi| dirichlet_kernel(n, phi - phi0),
        |k| Complex64::from_polar(1.0, -(k as f64) * phi0),
    )
}

/// Both routes to the Fejér mean σ_N at φ = x0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FejerMean {
    /// (1/2π)∫ K_N(x0 − 2·arctan(2y)) f(y) dy/(¼ + y²)
    pub kernel: Complex64,
    /// Σ_{|k|≤N} (1 − |k|/(N+1)) a_k e^{−ikx0}
    pub cesaro: Complex64,
}

impl FejerMean {
    pub fn route_gap(&self) -> f64 {
        (self.kernel - self.cesaro).norm()
    }
}

fn check_phi(x0: f64) -> Result<()> {
    if x0.abs() < PI {
        Ok(())
    } else {
        Err(Error::Domain(format!("x0 = {x0} must lie in (-pi, pi)")))
    }
}

/// σ_N(x0) by the Fejér kernel, x0 a φ-coordinate (x = ½·tan(x0/2)).
pub fn fejer_mean(spec: &FunctionSpec, x0: f64, n: u32, q: &QuadratureSpec) -> Result<Complex64> {
    check_phi(x0)?;
    let cesaro = move |k: i64| 1.0 - k.unsigned_abs() as f64 / (n as f64 + 1.0);
    kernel_integral(
        spec,
        q,
        n,
        move |phi| fejer_kernel(n, x0 - phi),
        move |k| Complex64::from_polar(cesaro(k), -(k as f64) * x0),
    )
}

/// σ_N(x0) by the kernel and by averaging partial sums of directly
/// computed coefficients.
pub fn fejer_mean_routes(spec: &FunctionSpec, x0: f64, n: u32, q: &QuadratureSpec) -> Result<FejerMean> {
    let kernel = fejer_mean(spec, x0, n, q)?;
    let integrator = resolving(spec, q, n)?;
    let mut cesaro = Complex64::new(0.0, 0.0);
    for k in -(n as i64)..=(n as i64) {
        let a = integrator.routes(k)?.value;
        let c = 1.0 - k.unsigned_abs() as f64 / (n as f64 + 1.0);
        cesaro += a * Complex64::from_polar(c, -(k as f64) * x0);
    }
    Ok(FejerMean { kernel, cesaro })
}

/// The limit of σ_N(x0): f at y = ½·tan(x0/2).
pub fn fejer_target(spec: &FunctionSpec, x0: f64) -> Result<Complex64> {
    check_phi(x0)?;
    spec.eval(0.5 * (0.5 * x0).tan())
}

/// ∫|f|² dμ with its error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSquared {
    pub value: f64,
    pub real_line: f64,
    pub periodic: f64,
    /// Modelled contribution of |y| beyond the sampled window.
    pub outer: f64,
    pub error: f64,
}

/// (1/π)∫_{φ(a)}^{φ(b)} M(y(φ)) dφ = 2∫_a^b M dμ, with b = ∞ allowed.
fn band_mean_square(spec: &FunctionSpec, a: f64, b: f64, tol: f64) -> Result<f64> {
    let hi = if b.is_finite() { phi_of_x(b) } else { PI };
    let mut err = None;
    let v = tanh_sinh(
        |phi, _, _| match spec.mean_square(0.5 * (0.5 * phi).tan()) {
            Ok(m) => Complex64::new(m, 0.0),
            Err(e) => {
                err.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        phi_of_x(a),
        hi,
        tol,
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(v.value.re / PI)
}

/// ∫|f|² dμ: the sampled window by both routes, the remainder from the
/// mean square of f. The error adds the route gap and the mismatch between
/// samples and model on y_w/2 < |y| < y_w, a band of the same μ-mass as the
/// modelled remainder.
pub fn norm_squared(spec: &FunctionSpec, q: &QuadratureSpec) -> Result<NormSquared> {
    if let FunctionSpec::Custom(c) = spec {
        let (f, g) = (c.f.clone(), c.f.clone());
        let (a, b) = inner_product_routes(move |y| f(y), move |y| g(y), q)?;
        return Ok(NormSquared {
            value: a.re,
            real_line: a.re,
            periodic: b.re,
            outer: 0.0,
            error: (a - b).norm(),
        });
    }
    let integrator = DirectIntegrator::shared(spec, q)?;
    let w = integrator.window();
    let full = |s: &Sample| (s.residual + spec.mean_model(s.y)).norm_sqr();
    let real_line = sum_samples(&integrator, Route::RealLine, |s| Complex64::new(full(s), 0.0))?.re;
    let periodic = sum_samples(&integrator, Route::Periodic, |s| Complex64::new(full(s), 0.0))?.re;
    let outer = band_mean_square(spec, w, f64::INFINITY, 1e-12)?;
    let band = sum_samples(&integrator, Route::RealLine, |s| {
        Complex64::new(if s.y.abs() > 0.5 * w { full(s) } else { 0.0 }, 0.0)
    })?
    .re;
    let model = band_mean_square(spec, 0.5 * w, w, 1e-12)?;
    let mismatch = if outer > 0.0 { (band - model).abs() } else { 0.0 };
    Ok(NormSquared {
        value: real_line + outer,
        real_line: real_line + outer,
        periodic: periodic + outer,
        outer,
        error: (real_line - periodic).abs() + mismatch,
    })
}

/// Least-squares fit of log b_k = α + βk over the last five k ≤ N, with
/// b_k² = |a_k|² + |a_{−k}|², and the fitted tail Σ_{k>N} b_k².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    /// e^β; the tail is infinite when ≥ 1.
    pub ratio: Option<f64>,
    pub bound: f64,
}

pub fn geometric_tail(table: &CoefficientTable, n: u32) -> Result<TailFit> {
    table.require_symmetric(n)?;
    let level = |k: i64| -> Result<f64> {
        let a = table.get(k)?.norm_sqr();
        Ok(if k == 0 { a } else { a + table.get(-k)?.norm_sqr() })
    };
    let mut pts = Vec::new();
    for k in (n as i64 - 4).max(0)..=n as i64 {
        let b2 = level(k)?;
        if b2 > 0.0 {
            pts.push((k as f64, 0.5 * b2.ln()));
        }
    }
    if pts.len() < 2 {
        return Ok(TailFit {
            ratio: None,
            bound: 0.0,
        });
    }
    let m = pts.len() as f64;
    let kx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let ly = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - kx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - kx) * (p.1 - ly)).sum();
    let beta = sxy / sxx;
    let alpha = ly - beta * kx;
    let ratio = beta.exp();
    if ratio >= 1.0 {
        return Ok(TailFit {
            ratio: Some(ratio),
            bound: f64::INFINITY,
        });
    }
    let r2 = ratio * ratio;
    let first = (2.0 * (alpha + beta * (n as f64 + 1.0))).exp();
    Ok(TailFit {
        ratio: Some(ratio),
        bound: first / (1.0 - r2),
    })
}

/// Parseval at order N: ∫|f|²dμ against Σ_{|k|≤N}|a_k|².
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParsevalReport {
    pub spec: String,
    pub n: u32,
    pub lhs: f64,
    pub lhs_error: f64,
    pub rhs_partial: f64,
    /// Σ_{|k|≤M}|a_k|² for M = 0..=N.
    pub rhs_by_n: Vec<f64>,
    pub tail_bound: f64,
    pub tail_ratio: Option<f64>,
    pub tol: f64,
    /// Σ_{|k|≤M}|a_k|² ≤ lhs + tol for every M ≤ N.
    pub bessel: bool,
    /// |lhs − rhs_partial| ≤ tail_bound + 2·tol with a decaying fit; a fit
    /// that does not decay bounds nothing and fails.
    pub verdict: bool,
}

pub fn parseval_check(
    spec: &FunctionSpec,
    table: &CoefficientTable,
    n: u32,
    q: &QuadratureSpec,
) -> Result<ParsevalReport> {
    table.require_symmetric(n)?;
    let lhs = norm_squared(spec, q)?;
    let mut rhs_by_n = Vec::with_capacity(n as usize + 1);
    let mut acc = table.get(0)?.norm_sqr();
    rhs_by_n.push(acc);
    for k in 1..=n as i64 {
        acc += table.get(k)?.norm_sqr() + table.get(-k)?.norm_sqr();
        rhs_by_n.push(acc);
    }
    let tail = geometric_tail(table, n)?;
    let tol = q.tol;
    Ok(ParsevalReport {
        spec: spec.label(),
        n,
        lhs: lhs.value,
        lhs_error: lhs.error,
        rhs_partial: acc,
        bessel: rhs_by_n.iter().all(|&r| r <= lhs.value + tol),
        verdict: tail.bound.is_finite() && (lhs.value - acc).abs() <= tail.bound + 2.0 * tol,
        rhs_by_n,
        tail_bound: tail.bound,
        tail_ratio: tail.ratio,
        tol,
    })
}

/// S_N against f on a grid of x, with the μ-norm of f − S_N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub spec: String,
    pub n: u32,
    pub grid: Vec<f64>,
    pub f_re: Vec<f64>,
    pub partial_re: Vec<f64>,
    /// |f(x) − S_N(x)|
    pub truncation_error: Vec<f64>,
    pub sup_error: f64,
    /// (∫|f − S_N|² dμ)^{1/2}
    pub l2_error: f64,
    pub quadrature: QuadratureSpec,
}

fn trig_poly(table: &CoefficientTable, n: u32, phi: f64) -> Complex64 {
    let base = table.n_min;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in -(n as i64)..=(n as i64) {
        acc += table.values[(k - base) as usize] * Complex64::from_polar(1.0, -(k as f64) * phi);
    }
    acc
}

/// ∫|f − S_N|² dμ: samples on the window, the mean-square model beyond it.
fn l2_error_squared(spec: &FunctionSpec, table: &CoefficientTable, n: u32, q: &QuadratureSpec) -> Result<f64> {
    if let FunctionSpec::Custom(c) = spec {
        let f = c.f.clone();
        let t = table.clone();
        let diff = move |y: f64| f(y) - trig_poly(&t, n, phi_of_x(y));
        let d2 = diff.clone();
        let (v, _) = inner_product_routes(diff, d2, q)?;
        return Ok(v.re);
    }
    let integrator = DirectIntegrator::shared(spec, q)?;
    let inner = sum_samples(&integrator, Route::RealLine, |s| {
        let d = s.residual + spec.mean_model(s.y) - trig_poly(table, n, s.phi);
        Complex64::new(d.norm_sqr(), 0.0)
    })?
    .re;
    // beyond the window E f = m, E|f|² = M: E|f − S|² = M − 2Re(m̄S) + |S|²
    let w = integrator.window();
    let mut err = None;
    let outer = tanh_sinh(
        |phi, _, _| {
            let y = 0.5 * (0.5 * phi).tan();
            let mut h = 0.0;
            for (yy, pp) in [(y, phi), (-y, -phi)] {
                let s = trig_poly(table, n, pp);
                let m = spec.mean_model(yy);
                let ms = spec.mean_square(yy).unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    0.0
                });
                h += ms - 2.0 * (m.conj() * s).re + s.norm_sqr();
            }
            Complex64::new(h / (2.0 * PI), 0.0)
        },
        phi_of_x(w),
        PI,
        1e-12,
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(inner + outer.value.re)
}

pub fn reconstruction_report(
    spec: &FunctionSpec,
    table: &CoefficientTable,
    grid: &[f64],
    n: u32,
    q: &QuadratureSpec,
) -> Result<ReconstructionReport> {
    table.require_symmetric(n)?;
    let mut f_re = Vec::with_capacity(grid.len());
    let mut partial_re = Vec::with_capacity(grid.len());
    let mut truncation_error = Vec::with_capacity(grid.len());
    for &x in grid {
        let f = spec.eval(x)?;
        let s = partial_sum(table, x, n)?;
        f_re.push(f.re);
        partial_re.push(s.re);
        truncation_error.push((f - s).norm());
    }
    let sup_error = truncation_error.iter().copied().fold(0.0, f64::max);
    let l2_error = l2_error_squared(spec, table, n, q)?.max(0.0).sqrt();
    Ok(ReconstructionReport {
        spec: spec.label(),
        n,
        grid: grid.to_vec(),
        f_re,
        partial_re,
        truncation_error,
        sup_error,
        l2_error,
        quadrature: *q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{CustomFn, Method};
    use approx::assert_abs_diff_eq;

    fn table(values: Vec<Complex64>, n_min: i64) -> CoefficientTable {
        CoefficientTable::from_values("test".into(), n_min, values, Method::Quadrature).unwrap()
    }

    #[test]
    fn partial_sum_of_constant() {
        let mut v = vec![Complex64::new(0.0, 0.0); 7];
        v[3] = Complex64::new(1.0, 0.0);
        let t = table(v, -3);
        for n in 0..=3 {
            assert_abs_diff_eq!(partial_sum(&t, 0.7, n).unwrap().re, 1.0, epsilon = 1e-15);
        }
        assert!(matches!(partial_sum(&t, 0.7, 4), Err(Error::IndexRange { .. })));
    }

    #[test]
    fn tail_fit_of_geometric_coefficients() {
        let v: Vec<Complex64> = (0..=20).map(|k| Complex64::new(0.5f64.powi(k), 0.0)).collect();
        let t = table(v, 0);
        let fit = geometric_tail(&t, 10).ok();
        assert!(fit.is_none(), "negative indices are missing");
        let v: Vec<Complex64> = (-20i32..=20)
            .map(|k| Complex64::new(if k >= 0 { 0.5f64.powi(k) } else { 0.0 }, 0.0))
            .collect();
        let t = table(v, -20);
        let fit = geometric_tail(&t, 10).unwrap();
        assert_abs_diff_eq!(fit.ratio.unwrap(), 0.5, epsilon = 1e-12);
        let exact: f64 = (11..200).map(|k| 0.25f64.powi(k)).sum();
        assert_abs_diff_eq!(fit.bound, exact, epsilon = 1e-15);
    }

    #[test]
    fn constant_function_means() {
        let one = FunctionSpec::Custom(CustomFn::new("one", |_| Complex64::new(1.0, 0.0)));
        let q = QuadratureSpec::default();
        for n in [0, 3] {
            assert_abs_diff_eq!(fejer_mean(&one, 0.4, n, &q).unwrap().re, 1.0, epsilon = 1e-9);
        }
        assert_abs_diff_eq!(norm_squared(&one, &q).unwrap().value, 1.0, epsilon = 1e-10);
        assert!(fejer_mean(&one, PI, 2, &q).is_err());
    }
}
