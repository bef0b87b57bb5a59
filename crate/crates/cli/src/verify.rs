//! Verification suites. Each check compares two numbers; informational
//! checks record known discrepancies of the stated formulas and do not
//! affect the exit code.

use std::f64::consts::PI;
use std::fmt;

use clap::ValueEnum;
use serde::Serialize;

use zeta_fourier::analysis::{
    fejer_mean, fejer_mean_routes, fejer_target, norm_squared, parseval_check, partial_sum, partial_sum_kernel,
    reconstruction_report,
};
use zeta_fourier::basis::{
    dirichlet_kernel, fejer_kernel, inner_product, inner_product_routes, orthonormality_defect, QuadratureSpec,
};
use zeta_fourier::coefficients::{
    calibrate_bar, calibrate_hat, calibrate_tilde_negative, calibrate_xi, coeff_xi, compute_table, tilde_series_report,
    xi_theta_formula, CalibrationReport, Candidate, CustomFn, DirectIntegrator, FunctionSpec, Method, TableSettings,
    XiConvention, XiMethod, ZeroTable,
};
use zeta_fourier::specialfn::{gamma, theta_big, whittaker_ode_residual, whittaker_w, xi, xi_derivatives, zeta};
use zeta_fourier::Complex64;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Orthonormality,
    Theorem11,
    Theorem12,
    Theorem31,
    Parseval,
    Fejer,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Orthonormality,
        Suite::Theorem11,
        Suite::Theorem12,
        Suite::Theorem31,
        Suite::Parseval,
        Suite::Fejer,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// |lhs − rhs| ≤ tol
    #[serde(rename = "|lhs-rhs|<=tol")]
    Close,
    /// lhs ≤ rhs + tol
    #[serde(rename = "lhs<=rhs+tol")]
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
    pub pass: bool,
    pub relation: Relation,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Check {
    pub fn close(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            tol,
            pass: (lhs - rhs).abs() <= tol,
            relation: Relation::Close,
            informational: false,
            note: String::new(),
        }
    }

    pub fn at_most(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self {
            pass: lhs <= rhs + tol,
            relation: Relation::AtMost,
            ..Self::close(name, lhs, rhs, tol)
        }
    }

    /// Marks a known discrepancy: reported, never fatal.
    pub fn informational(mut self, note: impl Into<String>) -> Self {
        self.informational = true;
        self.note = note.into();
        self
    }

    pub fn noted(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config_hash: String,
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    /// Hard checks that failed.
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass && !c.informational).collect()
    }
}

/// What the suites need besides the quadrature.
pub struct Context<'a> {
    pub q: QuadratureSpec,
    pub settings: TableSettings,
    pub zeros: &'a ZeroTable,
}

pub fn run(suite: Suite, ctx: &Context<'_>, config_hash: String) -> Result<Report, CliError> {
    let mut checks = Vec::new();
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    for s in suites {
        let mut part = match s {
            Suite::Orthonormality => orthonormality(ctx)?,
            Suite::Theorem11 => theorem11(ctx)?,
            Suite::Theorem12 => theorem12(ctx)?,
            Suite::Theorem31 => theorem31(ctx)?,
            Suite::Parseval => parseval(ctx)?,
            Suite::Fejer => fejer(ctx)?,
            Suite::All => unreachable!("expanded above"),
        };
        for c in &mut part {
            c.name = format!("{s}.{}", c.name);
            if ![c.lhs, c.rhs, c.tol].iter().all(|v| v.is_finite()) {
                return Err(CliError::Numeric(format!(
                    "check {} produced a non-finite value",
                    c.name
                )));
            }
        }
        checks.extend(part);
    }
    Ok(Report {
        config_hash,
        suite: suite.to_string(),
        checks,
    })
}

fn orthonormality(ctx: &Context<'_>) -> Result<Vec<Check>, CliError> {
    let q = &ctx.q;
    let mut out = vec![Check::at_most(
        "max|<e_m,e_n>-delta|(|m|,|n|<=20)",
        orthonormality_defect(20, q)?,
        0.0,
        1e-9,
    )];
    let one = |_: f64| Complex64::new(1.0, 0.0);
    out.push(Check::close(
        "mu_total_mass",
        inner_product(one, one, q)?.re,
        1.0,
        1e-10,
    ));
    let mut worst_gap: f64 = 0.0;
    for j in 0..20 {
        let (a, b) = (-2.0 + 0.2 * j as f64, 0.5 + 0.1 * j as f64);
        let f = move |y: f64| Complex64::new(1.0 / (1.0 + ((y - a) / b).powi(2)), (-(y - a).powi(2)).exp());
        let (r, p) = inner_product_routes(f, one, q)?;
        worst_gap = worst_gap.max((r - p).norm());
    }
    out.push(Check::at_most(
        "route_agreement(20 functions)",
        worst_gap,
        0.0,
        2.0 * q.tol,
    ));
    let mut kernel_gap: f64 = 0.0;
    for n in [0u32, 3, 7, 12] {
        for k in 0..=200 {
            let x = -PI + 2.0 * PI * k as f64 / 200.0;
            let direct: f64 = (-(n as i32)..=n as i32).map(|j| (j as f64 * x).cos()).sum();
            kernel_gap = kernel_gap.max((dirichlet_kernel(n, x) - direct).abs());
        }
    }
    out.push(Check::at_most("dirichlet_kernel_identity", kernel_gap, 0.0, 1e-12));
    let min_fejer = (0..=400)
        .map(|k| fejer_kernel(9, -PI + 2.0 * PI * k as f64 / 400.0))
        .fold(f64::INFINITY, f64::min);
    out.push(Check::at_most("fejer_kernel_nonnegative", -min_fejer, 0.0, 1e-12));
    Ok(out)
}

fn candidate_checks(prefix: &str, c: &Candidate) -> Vec<Check> {
    c.deviations
        .iter()
        .map(|d| {
            Check::at_most(
                format!("{prefix}[n={},param={}]", d.n, d.param),
                d.deviation,
                0.0,
                d.tol,
            )
            .noted(format!(
                "formula {:.12e}{:+.12e}i vs quadrature {:.12e}{:+.12e}i",
                d.formula.re, d.formula.im, d.quadrature.re, d.quadrature.im
            ))
        })
        .collect()
}

/// Checks of the selected convention, or one failing check naming the best
/// candidate when none agrees.
fn selected_checks(prefix: &str, report: &CalibrationReport) -> Vec<Check> {
    match report.selected.as_deref().and_then(|s| report.candidate(s)) {
        Some(c) => {
            let mut out = vec![
                Check::at_most(format!("{prefix}.calibration_worst_ratio"), c.worst_ratio, 1.0, 0.0)
                    .noted(format!("selected convention {}", c.convention)),
            ];
            out.extend(candidate_checks(prefix, c));
            out
        }
        None => {
            let best = report.best();
            vec![Check::at_most(
                format!("{prefix}.calibration_worst_ratio"),
                best.map_or(f64::MAX, |c| c.worst_ratio),
                1.0,
                0.0,
            )
            .noted(format!(
                "no convention agrees with quadrature; closest {}",
                best.map_or("none", |c| c.convention.as_str())
            ))]
        }
    }
}

fn theorem11(ctx: &Context<'_>) -> Result<Vec<Check>, CliError> {
    let q = &ctx.q;
    let c = |re: f64| Complex64::new(re, 0.0);
    let mut out = vec![
        Check::close("zeta(2)=pi^2/6", zeta(c(2.0))?.re, PI * PI / 6.0, 1e-10),
        Check::close("zeta(-2)=0", zeta(c(-2.0))?.norm(), 0.0, 1e-10),
        Check::close("gamma(1/2)=sqrt(pi)", gamma(c(0.5))?.re, PI.sqrt(), 1e-10),
    ];
    let sigma = 0.75;
    out.extend(selected_checks("bar", &calibrate_bar(sigma, q, 1e-7)?));
    let direct = DirectIntegrator::shared(&FunctionSpec::InvZeta { sigma }, q)?;
    for n in -6..=-1 {
        out.push(Check::at_most(
            format!("one_sided[n={n}]"),
            direct.coefficient(n)?.value.norm(),
            0.0,
            1e-7,
        ));
    }
    let hat = calibrate_hat(sigma, ctx.zeros, ctx.settings.k_trivial_max, q)?;
    out.extend(selected_checks("hat", &hat));
    if let Some(c) = hat.selected.as_deref().and_then(|s| hat.candidate(s)) {
        // the per-n tolerance is the S-tail estimate plus the quadrature error
        let tail = c.deviations.iter().map(|d| d.tol).fold(0.0, f64::max);
        out.push(
            Check::at_most("hat.s_tail_bound", tail, 1e-3, 0.0).informational(format!(
                "S(n, sigma) over {} zeros converges slowly; its tail estimate exceeds 1e-3",
                ctx.zeros.count()
            )),
        );
    }
    Ok(out)
}

fn theorem12(ctx: &Context<'_>) -> Result<Vec<Check>, CliError> {
    let q = &ctx.q;
    let mut out = Vec::new();
    let negative = calibrate_tilde_negative(&[0.75, 0.9], q, 1e-7)?;
    out.extend(selected_checks("tilde_negative", &negative));
    for variant in ["half-angle", "double-angle"] {
        let best = negative
            .candidates
            .iter()
            .filter(|c| c.convention.starts_with(variant))
            .min_by(|a, b| a.worst_ratio.total_cmp(&b.worst_ratio));
        if let Some(c) = best {
            let check = Check::at_most(
                format!("tilde_negative.{variant}.max_deviation"),
                c.max_deviation,
                0.0,
                1e-7,
            )
            .noted(format!("closest reading {}", c.convention));
            out.push(if c.pass {
                check
            } else {
                check.informational("the closed form does not describe this weight")
            });
        }
    }
    let v = Complex64::new(1.0, 0.0);
    let series = tilde_series_report(0.9, v, &[1, 2, 3], q, ctx.settings.series_k_max.max(1 << 17), 1e-5)?;
    for c in &series.candidates {
        let label = c.convention.replace(',', ".");
        if c.convention == "rederived,half-angle" {
            out.extend(candidate_checks(&format!("tilde_series.{label}"), c));
        } else {
            out.push(
                Check::at_most(
                    format!("tilde_series.{label}.max_deviation"),
                    c.max_deviation,
                    0.0,
                    1e-5,
                )
                .informational("this form of the series does not match the quadrature of this weight"),
            );
        }
    }
    let cc = |re: f64| Complex64::new(re, 0.0);
    let mut worst: f64 = 0.0;
    for &(mu, z) in &[(0.5, 2.0), (0.25, 0.7), (1.5, 3.0), (-0.75, 12.0)] {
        let w = whittaker_w(cc(mu + 0.5), cc(mu), z)?.re;
        let exact = (-z / 2.0).exp() * z.powf(mu + 0.5);
        worst = worst.max((w - exact).abs() / exact);
    }
    out.push(Check::at_most(
        "whittaker.terminating_relative_error",
        worst,
        0.0,
        1e-12,
    ));
    let mut residual: f64 = 0.0;
    for k in 0..=18 {
        residual = residual.max(whittaker_ode_residual(cc(2.0), cc(-0.75), 1.0 + 0.5 * k as f64, 1e-3)?);
    }
    out.push(Check::at_most(
        "whittaker.ode_residual(2,-3/4,[1,10])",
        residual,
        0.0,
        1e-4,
    ));
    let ratio = whittaker_w(cc(3.0), cc(-1.0), 40.0)?.re / ((-20.0f64).exp() * 40f64.powi(3));
    out.push(
        Check::close("whittaker.leading_asymptotic_ratio(3,-1,40)", ratio, 1.0, 0.1)
            .informational("the first correction (mu^2-(kappa-1/2)^2)/z = -0.131 puts the ratio near 0.87 at z = 40"),
    );
    Ok(out)
}

fn theorem31(ctx: &Context<'_>) -> Result<Vec<Check>, CliError> {
    let q = &ctx.q;
    let mut out = Vec::new();
    let at0 = xi_derivatives(Complex64::new(0.0, 0.0), 6)?;
    let at1 = xi_derivatives(Complex64::new(1.0, 0.0), 6)?;
    for k in 0..=6 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out.push(Check::close(
            format!("coffey[k={k}]"),
            at0[k].re,
            sign * at1[k].re,
            1e-8,
        ));
    }
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let a = ((k as f64 * 0.618_033_988_749_894_9).fract()) * 3.0 - 1.0;
        let b = ((k as f64 * 0.414_213_562_373_095_1).fract()) * 40.0 - 20.0;
        let s = Complex64::new(a, b);
        worst = worst.max((xi(s)? - xi(1.0 - s)?).norm());
    }
    out.push(Check::at_most("xi_reflection(100 points)", worst, 0.0, 1e-10));
    let calibration = calibrate_xi(q, 1e-6)?;
    out.extend(selected_checks("xi_theta", &calibration));
    let best_printed = calibration
        .candidates
        .iter()
        .filter(|c| c.convention.starts_with("printed"))
        .min_by(|a, b| a.max_deviation.total_cmp(&b.max_deviation));
    if let Some(c) = best_printed {
        out.push(
            Check::at_most("xi_theta.printed.best_sign_deviation", c.max_deviation, 0.0, 1e-6).informational(format!(
                "no choice of residue signs fixes the stated identity; closest {}",
                c.convention
            )),
        );
    }
    let printed = XiConvention::AS_STATED;
    for n in (-4..=4).filter(|&n| n != 0) {
        let f = xi_theta_formula(n, printed, q)?;
        let d = coeff_xi(n, XiMethod::Quadrature, q)?.re;
        out.push(
            Check::close(format!("xi_theta.as_stated[n={n}]"), f, d, 1e-6)
                .informational("the stated Theta-residue identity differs from the quadrature"),
        );
    }
    let integrator = DirectIntegrator::shared(&FunctionSpec::XiWeighted, q)?;
    for n in 1..=6 {
        let (a, b) = (integrator.coefficient(n)?.value, integrator.coefficient(-n)?.value);
        out.push(Check::close(format!("xi_symmetric[n={n}]"), a.re, b.re, 1e-8));
        out.push(Check::at_most(
            format!("xi_real[n={n}]"),
            a.im.abs().max(b.im.abs()),
            0.0,
            1e-8,
        ));
    }
    let a0 = integrator.coefficient(0)?.value.re;
    out.push(Check::close("xi_a0=theta(1)", a0, theta_big(1.0)?, 1e-8));
    out.push(Check::close("xi_a0=0(as stated)", a0, 0.0, 1e-8).informational("the quadrature gives Theta(1), not 0"));
    Ok(out)
}

fn parseval(ctx: &Context<'_>) -> Result<Vec<Check>, CliError> {
    let q = &ctx.q;
    let mut out = Vec::new();
    let n = 12u32;
    for (label, spec) in [
        ("inv_zeta(0.75)", FunctionSpec::InvZeta { sigma: 0.75 }),
        ("xi_weighted", FunctionSpec::XiWeighted),
    ] {
        let table = compute_table(&spec, -(n as i64), n as i64, Method::Quadrature, &ctx.settings, None)?;
        let report = parseval_check(&spec, &table, n, q)?;
        let norm = norm_squared(&spec, q)?;
        out.push(Check::close(
            format!("{label}.norm_routes"),
            norm.real_line,
            norm.periodic,
            2.0 * q.tol,
        ));
        let worst_bessel = report.rhs_by_n.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        out.push(Check::at_most(
            format!("{label}.bessel(N<=12)"),
            worst_bessel,
            report.lhs,
            q.tol,
        ));
        let monotone = report.rhs_by_n.windows(2).all(|w| w[1] >= w[0]);
        out.push(Check::at_most(
            format!("{label}.partial_sums_nondecreasing"),
            if monotone { 0.0 } else { 1.0 },
            0.0,
            0.0,
        ));
        let recon = reconstruction_report(&spec, &table, &[0.0], n, q)?;
        out.push(Check::close(
            format!("{label}.pythagoras"),
            recon.l2_error.powi(2) + report.rhs_partial,
            report.lhs,
            3.0 * q.tol,
        ));
        // An infinite tail bound is reported through the note; JSON has no inf.
        let tol = if report.tail_bound.is_finite() {
            report.tail_bound + 2.0 * q.tol
        } else {
            2.0 * q.tol
        };
        let mut verdict = Check::close(format!("{label}.parseval(N=12)"), report.lhs, report.rhs_partial, tol);
        verdict.pass = report.verdict;
        out.push(verdict.informational(format!(
            "coefficients decay sub-geometrically; the five-point geometric fit (ratio {}) bounds the tail by {:e}",
            report.tail_ratio.map_or("none".into(), |r| format!("{r:.4}")),
            report.tail_bound
        )));
    }
    Ok(out)
}

fn fejer(ctx: &Context<'_>) -> Result<Vec<Check>, CliError> {
    let q = &ctx.q;
    let mut out = Vec::new();
    let spec = FunctionSpec::InvZeta { sigma: 0.75 };
    let x0 = 1.0;
    let target = fejer_target(&spec, x0)?;
    let mut prev: Option<f64> = None;
    let mut last = f64::INFINITY;
    for n in [8u32, 16, 32, 64] {
        let m = fejer_mean_routes(&spec, x0, n, q)?;
        let err = (m.kernel - target).norm();
        if let Some(prev) = prev {
            out.push(Check::at_most(
                format!("error_decreasing[N={n}]"),
                err,
                1.05 * prev,
                0.0,
            ));
        }
        out.push(Check::at_most(format!("routes[N={n}]"), m.route_gap(), 0.0, 1e-7));
        prev = Some(err);
        last = err;
    }
    out.push(Check::at_most("error[N=64]", last, 1e-2, 0.0));
    let one = FunctionSpec::Custom(CustomFn::new("one", |_| Complex64::new(1.0, 0.0)));
    out.push(Check::close(
        "constant_reproduced[N=5]",
        fejer_mean(&one, 0.4, 5, q)?.re,
        1.0,
        1e-9,
    ));
    let bump = FunctionSpec::Custom(CustomFn::new("bump", |y| Complex64::new(1.0 / (1.0 + y * y), 0.0)));
    let low = [-2.5, -1.0, 0.0, 1.7]
        .iter()
        .map(|&x| fejer_mean(&bump, x, 6, q).map(|v| v.re))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    out.push(Check::at_most("positivity", -low, 0.0, q.tol));
    let table = compute_table(&spec, -8, 8, Method::Quadrature, &ctx.settings, None)?;
    let a = partial_sum(&table, 0.3, 8)?;
    let b = partial_sum_kernel(&spec, 0.3, 8, q)?;
    out.push(Check::at_most(
        "partial_sum_dual_route[x=0.3,N=8]",
        (a - b).norm(),
        0.0,
        1e-7,
    ));
    Ok(out)
}
