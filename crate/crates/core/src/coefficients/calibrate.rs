//! The calibration pass: every reading of a residue or series formula is
//! compared with direct quadrature, and the reading that agrees is registered
//! as the convention of its family.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::QuadratureSpec;
use crate::error::Result;

use super::convention::{register, Family, SumConvention, ZeroSumConvention};
use super::direct::{DirectCoefficient, DirectIntegrator};
use super::residue::{bar_formula, hat_formula, HatConvention};
use super::spec::{FunctionSpec, WeightVariant};
use super::tilde::{coeff_tilde_series, tilde_negative_formula, TildeConvention};
use super::xi::{xi_theta_formula, XiConvention};
use super::zeros::ZeroTable;

/// Deviation of one formula value from quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Deviation {
    pub n: i64,
    /// Parameter distinguishing repeated n (σ, or 0 when unused).
    pub param: f64,
    pub formula: Complex64,
    pub quadrature: Complex64,
    pub deviation: f64,
    pub tol: f64,
}

/// All comparisons made for one reading of a formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub convention: String,
    pub deviations: Vec<Deviation>,
    pub max_deviation: f64,
    /// max over the comparisons of deviation / tol; ≤ 1 passes.
    pub worst_ratio: f64,
    pub pass: bool,
}

impl Candidate {
    fn new(convention: String, deviations: Vec<Deviation>) -> Self {
        let max_deviation = deviations.iter().map(|d| d.deviation).fold(0.0, f64::max);
        let worst_ratio = deviations.iter().map(|d| d.deviation / d.tol).fold(0.0, f64::max);
        Self {
            convention,
            deviations,
            max_deviation,
            worst_ratio,
            pass: worst_ratio <= 1.0,
        }
    }
}

/// Outcome of calibrating one family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub family: String,
    pub candidates: Vec<Candidate>,
    /// The passing candidate with the smallest worst ratio, if any.
    pub selected: Option<String>,
}

impl CalibrationReport {
    fn new(family: impl Into<String>, candidates: Vec<Candidate>) -> Self {
        let selected = candidates
            .iter()
            .filter(|c| c.pass)
            .min_by(|a, b| a.worst_ratio.total_cmp(&b.worst_ratio))
            .map(|c| c.convention.clone());
        Self {
            family: family.into(),
            candidates,
            selected,
        }
    }

    pub fn candidate(&self, convention: &str) -> Option<&Candidate> {
        self.candidates.iter().find(|c| c.convention == convention)
    }

    /// The candidate closest to passing.
    pub fn best(&self) -> Option<&Candidate> {
        self.candidates
            .iter()
            .min_by(|a, b| a.worst_ratio.total_cmp(&b.worst_ratio))
    }
}

fn direct_values(spec: FunctionSpec, ns: &[i64], q: &QuadratureSpec) -> Result<Vec<DirectCoefficient>> {
    let integrator = DirectIntegrator::shared(&spec, q)?;
    ns.iter().map(|&n| integrator.coefficient(n)).collect()
}

fn deviation(n: i64, param: f64, formula: Complex64, quadrature: Complex64, tol: f64) -> Deviation {
    Deviation {
        n,
        param,
        formula,
        quadrature,
        deviation: (formula - quadrature).norm(),
        tol,
    }
}

/// ā_n for n = 0..=6 under each [`SumConvention`] against the quadrature
/// of 1/ζ(σ + iy); registers the agreeing convention.
pub fn calibrate_bar(sigma: f64, q: &QuadratureSpec, tol: f64) -> Result<CalibrationReport> {
    let ns: Vec<i64> = (0..=6).collect();
    let direct = direct_values(FunctionSpec::InvZeta { sigma }, &ns, q)?;
    let mut candidates = Vec::new();
    for conv in SumConvention::all() {
        let mut devs = Vec::new();
        for (&n, d) in ns.iter().zip(&direct) {
            devs.push(deviation(n, sigma, bar_formula(sigma, n, conv)?, d.value, tol));
        }
        candidates.push(Candidate::new(conv.to_string(), devs));
    }
    let report = CalibrationReport::new(Family::Bar.to_string(), candidates);
    if let Some(sel) = &report.selected {
        let conv = SumConvention::all().into_iter().find(|c| &c.to_string() == sel);
        register(Family::Bar, &conv.expect("selected convention exists"));
    }
    Ok(report)
}

/// â_n for n = −4..=4 under each pair of conventions against the quadrature
/// of 1/ζ(σ − iy), within the S-tail estimate plus the quadrature error.
pub fn calibrate_hat(
    sigma: f64,
    zeros: &ZeroTable,
    k_trivial_max: u32,
    q: &QuadratureSpec,
) -> Result<CalibrationReport> {
    let ns: Vec<i64> = (-4..=4).collect();
    let direct = direct_values(FunctionSpec::InvZetaConj { sigma }, &ns, q)?;
    let mut candidates = Vec::new();
    let mut all = Vec::new();
    for sum in SumConvention::all() {
        for zero_sum in ZeroSumConvention::all() {
            let mut devs = Vec::new();
            for (&n, d) in ns.iter().zip(&direct) {
                let v = hat_formula(sigma, n, zeros, k_trivial_max, sum, zero_sum)?;
                devs.push(deviation(n, sigma, v.value, d.value, v.tail + d.abs_err_est() + 1e-12));
            }
            let conv = HatConvention { sum, zero_sum };
            candidates.push(Candidate::new(conv.to_string(), devs));
            all.push(conv);
        }
    }
    let report = CalibrationReport::new(Family::Hat.to_string(), candidates);
    if let Some(sel) = &report.selected {
        let conv = all.iter().find(|c| &c.to_string() == sel);
        register(Family::Hat, conv.expect("selected convention exists"));
    }
    Ok(report)
}

/// The n < 0 closed form (v = 1) for n = −1..=−4 under each
/// [`TildeConvention`], compared only with the quadrature of its own weight
/// variant, at every σ in `sigmas`.
pub fn calibrate_tilde_negative(sigmas: &[f64], q: &QuadratureSpec, tol: f64) -> Result<CalibrationReport> {
    let ns: Vec<i64> = (-4..=-1).collect();
    let v = Complex64::new(1.0, 0.0);
    let mut direct = Vec::new();
    for &sigma in sigmas {
        for variant in WeightVariant::ALL {
            let values = direct_values(FunctionSpec::ZetaCosV { sigma, v, variant }, &ns, q)?;
            direct.push((sigma, variant, values));
        }
    }
    let mut candidates = Vec::new();
    for conv in TildeConvention::all() {
        let mut devs = Vec::new();
        for (sigma, variant, values) in &direct {
            if *variant != conv.variant {
                continue;
            }
            for (&n, d) in ns.iter().zip(values) {
                let f = Complex64::new(tilde_negative_formula(*sigma, n, conv)?, 0.0);
                devs.push(deviation(n, *sigma, f, d.value, tol));
            }
        }
        candidates.push(Candidate::new(conv.to_string(), devs));
    }
    let report = CalibrationReport::new(Family::TildeNegative.to_string(), candidates);
    if let Some(sel) = &report.selected {
        let conv = TildeConvention::all().into_iter().find(|c| &c.to_string() == sel);
        register(Family::TildeNegative, &conv.expect("selected convention exists"));
    }
    Ok(report)
}

/// The Whittaker series for n in `ns`, as printed and re-derived, against
/// the quadrature of each weight variant. Nothing is registered: the series
/// carries no convention switch, and this report documents which variant
/// (if any) each form describes.
pub fn tilde_series_report(
    sigma: f64,
    v: Complex64,
    ns: &[i64],
    q: &QuadratureSpec,
    k_max: usize,
    tol: f64,
) -> Result<CalibrationReport> {
    let series = ns
        .iter()
        .map(|&n| coeff_tilde_series(sigma, v, n, k_max, tol * 1e-2))
        .collect::<Result<Vec<_>>>()?;
    let mut candidates = Vec::new();
    for variant in WeightVariant::ALL {
        let direct = direct_values(FunctionSpec::ZetaCosV { sigma, v, variant }, ns, q)?;
        for rederived in [false, true] {
            let mut devs = Vec::new();
            for ((&n, s), d) in ns.iter().zip(&series).zip(&direct) {
                let f = if rederived { s.rederived } else { s.value };
                devs.push(deviation(n, sigma, f, d.value, tol));
            }
            let form = if rederived { "rederived" } else { "printed" };
            candidates.push(Candidate::new(format!("{form},{}", variant.name()), devs));
        }
    }
    Ok(CalibrationReport::new("tilde-series", candidates))
}

/// The Theta route for n = ±1..=±4 under each [`XiConvention`] against the
/// quadrature of (¼ + y²)Ξ(y); registers the agreeing convention.
pub fn calibrate_xi(q: &QuadratureSpec, tol: f64) -> Result<CalibrationReport> {
    let ns: Vec<i64> = (-4..=4).filter(|&n| n != 0).collect();
    let direct = direct_values(FunctionSpec::XiWeighted, &ns, q)?;
    let mut candidates = Vec::new();
    for conv in XiConvention::all() {
        let mut devs = Vec::new();
        for (&n, d) in ns.iter().zip(&direct) {
            let f = Complex64::new(xi_theta_formula(n, conv, q)?, 0.0);
            devs.push(deviation(n, 0.0, f, d.value, tol));
        }
        candidates.push(Candidate::new(conv.to_string(), devs));
    }
    let report = CalibrationReport::new(Family::Xi.to_string(), candidates);
    if let Some(sel) = &report.selected {
        let conv = XiConvention::all().into_iter().find(|c| &c.to_string() == sel);
        register(Family::Xi, &conv.expect("selected convention exists"));
    }
    Ok(report)
}

/// The registered convention of `family` among `candidates`.
pub fn calibrated<T: std::fmt::Display>(family: Family, candidates: Vec<T>) -> Option<T> {
    let name = super::convention::registered(family)?;
    candidates.into_iter().find(|c| c.to_string() == name)
}
