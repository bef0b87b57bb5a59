//! Coefficient tables over an index range with reproducible metadata.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::basis::QuadratureSpec;
use crate::error::{Error, Result};
use crate::specialfn::{theta_big, PrecisionProfile};

use super::calibrate::calibrated;
use super::convention::{Family, SumConvention, ZeroSumConvention};
use super::direct::DirectIntegrator;
use super::residue::{coeff_bar, coeff_hat};
use super::spec::FunctionSpec;
use super::tilde::{coeff_tilde_negative_calibrated, coeff_tilde_series, TildeConvention};
use super::xi::{coeff_xi, XiConvention, XiMethod};
use super::zeros::ZeroTable;

/// Route that produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Quadrature,
    Residue,
    WhittakerSeries,
    ThetaIntegral,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Quadrature,
        Method::Residue,
        Method::WhittakerSeries,
        Method::ThetaIntegral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Residue => "residue",
            Method::WhittakerSeries => "whittaker-series",
            Method::ThetaIntegral => "theta-integral",
        }
    }

    /// Parses a method name; `whittaker` and `theta` are accepted as short forms.
    pub fn parse(name: &str) -> Option<Method> {
        match name {
            "quadrature" => Some(Method::Quadrature),
            "residue" => Some(Method::Residue),
            "whittaker" | "whittaker-series" => Some(Method::WhittakerSeries),
            "theta" | "theta-integral" | "theta-residue" => Some(Method::ThetaIntegral),
            _ => None,
        }
    }
}

/// Form of the Whittaker series written to tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesForm {
    /// [`TildeSeries::value`](super::TildeSeries)
    Printed,
    /// [`TildeSeries::rederived`](super::TildeSeries)
    Rederived,
}

impl SeriesForm {
    pub fn name(self) -> &'static str {
        match self {
            SeriesForm::Printed => "printed",
            SeriesForm::Rederived => "rederived",
        }
    }
}

/// Parameters of table construction besides the function and range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableSettings {
    pub quadrature: QuadratureSpec,
    /// Trivial zeros included in S(n, σ).
    pub k_trivial_max: u32,
    /// Largest cutoff of the Whittaker series.
    pub series_k_max: usize,
    pub series_tol: f64,
    pub series_form: SeriesForm,
    /// Largest accepted S-tail estimate.
    pub hat_tol: f64,
}

impl Default for TableSettings {
    fn default() -> Self {
        Self {
            quadrature: QuadratureSpec::default(),
            k_trivial_max: 30,
            series_k_max: 100_000,
            series_tol: 1e-8,
            series_form: SeriesForm::Printed,
            hat_tol: 1e-2,
        }
    }
}

/// Metadata entries and their SHA-256 digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMeta {
    pub entries: BTreeMap<String, String>,
    pub hash: String,
}

impl TableMeta {
    pub fn new(entries: BTreeMap<String, String>) -> Self {
        let hash = meta_hash(&entries);
        Self { entries, hash }
    }
}

/// SHA-256 over the `key=value` lines of `entries` in key order.
pub fn meta_hash(entries: &BTreeMap<String, String>) -> String {
    let mut h = Sha256::new();
    for (k, v) in entries {
        h.update(k.as_bytes());
        h.update(b"=");
        h.update(v.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// a_n for n_min ≤ n ≤ n_max with per-entry error estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub spec: String,
    pub n_min: i64,
    pub n_max: i64,
    pub values: Vec<Complex64>,
    pub abs_err: Vec<f64>,
    pub method: Method,
    pub meta: TableMeta,
}

impl CoefficientTable {
    /// Evaluates `f` at every n of the range, spreading the indices over
    /// worker threads; results are assembled by index.
    pub fn build<F>(spec: String, n_min: i64, n_max: i64, method: Method, meta: TableMeta, f: F) -> Result<Self>
    where
        F: Fn(i64) -> Result<(Complex64, f64)> + Sync,
    {
        if n_min > n_max {
            return Err(Error::Domain(format!("empty index range {n_min}..{n_max}")));
        }
        let ns: Vec<i64> = (n_min..=n_max).collect();
        let workers = std::thread::available_parallelism()
            .map_or(1, |p| p.get())
            .min(ns.len());
        let chunk = ns.len().div_ceil(workers);
        // Targets without threads (wasm32) report no parallelism and stay inline.
        let results: Vec<Result<(Complex64, f64)>> = if workers <= 1 {
            ns.iter().map(|&n| f(n)).collect()
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = ns
                    .chunks(chunk)
                    .map(|part| {
                        let f = &f;
                        scope.spawn(move || part.iter().map(|&n| f(n)).collect::<Vec<_>>())
                    })
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("coefficient worker panicked"))
                    .collect()
            })
        };
        let mut values = Vec::with_capacity(ns.len());
        let mut abs_err = Vec::with_capacity(ns.len());
        for r in results {
            let (v, e) = r?;
            values.push(v);
            abs_err.push(e);
        }
        Ok(Self {
            spec,
            n_min,
            n_max,
            values,
            abs_err,
            method,
            meta,
        })
    }

    /// A table from given values (for callers with their own coefficients).
    pub fn from_values(spec: String, n_min: i64, values: Vec<Complex64>, method: Method) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("empty coefficient table".into()));
        }
        let n_max = n_min + values.len() as i64 - 1;
        let mut entries = BTreeMap::new();
        entries.insert("function".into(), spec.clone());
        entries.insert("method".into(), method.name().into());
        entries.insert("n_min".into(), n_min.to_string());
        entries.insert("n_max".into(), n_max.to_string());
        Ok(Self {
            spec,
            n_min,
            n_max,
            abs_err: vec![0.0; values.len()],
            values,
            method,
            meta: TableMeta::new(entries),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn index(&self, n: i64) -> Result<usize> {
        if n < self.n_min || n > self.n_max {
            return Err(Error::IndexRange {
                n,
                min: self.n_min,
                max: self.n_max,
            });
        }
        Ok((n - self.n_min) as usize)
    }

    pub fn get(&self, n: i64) -> Result<Complex64> {
        Ok(self.values[self.index(n)?])
    }

    pub fn err(&self, n: i64) -> Result<f64> {
        Ok(self.abs_err[self.index(n)?])
    }

    /// Fails unless −n..=n lies in the table.
    pub fn require_symmetric(&self, n: u32) -> Result<()> {
        self.index(-(n as i64))?;
        self.index(n as i64)?;
        Ok(())
    }

    /// `n,re,im,method,abs_err_est` rows with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re,im,method,abs_err_est\n");
        for (i, (v, e)) in self.values.iter().zip(&self.abs_err).enumerate() {
            let _ = writeln!(
                out,
                "{},{:.16e},{:.16e},{},{:.16e}",
                self.n_min + i as i64,
                v.re,
                v.im,
                self.method.name(),
                e
            );
        }
        out
    }

    /// Parses the output of [`CoefficientTable::to_csv`]; metadata is
    /// limited to what the rows carry.
    pub fn from_csv(spec: String, text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some("n,re,im,method,abs_err_est") {
            return Err(Error::Domain("coefficient CSV header mismatch".into()));
        }
        let mut n_min = None;
        let mut values = Vec::new();
        let mut abs_err = Vec::new();
        let mut method = None;
        for (i, line) in lines.enumerate() {
            let bad = || Error::Domain(format!("coefficient CSV row {}: {line:?}", i + 2));
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 5 {
                return Err(bad());
            }
            let n: i64 = cols[0].parse().map_err(|_| bad())?;
            let start = *n_min.get_or_insert(n);
            if n != start + values.len() as i64 {
                return Err(bad());
            }
            let re: f64 = cols[1].parse().map_err(|_| bad())?;
            let im: f64 = cols[2].parse().map_err(|_| bad())?;
            method = Some(Method::parse(cols[3]).ok_or_else(bad)?);
            abs_err.push(cols[4].parse().map_err(|_| bad())?);
            values.push(Complex64::new(re, im));
        }
        let (Some(n_min), Some(method)) = (n_min, method) else {
            return Err(Error::Domain("coefficient CSV has no rows".into()));
        };
        let mut table = Self::from_values(spec, n_min, values, method)?;
        table.abs_err = abs_err;
        Ok(table)
    }
}

fn quadrature_entries(q: &QuadratureSpec, e: &mut BTreeMap<String, String>) {
    e.insert("quadrature.nodes".into(), q.nodes.to_string());
    e.insert("quadrature.y_max".into(), format!("{:e}", q.y_max));
    e.insert("quadrature.tol".into(), format!("{:e}", q.tol));
    e.insert("quadrature.scheme".into(), format!("{:?}", q.scheme));
}

/// Metadata of a table computed by [`compute_table`].
pub fn table_meta(
    spec: &FunctionSpec,
    n_min: i64,
    n_max: i64,
    method: Method,
    settings: &TableSettings,
    zeros: Option<&ZeroTable>,
) -> TableMeta {
    let mut e = BTreeMap::new();
    e.insert("function".into(), spec.label());
    e.insert("method".into(), method.name().into());
    e.insert("n_min".into(), n_min.to_string());
    e.insert("n_max".into(), n_max.to_string());
    quadrature_entries(&settings.quadrature, &mut e);
    let p = PrecisionProfile::active();
    e.insert("zeta.em_terms".into(), p.em_terms.to_string());
    e.insert("zeta.em_bernoulli".into(), p.em_bernoulli.to_string());
    e.insert("deriv.radius".into(), format!("{:e}", p.deriv_radius));
    e.insert("deriv.nodes".into(), p.deriv_nodes.to_string());
    match method {
        Method::Residue => {
            e.insert("k_trivial_max".into(), settings.k_trivial_max.to_string());
            e.insert("hat_tol".into(), format!("{:e}", settings.hat_tol));
            if let Some(z) = zeros {
                e.insert("zeros.count".into(), z.count().to_string());
                e.insert("zeros.last".into(), format!("{:e}", z.betas()[z.count() - 1]));
            }
        }
        Method::WhittakerSeries => {
            e.insert("series.k_max".into(), settings.series_k_max.to_string());
            e.insert("series.tol".into(), format!("{:e}", settings.series_tol));
            e.insert("series.form".into(), settings.series_form.name().into());
        }
        Method::Quadrature | Method::ThetaIntegral => {}
    }
    for (family, name) in [
        (Family::Bar, "convention.bar"),
        (Family::Hat, "convention.hat"),
        (Family::TildeNegative, "convention.tilde_negative"),
        (Family::Xi, "convention.xi"),
    ] {
        let needed = matches!(
            (method, spec, family),
            (Method::Residue, FunctionSpec::InvZeta { .. }, Family::Bar)
                | (Method::Residue, FunctionSpec::InvZetaConj { .. }, Family::Hat)
                | (Method::Residue, FunctionSpec::ZetaCosV { .. }, Family::TildeNegative)
                | (Method::ThetaIntegral, FunctionSpec::XiWeighted, Family::Xi)
        );
        if needed {
            let conv = super::convention::registered(family).unwrap_or_else(|| "uncalibrated".into());
            e.insert(name.into(), conv);
        }
    }
    TableMeta::new(e)
}

fn unsupported(method: Method, spec: &FunctionSpec, why: &str) -> Error {
    Error::InvalidSpec(format!(
        "method {} does not apply to {}: {why}",
        method.name(),
        spec.label()
    ))
}

/// Checks that `method` applies to `spec` over the range, before any work.
pub fn check_method(
    spec: &FunctionSpec,
    n_min: i64,
    n_max: i64,
    method: Method,
    zeros: Option<&ZeroTable>,
) -> Result<()> {
    spec.validate()?;
    if n_min > n_max {
        return Err(Error::Domain(format!("empty index range {n_min}..{n_max}")));
    }
    match (method, spec) {
        (Method::Quadrature, _) => Ok(()),
        (Method::Residue, FunctionSpec::InvZeta { .. }) => Ok(()),
        (Method::Residue, FunctionSpec::InvZetaConj { .. }) => match zeros {
            Some(_) => Ok(()),
            None => Err(unsupported(method, spec, "a zero table is required")),
        },
        (Method::Residue, FunctionSpec::ZetaCosV { v, .. }) => {
            if n_max >= 0 {
                Err(unsupported(method, spec, "the closed form covers n < 0 only"))
            } else if *v != Complex64::new(1.0, 0.0) {
                Err(unsupported(method, spec, "the closed form is the v = 1 case"))
            } else {
                Ok(())
            }
        }
        (Method::WhittakerSeries, FunctionSpec::ZetaCosV { .. }) => {
            if n_min < 1 {
                Err(unsupported(method, spec, "the series covers n >= 1 only"))
            } else {
                Ok(())
            }
        }
        (Method::ThetaIntegral, FunctionSpec::XiWeighted) => {
            if n_min < -12 || n_max > 12 {
                Err(unsupported(method, spec, "the Theta route covers |n| <= 12"))
            } else {
                Ok(())
            }
        }
        _ => Err(unsupported(method, spec, "no such route")),
    }
}

/// The coefficient table of `spec` over `n_min..=n_max` by `method`.
/// Residue and Theta routes use the conventions registered by calibration
/// and fail with `ConventionUnvalidated` before it has run.
pub fn compute_table(
    spec: &FunctionSpec,
    n_min: i64,
    n_max: i64,
    method: Method,
    settings: &TableSettings,
    zeros: Option<&ZeroTable>,
) -> Result<CoefficientTable> {
    check_method(spec, n_min, n_max, method, zeros)?;
    let meta = table_meta(spec, n_min, n_max, method, settings, zeros);
    let q = &settings.quadrature;
    let label = spec.label();
    let unvalidated = |family: Family| Error::ConventionUnvalidated(family.to_string());
    match (method, spec) {
        (Method::Quadrature, _) => {
            let reach = n_min.unsigned_abs().max(n_max.unsigned_abs());
            let reach = u32::try_from(reach).map_err(|_| Error::Domain("index range too large".into()))?;
            let integrator = DirectIntegrator::shared_resolving(spec, q, reach)?;
            CoefficientTable::build(label, n_min, n_max, method, meta, |n| {
                let c = integrator.coefficient(n)?;
                Ok((c.value, c.abs_err_est()))
            })
        }
        (Method::Residue, FunctionSpec::InvZeta { sigma }) => {
            let conv = calibrated(Family::Bar, SumConvention::all()).ok_or_else(|| unvalidated(Family::Bar))?;
            CoefficientTable::build(label, n_min, n_max, method, meta, |n| {
                Ok((coeff_bar(*sigma, n, conv)?, 0.0))
            })
        }
        (Method::Residue, FunctionSpec::InvZetaConj { sigma }) => {
            let zeros = zeros.expect("checked above");
            let mut all = Vec::new();
            for s in SumConvention::all() {
                for z in ZeroSumConvention::all() {
                    all.push(super::residue::HatConvention { sum: s, zero_sum: z });
                }
            }
            let conv = calibrated(Family::Hat, all).ok_or_else(|| unvalidated(Family::Hat))?;
            CoefficientTable::build(label, n_min, n_max, method, meta, |n| {
                let v = coeff_hat(
                    *sigma,
                    n,
                    zeros,
                    settings.k_trivial_max,
                    (conv.sum, conv.zero_sum),
                    settings.hat_tol,
                )?;
                Ok((v.value, v.tail))
            })
        }
        (Method::Residue, FunctionSpec::ZetaCosV { sigma, variant, .. }) => {
            let conv = calibrated(Family::TildeNegative, TildeConvention::all())
                .ok_or_else(|| unvalidated(Family::TildeNegative))?;
            if conv.variant != *variant {
                return Err(unsupported(
                    method,
                    spec,
                    &format!("the closed form was calibrated for the {} weight", conv.variant.name()),
                ));
            }
            CoefficientTable::build(label, n_min, n_max, method, meta, |n| {
                Ok((
                    Complex64::new(coeff_tilde_negative_calibrated(*sigma, n, conv)?, 0.0),
                    0.0,
                ))
            })
        }
        (Method::WhittakerSeries, FunctionSpec::ZetaCosV { sigma, v, .. }) => {
            CoefficientTable::build(label, n_min, n_max, method, meta, |n| {
                let s = coeff_tilde_series(*sigma, *v, n, settings.series_k_max, settings.series_tol)?;
                let value = match settings.series_form {
                    SeriesForm::Printed => s.value,
                    SeriesForm::Rederived => s.rederived,
                };
                Ok((value, s.error_estimate))
            })
        }
        (Method::ThetaIntegral, FunctionSpec::XiWeighted) => {
            let conv = calibrated(Family::Xi, XiConvention::all()).ok_or_else(|| unvalidated(Family::Xi))?;
            CoefficientTable::build(label, n_min, n_max, method, meta, |n| {
                if n == 0 {
                    return Ok((Complex64::new(theta_big(1.0)?, 0.0), 0.0));
                }
                Ok((coeff_xi(n, XiMethod::ThetaResidue(conv), q)?, q.tol))
            })
        }
        _ => unreachable!("check_method rejects other combinations"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meta_hash_is_order_independent_and_sensitive() {
        let mut a = BTreeMap::new();
        a.insert("b".to_string(), "2".to_string());
        a.insert("a".to_string(), "1".to_string());
        let mut b = BTreeMap::new();
        b.insert("a".to_string(), "1".to_string());
        b.insert("b".to_string(), "2".to_string());
        assert_eq!(meta_hash(&a), meta_hash(&b));
        b.insert("b".to_string(), "3".to_string());
        assert_ne!(meta_hash(&a), meta_hash(&b));
        assert_eq!(meta_hash(&a).len(), 64);
    }

    #[test]
    fn csv_round_trip() {
        let t = CoefficientTable::from_values(
            "test".into(),
            -1,
            vec![
                Complex64::new(0.1, -0.2),
                Complex64::new(1.0 / 3.0, 0.0),
                Complex64::new(-2.5e-17, 7.0),
            ],
            Method::Quadrature,
        )
        .unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("n,re,im,method,abs_err_est\n-1,"));
        let back = CoefficientTable::from_csv("test".into(), &csv).unwrap();
        assert_eq!(back.values, t.values);
        assert_eq!((back.n_min, back.n_max), (-1, 1));
        assert!(matches!(t.get(2), Err(Error::IndexRange { .. })));
    }

    #[test]
    fn method_applicability() {
        let tilde = FunctionSpec::ZetaCosV {
            sigma: 0.9,
            v: Complex64::new(1.0, 0.0),
            variant: super::super::spec::WeightVariant::HalfAngle,
        };
        assert!(check_method(&tilde, -2, -1, Method::WhittakerSeries, None).is_err());
        assert!(check_method(&tilde, 1, 3, Method::WhittakerSeries, None).is_ok());
        assert!(check_method(&tilde, -2, 0, Method::Residue, None).is_err());
        let inv = FunctionSpec::InvZetaConj { sigma: 0.75 };
        assert!(check_method(&inv, -1, 1, Method::Residue, None).is_err());
        assert!(check_method(&FunctionSpec::XiWeighted, -13, 0, Method::ThetaIntegral, None).is_err());
        assert!(check_method(&FunctionSpec::XiWeighted, 0, 3, Method::WhittakerSeries, None).is_err());
    }
}
