//! WebAssembly bindings for the demo page in `www/`. Each export has a
//! plain-Rust twin returning `Result<_, String>` so it runs natively too.

// `!(a < b)` is the idiom for rejecting NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use wasm_bindgen::prelude::*;
use zeta_fourier::analysis::reconstruction_report;
use zeta_fourier::basis::QuadratureSpec;
use zeta_fourier::coefficients::{compute_table, FunctionSpec, Method, TableSettings};
use zeta_fourier::specialfn::zeta;
use zeta_fourier::Complex64;

/// `inv-zeta`, `inv-zeta-conj` or `xi-weighted`; σ is ignored for the last.
pub fn spec_for(function: &str, sigma: f64) -> Result<FunctionSpec, String> {
    let spec = match function {
        "inv-zeta" => FunctionSpec::InvZeta { sigma },
        "inv-zeta-conj" => FunctionSpec::InvZetaConj { sigma },
        "xi-weighted" => FunctionSpec::XiWeighted,
        other => return Err(format!("unknown function {other:?}")),
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

/// [Re ζ(s), Im ζ(s), Re 1/ζ(s), Im 1/ζ(s)] at s = σ + it.
pub fn zeta_point(sigma: f64, t: f64) -> Result<Vec<f64>, String> {
    let z = zeta(Complex64::new(sigma, t)).map_err(|e| e.to_string())?;
    let inv = z.inv();
    Ok(vec![z.re, z.im, inv.re, inv.im])
}

/// Quadrature coefficients a_n, n_min ≤ n ≤ n_max, as CSV.
pub fn coefficient_csv(function: &str, sigma: f64, n_min: i32, n_max: i32) -> Result<String, String> {
    if n_max < n_min || n_max - n_min > 64 {
        return Err("choose a range of at most 65 indices".into());
    }
    let spec = spec_for(function, sigma)?;
    let table = compute_table(
        &spec,
        n_min as i64,
        n_max as i64,
        Method::Quadrature,
        &TableSettings::default(),
        None,
    )
    .map_err(|e| e.to_string())?;
    Ok(table.to_csv())
}

/// Partial sum S_N against f on `count` points of [lo, hi], as JSON.
pub fn reconstruction_json(
    function: &str,
    sigma: f64,
    order: u32,
    lo: f64,
    hi: f64,
    count: u32,
) -> Result<String, String> {
    if !(lo < hi) || !(2..=400).contains(&count) || order > 64 {
        return Err("need lo < hi, 2..400 points and N <= 64".into());
    }
    let spec = spec_for(function, sigma)?;
    let n = order as i64;
    let table =
        compute_table(&spec, -n, n, Method::Quadrature, &TableSettings::default(), None).map_err(|e| e.to_string())?;
    let grid: Vec<f64> = (0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect();
    let report =
        reconstruction_report(&spec, &table, &grid, order, &QuadratureSpec::default()).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = zetaPoint)]
pub fn zeta_point_js(sigma: f64, t: f64) -> Result<Vec<f64>, JsError> {
    zeta_point(sigma, t).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = coefficientCsv)]
pub fn coefficient_csv_js(function: &str, sigma: f64, n_min: i32, n_max: i32) -> Result<String, JsError> {
    coefficient_csv(function, sigma, n_min, n_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = reconstructionJson)]
pub fn reconstruction_json_js(
    function: &str,
    sigma: f64,
    order: u32,
    lo: f64,
    hi: f64,
    count: u32,
) -> Result<String, JsError> {
    reconstruction_json(function, sigma, order, lo, hi, count).map_err(|e| JsError::new(&e))
}
