use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("pole at {0}")]
    Pole(Complex64),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("tolerance not met: {what} (estimate {estimate:e}, tolerance {tol:e})")]
    Tolerance { what: String, estimate: f64, tol: f64 },
    #[error("reciprocal of a value too close to zero: |{0}|")]
    ZeroDivision(f64),
    #[error("degenerate Whittaker parameters: {0}")]
    DegenerateParam(String),
    #[error("quadrature routes disagree: real-line {real_line}, periodic {periodic}")]
    RouteDisagreement { real_line: Complex64, periodic: Complex64 },
    #[error("convention for {0} has not been calibrated")]
    ConventionUnvalidated(String),
    #[error("S(n, sigma) tail estimate {tail:e} exceeds tolerance {tol:e}")]
    TailTooLarge { tail: f64, tol: f64 },
    #[error("series tail estimate {tail:e} exceeds tolerance {tol:e} at k_max = {k_max}")]
    SlowConvergence { tail: f64, tol: f64, k_max: usize },
    #[error("index {n} outside table range [{min}, {max}]")]
    IndexRange { n: i64, min: i64, max: i64 },
    #[error("invalid function spec: {0}")]
    InvalidSpec(String),
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("zero table line {line}: {message}")]
    ZeroParse { line: usize, message: String },
    #[error("zero table line {line}: ordinates must be strictly increasing")]
    ZeroOrder { line: usize },
    #[error("zero table failed a sanity check: {0}")]
    ZeroSanity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn tolerance(what: impl Into<String>, estimate: f64, tol: f64) -> Error {
    Error::Tolerance {
        what: what.into(),
        estimate,
        tol,
    }
}

pub(crate) fn check_finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}
