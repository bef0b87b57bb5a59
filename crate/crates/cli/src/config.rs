//! Run configuration: `key=value` lines, overridable key by key.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use zeta_fourier::basis::QuadratureSpec;
use zeta_fourier::coefficients::{meta_hash, TableSettings};
use zeta_fourier::specialfn::PrecisionProfile;

/// Every accepted key, in file order.
pub const KEYS: [&str; 11] = [
    "quadrature.nodes",
    "quadrature.y_max",
    "quadrature.tol",
    "zeta.em_terms",
    "zeta.em_bernoulli",
    "deriv.radius",
    "deriv.nodes",
    "series.k_max",
    "zeros.count",
    "zeros.path",
    "cache.dir",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    /// 1-based line of the offending entry; 0 for overrides.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "config line {}: {}", self.line, self.message)
        } else {
            write!(f, "config: {}", self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub quadrature_nodes: usize,
    pub quadrature_y_max: f64,
    pub quadrature_tol: f64,
    pub zeta_em_terms: usize,
    pub zeta_em_bernoulli: usize,
    pub deriv_radius: f64,
    pub deriv_nodes: usize,
    pub series_k_max: usize,
    pub zeros_count: usize,
    /// Zero file read instead of the imported or bundled table.
    pub zeros_path: Option<PathBuf>,
    pub cache_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let q = QuadratureSpec::default();
        let p = PrecisionProfile::default();
        Self {
            quadrature_nodes: q.nodes,
            quadrature_y_max: q.y_max,
            quadrature_tol: q.tol,
            zeta_em_terms: p.em_terms,
            zeta_em_bernoulli: p.em_bernoulli,
            deriv_radius: p.deriv_radius,
            deriv_nodes: p.deriv_nodes,
            series_k_max: TableSettings::default().series_k_max,
            zeros_count: 100,
            zeros_path: None,
            cache_dir: PathBuf::from(".zfourier-cache"),
        }
    }
}

fn positive_count(key: &str, value: &str) -> Result<usize, String> {
    match value.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("{key} must be a positive integer, got {value:?}")),
    }
}

fn positive_real(key: &str, value: &str) -> Result<f64, String> {
    match value.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("{key} must be a positive number, got {value:?}")),
    }
}

impl RunConfig {
    /// Sets one key; unknown keys and non-positive numbers are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let value = value.trim();
        match key {
            "quadrature.nodes" => self.quadrature_nodes = positive_count(key, value)?,
            "quadrature.y_max" => self.quadrature_y_max = positive_real(key, value)?,
            "quadrature.tol" => self.quadrature_tol = positive_real(key, value)?,
            "zeta.em_terms" => self.zeta_em_terms = positive_count(key, value)?,
            "zeta.em_bernoulli" => self.zeta_em_bernoulli = positive_count(key, value)?,
            "deriv.radius" => self.deriv_radius = positive_real(key, value)?,
            "deriv.nodes" => self.deriv_nodes = positive_count(key, value)?,
            "series.k_max" => self.series_k_max = positive_count(key, value)?,
            "zeros.count" => self.zeros_count = positive_count(key, value)?,
            "zeros.path" | "cache.dir" => {
                if value.is_empty() {
                    return Err(format!("{key} must not be empty"));
                }
                if key == "zeros.path" {
                    self.zeros_path = Some(PathBuf::from(value));
                } else {
                    self.cache_dir = PathBuf::from(value);
                }
            }
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Defaults updated by the `key=value` lines of `text`; blank lines and
    /// `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut config = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ConfigError { line: i + 1, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got {line:?}")))?;
            config.set(key.trim(), value).map_err(err)?;
        }
        config.validate().map_err(|message| ConfigError { line: 0, message })?;
        Ok(config)
    }

    /// Applies `(key, value)` overrides in order.
    pub fn with_overrides<'a>(
        mut self,
        overrides: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, ConfigError> {
        for (key, value) in overrides {
            self.set(key, value)
                .map_err(|message| ConfigError { line: 0, message })?;
        }
        self.validate().map_err(|message| ConfigError { line: 0, message })?;
        Ok(self)
    }

    /// Checks the constraints the library places on the values.
    pub fn validate(&self) -> Result<(), String> {
        self.quadrature().validate().map_err(|e| e.to_string())?;
        self.profile().validate().map_err(|e| e.to_string())?;
        Ok(())
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        QuadratureSpec {
            nodes: self.quadrature_nodes,
            y_max: self.quadrature_y_max,
            tol: self.quadrature_tol,
            ..QuadratureSpec::default()
        }
    }

    pub fn profile(&self) -> PrecisionProfile {
        PrecisionProfile {
            em_terms: self.zeta_em_terms,
            em_bernoulli: self.zeta_em_bernoulli,
            deriv_radius: self.deriv_radius,
            deriv_nodes: self.deriv_nodes,
            ..PrecisionProfile::default()
        }
    }

    pub fn settings(&self) -> TableSettings {
        TableSettings {
            quadrature: self.quadrature(),
            series_k_max: self.series_k_max,
            ..TableSettings::default()
        }
    }

    /// Entries that influence results; `cache.dir` only says where they go.
    pub fn entries(&self) -> BTreeMap<String, String> {
        let mut e = BTreeMap::new();
        e.insert("quadrature.nodes".into(), self.quadrature_nodes.to_string());
        e.insert("quadrature.y_max".into(), format!("{:e}", self.quadrature_y_max));
        e.insert("quadrature.tol".into(), format!("{:e}", self.quadrature_tol));
        e.insert("zeta.em_terms".into(), self.zeta_em_terms.to_string());
        e.insert("zeta.em_bernoulli".into(), self.zeta_em_bernoulli.to_string());
        e.insert("deriv.radius".into(), format!("{:e}", self.deriv_radius));
        e.insert("deriv.nodes".into(), self.deriv_nodes.to_string());
        e.insert("series.k_max".into(), self.series_k_max.to_string());
        e.insert("zeros.count".into(), self.zeros_count.to_string());
        e.insert(
            "zeros.path".into(),
            self.zeros_path
                .as_ref()
                .map_or_else(String::new, |p| p.display().to_string()),
        );
        e
    }

    pub fn hash(&self) -> String {
        meta_hash(&self.entries())
    }
}
