//! Direct quadrature of a_n = ∫ f e^{2in·arctan(2y)} dμ by two node sets.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::basis::{basis_e, inner_product_routes, periodic_nodes, real_line_nodes, Nodes, QuadratureSpec};
use crate::error::{check_finite, Error, Result};
use crate::specialfn::PrecisionProfile;

use super::spec::FunctionSpec;

/// One directly computed coefficient with its error budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectCoefficient {
    pub value: Complex64,
    pub real_line: Complex64,
    pub periodic: Complex64,
    /// Magnitude of the real-line contribution from y_max/2 < |y| ≤ y_max,
    /// used as the size of the neglected |y| > y_max part.
    pub tail_estimate: f64,
}

impl DirectCoefficient {
    pub fn route_gap(&self) -> f64 {
        (self.real_line - self.periodic).norm()
    }

    pub fn abs_err_est(&self) -> f64 {
        self.route_gap() + self.tail_estimate
    }
}

/// Samples of f − m on a node set, at +y and −y.
struct Sampled {
    nodes: Nodes,
    plus: Vec<Complex64>,
    minus: Vec<Complex64>,
}

impl Sampled {
    fn new(spec: &FunctionSpec, profile: &PrecisionProfile, nodes: Nodes) -> Result<Self> {
        let g = |y: f64| -> Result<Complex64> {
            check_finite(spec.eval_with(profile, y)? - spec.mean_model(y), "integrand sample")
        };
        let plus = nodes.y.iter().map(|&y| g(y)).collect::<Result<Vec<_>>>()?;
        let minus = if spec.is_hermitian() {
            plus.iter().map(|z| z.conj()).collect()
        } else {
            nodes.y.iter().map(|&y| g(-y)).collect::<Result<Vec<_>>>()?
        };
        Ok(Self { nodes, plus, minus })
    }

    fn coefficient(&self, n: i64) -> Complex64 {
        self.nodes.coefficient(&self.plus, &self.minus, n)
    }

    /// Coefficient restricted to nodes with |y| > cut.
    fn outer(&self, n: i64, cut: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.nodes.len() {
            if self.nodes.y[i] > cut {
                let e = Complex64::from_polar(1.0, n as f64 * self.nodes.phi[i]);
                acc += (self.plus[i] * e + self.minus[i] * e.conj()) * self.nodes.weight[i];
            }
        }
        acc
    }
}

/// Node set of a [`DirectIntegrator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    RealLine,
    Periodic,
}

/// One quadrature sample: node, μ-weight and the residual f − m there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub y: f64,
    pub phi: f64,
    pub weight: f64,
    pub residual: Complex64,
}

/// Basis order resolved by integrators built without an explicit order.
pub const DEFAULT_RESOLUTION: u32 = 64;

/// Panel width in y: the spec's analytic width, capped so that a panel spans
/// a bounded number of oscillations of ζ at height y and of e^{inφ} for
/// |n| ≤ `resolution` (dφ/dy = 4/(1+4y²)).
fn panel_width(spec: &FunctionSpec, y: f64, nodes: usize, resolution: u32) -> f64 {
    let oscillation = 6.0 / (1.0 + (1.0 + y / (2.0 * std::f64::consts::PI)).ln());
    let basis = nodes as f64 * (1.0 + 4.0 * y * y) / (6.0 * resolution.max(1) as f64);
    spec.feature_width(y).min(oscillation).min(basis)
}

/// Direct quadrature for many n from a single set of samples.
pub struct DirectIntegrator {
    spec: FunctionSpec,
    q: QuadratureSpec,
    window: f64,
    resolution: u32,
    routes: Option<(Sampled, Sampled)>,
}

impl DirectIntegrator {
    pub fn new(spec: FunctionSpec, q: &QuadratureSpec) -> Result<Self> {
        Self::with_profile(spec, q, &PrecisionProfile::active())
    }

    pub fn with_profile(spec: FunctionSpec, q: &QuadratureSpec, profile: &PrecisionProfile) -> Result<Self> {
        Self::with_options(spec, q, profile, DEFAULT_RESOLUTION)
    }

    /// Integrator accurate for basis orders |n| ≤ `resolution`.
    pub fn with_options(
        spec: FunctionSpec,
        q: &QuadratureSpec,
        profile: &PrecisionProfile,
        resolution: u32,
    ) -> Result<Self> {
        spec.validate()?;
        q.validate()?;
        if let FunctionSpec::ZetaCosV { v, .. } = &spec {
            if v.re < 0.0 {
                return Err(Error::Domain(format!(
                    "zeta times cos^v is unbounded for Re v < 0 (v = {v})"
                )));
            }
        }
        let window = spec.window(q.y_max);
        let routes = if spec.truncates() {
            let width = |y: f64| panel_width(&spec, y, q.nodes, resolution);
            let real = Sampled::new(&spec, profile, real_line_nodes(q, window, &width))?;
            let periodic = Sampled::new(&spec, profile, periodic_nodes(q, window, &width, 0.8))?;
            Some((real, periodic))
        } else {
            None
        };
        Ok(Self {
            spec,
            q: *q,
            window,
            resolution,
            routes,
        })
    }

    /// Integrator shared across callers in this process, keyed by the spec
    /// label and quadrature settings. Custom functions are never shared.
    pub fn shared(spec: &FunctionSpec, q: &QuadratureSpec) -> Result<Arc<Self>> {
        Self::shared_resolving(spec, q, DEFAULT_RESOLUTION)
    }

    /// As [`DirectIntegrator::shared`], resolving at least |n| ≤ `n_max`
    /// (rounded up to a power of two).
    pub fn shared_resolving(spec: &FunctionSpec, q: &QuadratureSpec, n_max: u32) -> Result<Arc<Self>> {
        type Cache = Mutex<HashMap<String, Arc<DirectIntegrator>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let resolution = n_max.max(DEFAULT_RESOLUTION).next_power_of_two();
        let profile = PrecisionProfile::active();
        let build = || Self::with_options(spec.clone(), q, &profile, resolution);
        if matches!(spec, FunctionSpec::Custom(_)) {
            return Ok(Arc::new(build()?));
        }
        let key = format!("{}|{:?}|{:?}|{resolution}", spec.label(), q, profile);
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().expect("integrator cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let built = Arc::new(build()?);
        cache
            .lock()
            .expect("integrator cache poisoned")
            .insert(key, built.clone());
        Ok(built)
    }

    pub fn spec(&self) -> &FunctionSpec {
        &self.spec
    }

    /// Largest |n| the node sets resolve.
    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    /// Number of function samples held.
    pub fn samples(&self) -> usize {
        self.routes
            .as_ref()
            .map_or(0, |(a, b)| 2 * (a.nodes.len() + b.nodes.len()))
    }

    /// Half-width of the sampled window in y.
    pub fn window(&self) -> f64 {
        self.window
    }

    /// Visits every sample of `route` at +y and −y. Custom functions hold
    /// no samples and fail with `InvalidSpec`.
    pub fn for_each_sample(&self, route: Route, mut visit: impl FnMut(Sample)) -> Result<()> {
        let Some((real, periodic)) = &self.routes else {
            return Err(Error::InvalidSpec(format!("{} is not sampled", self.spec.label())));
        };
        let s = match route {
            Route::RealLine => real,
            Route::Periodic => periodic,
        };
        for i in 0..s.nodes.len() {
            let (y, phi, weight) = (s.nodes.y[i], s.nodes.phi[i], s.nodes.weight[i]);
            visit(Sample {
                y,
                phi,
                weight,
                residual: s.plus[i],
            });
            visit(Sample {
                y: -y,
                phi: -phi,
                weight,
                residual: s.minus[i],
            });
        }
        Ok(())
    }

    /// Both routes for a_n without the agreement check.
    pub fn routes(&self, n: i64) -> Result<DirectCoefficient> {
        if n.unsigned_abs() > self.resolution as u64 {
            return Err(Error::Domain(format!(
                "|n| = {} exceeds the resolved order {}",
                n.abs(),
                self.resolution
            )));
        }
        match &self.routes {
            Some((real, periodic)) => {
                let mean = self.spec.mean_coefficient(n)?;
                let a = real.coefficient(n) + mean;
                let b = periodic.coefficient(n) + mean;
                let tail = if matches!(self.spec, FunctionSpec::XiWeighted) {
                    0.0
                } else {
                    real.outer(n, 0.5 * self.window).norm()
                };
                Ok(DirectCoefficient {
                    value: a,
                    real_line: a,
                    periodic: b,
                    tail_estimate: tail,
                })
            }
            None => {
                let FunctionSpec::Custom(c) = &self.spec else {
                    unreachable!("only custom functions skip truncation")
                };
                let f = c.f.clone();
                let (a, b) = inner_product_routes(move |y| f(y), move |y| basis_e(n, y), &self.q)?;
                Ok(DirectCoefficient {
                    value: a,
                    real_line: a,
                    periodic: b,
                    tail_estimate: 0.0,
                })
            }
        }
    }

    /// a_n, failing when the routes disagree by more than 2·tol.
    pub fn coefficient(&self, n: i64) -> Result<DirectCoefficient> {
        let c = self.routes(n)?;
        if c.route_gap() > 2.0 * self.q.tol {
            return Err(Error::RouteDisagreement {
                real_line: c.real_line,
                periodic: c.periodic,
            });
        }
        Ok(c)
    }
}

/// a_n of `spec` by direct quadrature; the real-line value.
pub fn coeff_direct(spec: &FunctionSpec, n: i64, q: &QuadratureSpec) -> Result<Complex64> {
    let n_max = u32::try_from(n.unsigned_abs()).map_err(|_| Error::Domain(format!("n = {n} out of range")))?;
    Ok(DirectIntegrator::shared_resolving(spec, q, n_max)?
        .coefficient(n)?
        .value)
}
