//! Quadrature rules: Gauss–Legendre (fixed and composite) and the
//! double-exponential family (tanh-sinh on finite intervals, exp-sinh on
//! half lines).

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{tolerance, Result};

/// Nodes and weights of an m-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    fn compute(m: usize) -> Self {
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        let half = m.div_ceil(2);
        for i in 0..half {
            // Tricomi initial guess, then Newton on P_m
            let mut x = ((i as f64 + 0.75) / (m as f64 + 0.5) * PI).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=m {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let p = if m == 0 { 1.0 } else { p1 };
                let pm1 = if m == 1 { 1.0 } else { p0 };
                dp = m as f64 * (x * p - pm1) / (x * x - 1.0);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Cached rule with `m` points.
    pub fn get(m: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("quadrature cache poisoned");
        guard
            .entry(m)
            .or_insert_with(|| Arc::new(GaussLegendre::compute(m)))
            .clone()
    }

    /// Mapped nodes and weights on [a, b].
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (c + h * x, h * w))
    }
}

/// Fixed m-point tanh-sinh rule on [-1, 1] (m >= 3), t in [-3, 3].
pub fn tanh_sinh_rule(m: usize) -> (Vec<f64>, Vec<f64>) {
    let m = m.max(3);
    let t_max = 3.0;
    let h = 2.0 * t_max / (m - 1) as f64;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for k in 0..m {
        let t = -t_max + k as f64 * h;
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        nodes.push(u.tanh());
        weights.push(h * FRAC_PI_2 * t.cosh() / (cu * cu));
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre over consecutive panels `[breaks[i], breaks[i+1]]`.
pub fn composite_gauss_legendre<F>(mut f: F, breaks: &[f64], m: usize) -> Complex64
where
    F: FnMut(f64) -> Complex64,
{
    let rule = GaussLegendre::get(m);
    let mut sum = Complex64::new(0.0, 0.0);
    for w in breaks.windows(2) {
        for (x, wt) in rule.on(w[0], w[1]) {
            sum += f(x) * wt;
        }
    }
    sum
}

/// Result of an adaptive double-exponential integration.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

const DE_MAX_LEVEL: u32 = 12;

/// Tanh-sinh integration of `f` over `[a, b]`.
///
/// `f` receives `(x, distance_to_a, distance_to_b)` so that integrands with
/// endpoint singularities can be evaluated without cancellation.
pub fn tanh_sinh<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Estimate>
where
    F: FnMut(f64, f64, f64) -> Complex64,
{
    let half = 0.5 * (b - a);
    let t_max = 3.5;
    // Σ|f·w| tracks the scale for integrals that cancel to ~0
    let abs_sum = std::cell::Cell::new(0.0);
    let mut eval = |t: f64| -> Complex64 {
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cu * cu);
        // distance from the nearer endpoint, computed without cancellation
        let d = half * (-u.abs()).exp() / cu;
        if d <= 0.0 || w * half < 1e-300 {
            return Complex64::new(0.0, 0.0);
        }
        let (x, da, db) = if t < 0.0 {
            (a + d, d, 2.0 * half - d)
        } else {
            (b - d, 2.0 * half - d, d)
        };
        let v = f(x, da, db) * (w * half);
        abs_sum.set(abs_sum.get() + v.norm());
        v
    };
    let mut h = 0.5;
    let mut n_eval = 1usize;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= t_max {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        n_eval += 2;
        k += 1;
    }
    let mut prev = sum * h;
    for _level in 1..=DE_MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= t_max {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            n_eval += 2;
            k += 2;
        }
        let cur = sum * h;
        let err = (cur - prev).norm();
        let scale = cur.norm().max(abs_sum.get() * h / 2.0);
        if err <= tol * scale || err < 1e-300 {
            return Ok(Estimate {
                value: cur,
                error: err,
                evaluations: n_eval,
            });
        }
        prev = cur;
    }
    Err(tolerance("tanh-sinh refinement", (sum * h - prev).norm(), tol))
}

/// Exp-sinh integration of `f` over `(0, ∞)`; `f` must decay at infinity.
pub fn exp_sinh<F>(mut f: F, tol: f64) -> Result<Estimate>
where
    F: FnMut(f64) -> Complex64,
{
    let abs_sum = std::cell::Cell::new(0.0);
    let mut eval = |t: f64| -> Complex64 {
        let x = (FRAC_PI_2 * t.sinh()).exp();
        if !(x.is_finite()) || x == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let v = f(x);
        if v.re.is_nan() || v.im.is_nan() {
            return Complex64::new(0.0, 0.0);
        }
        let v = v * (FRAC_PI_2 * t.cosh() * x);
        abs_sum.set(abs_sum.get() + v.norm());
        v
    };
    // find the truncation range on the coarsest grid
    let h0 = 0.5;
    let mut n_eval = 1usize;
    let centre = eval(0.0);
    let mut sum = centre;
    let mut scale = centre.norm();
    let mut t_hi = 0.0;
    let mut t_lo = 0.0;
    for dir in [1.0f64, -1.0] {
        let mut small = 0;
        let mut k = 1;
        loop {
            let t = dir * k as f64 * h0;
            let v = eval(t);
            n_eval += 1;
            sum += v;
            scale = scale.max(v.norm());
            if v.norm() <= 1e-18 * scale {
                small += 1;
            } else {
                small = 0;
            }
            if small >= 2 || t.abs() > 6.0 {
                break;
            }
            k += 1;
        }
        if dir > 0.0 {
            t_hi = k as f64 * h0;
        } else {
            t_lo = -(k as f64) * h0;
        }
    }
    let mut h = h0;
    let mut prev = sum * h;
    for _level in 1..=DE_MAX_LEVEL {
        h *= 0.5;
        let mut t = t_lo + h;
        while t < t_hi {
            sum += eval(t);
            n_eval += 1;
            t += 2.0 * h;
        }
        let cur = sum * h;
        let err = (cur - prev).norm();
        let scale = cur.norm().max(abs_sum.get() * h / 2.0);
        if err <= tol * scale || err < 1e-300 {
            return Ok(Estimate {
                value: cur,
                error: err,
                evaluations: n_eval,
            });
        }
        prev = cur;
    }
    Err(tolerance("exp-sinh refinement", (sum * h - prev).norm(), tol))
}
