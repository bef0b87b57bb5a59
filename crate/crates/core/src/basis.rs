//! The measure dμ = dy / (2π(¼ + y²)), the map φ = 2·arctan(2x), the basis
//! e_n(x) = e^{−2in·arctan(2x)}, the Dirichlet and Fejér kernels, and the
//! node sets used to integrate against μ.
//!
//! Integrals against μ are available in two forms: the real-line form in y
//! and the periodic form (1/2π)∫_{−π}^{π} g(½·tan(φ/2)) dφ. The two use
//! different panels and rules, so their agreement is a discretisation check.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{tolerance, Error, Result};
use crate::quadrature::{tanh_sinh_rule, GaussLegendre};

/// Panel rule used by the composite quadratures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    TanhSinh,
    GaussLegendreComposite,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::TanhSinh => "tanh-sinh",
            Scheme::GaussLegendreComposite => "gauss-legendre-composite",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tanh-sinh" => Ok(Scheme::TanhSinh),
            "gauss-legendre-composite" | "gauss-legendre" => Ok(Scheme::GaussLegendreComposite),
            other => Err(Error::Domain(format!("unknown quadrature scheme '{other}'"))),
        }
    }
}

/// Parameters of every μ-integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Points per panel.
    pub nodes: usize,
    /// Real-line truncation for integrands that oscillate at infinity.
    pub y_max: f64,
    pub scheme: Scheme,
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            nodes: 16,
            y_max: 5e3,
            scheme: Scheme::GaussLegendreComposite,
            tol: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nodes < 2 {
            return Err(Error::Domain("quadrature.nodes must be at least 2".into()));
        }
        if !(self.y_max > 0.0 && self.y_max.is_finite()) {
            return Err(Error::Domain("quadrature.y_max must be positive".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Domain("quadrature.tol must be positive".into()));
        }
        Ok(())
    }

    /// μ-mass of |y| > y_max, 1 − (2/π)·arctan(2·y_max).
    pub fn tail_mass(&self) -> f64 {
        // arctan complement, accurate for large y_max
        (2.0 / PI) * (1.0 / (2.0 * self.y_max)).atan()
    }

    /// Nodes and weights of the panel rule on [-1, 1] with `m` points.
    fn rule(&self, m: usize) -> (Vec<f64>, Vec<f64>) {
        match self.scheme {
            Scheme::GaussLegendreComposite => {
                let r = GaussLegendre::get(m);
                (r.nodes.clone(), r.weights.clone())
            }
            Scheme::TanhSinh => tanh_sinh_rule(2 * m + 1),
        }
    }
}

/// Density of μ, 1/(2π(¼ + y²)).
pub fn mu_density(y: f64) -> f64 {
    1.0 / (2.0 * PI * (0.25 + y * y))
}

/// φ = 2·arctan(2x) ∈ (−π, π).
pub fn phi_of_x(x: f64) -> f64 {
    2.0 * (2.0 * x).atan()
}

/// x = ½·tan(φ/2), the inverse of [`phi_of_x`]. The half angle matters:
/// x = ½·tan(φ) would map e_n to e^{−2inφ} rather than e^{−inφ}.
pub fn x_of_phi(phi: f64) -> Result<f64> {
    if !(phi.abs() < PI) {
        return Err(Error::Domain(format!("|phi| must be below pi, got {phi}")));
    }
    Ok(0.5 * (0.5 * phi).tan())
}

/// e_n(x) = e^{−2in·arctan(2x)} = e^{−inφ}.
pub fn basis_e(n: i64, x: f64) -> Complex64 {
    Complex64::from_polar(1.0, -(n as f64) * phi_of_x(x))
}

/// D_N(x) = sin((N+½)x) / sin(x/2), equal to 2N+1 at x ≡ 0 (mod 2π).
pub fn dirichlet_kernel(n: u32, x: f64) -> f64 {
    let s = (0.5 * x).sin();
    if s.abs() < 1e-6 {
        return 1.0 + 2.0 * (1..=n).map(|k| (k as f64 * x).cos()).sum::<f64>();
    }
    ((n as f64 + 0.5) * x).sin() / s
}

/// K_N(x) = (1/(N+1)) Σ_{k≤N} D_k(x) = (1/(N+1)) (sin((N+1)x/2) / sin(x/2))².
pub fn fejer_kernel(n: u32, x: f64) -> f64 {
    let m = n as f64 + 1.0;
    let s = (0.5 * x).sin();
    if s.abs() < 1e-6 {
        return (0..=n).map(|k| dirichlet_kernel(k, x)).sum::<f64>() / m;
    }
    let r = (0.5 * m * x).sin() / s;
    r * r / m
}

/// Nodes on y > 0 with their μ-weights; the full rule is symmetric, the node
/// at −y carrying the same weight.
#[derive(Debug, Clone, Default)]
pub struct Nodes {
    pub y: Vec<f64>,
    pub phi: Vec<f64>,
    pub weight: Vec<f64>,
}

impl Nodes {
    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    fn push(&mut self, y: f64, phi: f64, weight: f64) {
        self.y.push(y);
        self.phi.push(phi);
        self.weight.push(weight);
    }

    fn extend(&mut self, other: Nodes) {
        self.y.extend(other.y);
        self.phi.extend(other.phi);
        self.weight.extend(other.weight);
    }

    /// Σ_i w_i (g(y_i) e^{inφ_i} + g(−y_i) e^{−inφ_i}), i.e. the
    /// coefficient integral ∫ g e^{2in·arctan(2y)} dμ, from samples at +y
    /// and −y.
    pub fn coefficient(&self, plus: &[Complex64], minus: &[Complex64], n: i64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.len() {
            let e = Complex64::from_polar(1.0, n as f64 * self.phi[i]);
            acc += (plus[i] * e + minus[i] * e.conj()) * self.weight[i];
        }
        acc
    }

    /// ∫ g dμ from samples at +y and −y.
    pub fn integrate(&self, plus: &[Complex64], minus: &[Complex64]) -> Complex64 {
        self.coefficient(plus, minus, 0)
    }
}

/// Splits [0, hi] into panels whose width at the left edge is `width(x)`.
fn partition(hi: f64, width: &dyn Fn(f64) -> f64) -> Vec<f64> {
    let mut edges = vec![0.0];
    let mut x = 0.0;
    while x < hi {
        let w = width(x).max(1e-9);
        x = if x + 1.5 * w >= hi { hi } else { x + w };
        edges.push(x);
    }
    edges
}

/// Real-line rule on [−hi, hi]: panels in y of width `width(y)`.
pub fn real_line_nodes(q: &QuadratureSpec, hi: f64, width: &dyn Fn(f64) -> f64) -> Nodes {
    let (rx, rw) = q.rule(q.nodes);
    let mut out = Nodes::default();
    for e in partition(hi, width).windows(2) {
        let c = 0.5 * (e[0] + e[1]);
        let h = 0.5 * (e[1] - e[0]);
        for (x, w) in rx.iter().zip(&rw) {
            let y = c + h * x;
            out.push(y, phi_of_x(y), h * w * mu_density(y));
        }
    }
    out
}

/// Periodic rule on |φ| ≤ 2·arctan(2·hi): panels in φ whose width is
/// `stretch` times the image of `width(y)`, with four more points per panel
/// than the real-line rule.
pub fn periodic_nodes(q: &QuadratureSpec, hi: f64, width: &dyn Fn(f64) -> f64, stretch: f64) -> Nodes {
    let (rx, rw) = q.rule(q.nodes + 4);
    let phi_hi = phi_of_x(hi);
    let phi_width = |phi: f64| {
        let y = 0.5 * (0.5 * phi).tan();
        stretch * width(y) * 4.0 / (1.0 + 4.0 * y * y)
    };
    let mut out = Nodes::default();
    for e in partition(phi_hi, &phi_width).windows(2) {
        let c = 0.5 * (e[0] + e[1]);
        let h = 0.5 * (e[1] - e[0]);
        for (x, w) in rx.iter().zip(&rw) {
            let phi = c + h * x;
            out.push(0.5 * (0.5 * phi).tan(), phi, h * w / (2.0 * PI));
        }
    }
    out
}

/// Uniform panels in φ over (lo, hi) ⊂ (0, π).
fn uniform_phi_nodes(q: &QuadratureSpec, lo: f64, hi: f64, panels: usize) -> Nodes {
    let (rx, rw) = q.rule(q.nodes);
    let mut out = Nodes::default();
    let step = (hi - lo) / panels as f64;
    for p in 0..panels {
        let a = lo + p as f64 * step;
        let c = a + 0.5 * step;
        let h = 0.5 * step;
        for (x, w) in rx.iter().zip(&rw) {
            let phi = c + h * x;
            out.push(0.5 * (0.5 * phi).tan(), phi, h * w / (2.0 * PI));
        }
    }
    out
}

/// Real-line rule over all of ℝ: y = ½·sinh(u) panels up to `q.y_max`,
/// completed by φ-panels on the image of |y| > y_max.
fn graded_nodes(q: &QuadratureSpec, panels: usize) -> Nodes {
    let (rx, rw) = q.rule(q.nodes);
    let u_max = (2.0 * q.y_max).asinh();
    let step = u_max / panels as f64;
    let mut out = Nodes::default();
    for p in 0..panels {
        let c = (p as f64 + 0.5) * step;
        let h = 0.5 * step;
        for (x, w) in rx.iter().zip(&rw) {
            let u = c + h * x;
            let y = 0.5 * u.sinh();
            // dμ = du / (π cosh u)
            out.push(y, phi_of_x(y), h * w / (PI * u.cosh()));
        }
    }
    out.extend(uniform_phi_nodes(q, phi_of_x(q.y_max), PI, (panels / 8).max(2)));
    out
}

fn sample<F: Fn(f64) -> Complex64>(f: &F, nodes: &Nodes) -> (Vec<Complex64>, Vec<Complex64>) {
    (
        nodes.y.iter().map(|&y| f(y)).collect(),
        nodes.y.iter().map(|&y| f(-y)).collect(),
    )
}

const MAX_DOUBLINGS: u32 = 10;

fn refine<F>(q: &QuadratureSpec, what: &str, start: usize, mut estimate: F) -> Result<Complex64>
where
    F: FnMut(usize) -> Complex64,
{
    let mut panels = start;
    let mut prev = estimate(panels);
    for _ in 0..MAX_DOUBLINGS {
        panels *= 2;
        let cur = estimate(panels);
        if !(cur.re.is_finite() && cur.im.is_finite()) {
            return Err(Error::NonFinite(what.into()));
        }
        if (cur - prev).norm() <= q.tol {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(tolerance(format!("{what} under panel doubling"), f64::NAN, q.tol))
}

/// ⟨f, g⟩ = ∫ f · conj(g) dμ over ℝ, by the real-line and periodic forms.
/// Each form doubles its panel count until consecutive values agree within
/// `q.tol`; the forms must then agree within 2·tol. Returns the real-line
/// value.
pub fn inner_product<F, G>(f: F, g: G, q: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    let (real_line, periodic) = inner_product_routes(f, g, q)?;
    if (real_line - periodic).norm() > 2.0 * q.tol {
        return Err(Error::RouteDisagreement { real_line, periodic });
    }
    Ok(real_line)
}

/// max_{|m|,|n|≤M} |⟨e_m, e_n⟩ − δ_{mn}|. The integrand e_m·conj(e_n) is
/// e_{m−n} pointwise, so each difference k = m − n is integrated once.
pub fn orthonormality_defect(max: u32, q: &QuadratureSpec) -> Result<f64> {
    let span = 2 * max as i64;
    let mut worst: f64 = 0.0;
    for k in 0..=span {
        let ip = inner_product(move |y| basis_e(k, y), |_| Complex64::new(1.0, 0.0), q)?;
        let delta = if k == 0 { 1.0 } else { 0.0 };
        // ⟨e_{−k}, e_0⟩ is the conjugate
        worst = worst.max((ip - delta).norm());
    }
    Ok(worst)
}

/// Both forms of [`inner_product`] without the agreement check.
pub fn inner_product_routes<F, G>(f: F, g: G, q: &QuadratureSpec) -> Result<(Complex64, Complex64)>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    q.validate()?;
    let h = |y: f64| f(y) * g(y).conj();
    let real_line = refine(q, "real-line inner product", 8, |p| {
        let nodes = graded_nodes(q, p);
        let (a, b) = sample(&h, &nodes);
        nodes.integrate(&a, &b)
    })?;
    let periodic = refine(q, "periodic inner product", 4, |p| {
        let nodes = uniform_phi_nodes(q, 0.0, PI, p);
        let (a, b) = sample(&h, &nodes);
        nodes.integrate(&a, &b)
    })?;
    Ok((real_line, periodic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn measure_basics() {
        assert_abs_diff_eq!(mu_density(0.0), 2.0 / PI, epsilon = 1e-15);
        assert_eq!(mu_density(1.7), mu_density(-1.7));
        let q = QuadratureSpec::default();
        let one = |_: f64| Complex64::new(1.0, 0.0);
        assert_abs_diff_eq!(inner_product(one, one, &q).unwrap().re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(q.tail_mass(), 1.0 - 2.0 / PI * (1e4f64).atan(), epsilon = 1e-15);
    }

    #[test]
    fn angle_map() {
        assert_eq!(phi_of_x(0.0), 0.0);
        assert_abs_diff_eq!(phi_of_x(0.5), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(phi_of_x(-0.5), -PI / 2.0, epsilon = 1e-15);
        for &x in &[-30.0, -0.2, 0.0, 0.7, 12.5] {
            assert_abs_diff_eq!(x_of_phi(phi_of_x(x)).unwrap(), x, epsilon = 1e-14 * (1.0 + x * x));
        }
        assert!(x_of_phi(PI).is_err());
        assert!(x_of_phi(-4.0).is_err());
    }

    #[test]
    fn basis_values() {
        for n in -5..=5 {
            assert_abs_diff_eq!(basis_e(n, 0.0).re, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(basis_e(n, 0.83).norm(), 1.0, epsilon = 1e-15);
        }
        assert_eq!(basis_e(0, 3.1), Complex64::new(1.0, 0.0));
        let x = 0.37;
        let phi = phi_of_x(x);
        assert!((basis_e(3, x) - Complex64::from_polar(1.0, -3.0 * phi)).norm() < 1e-15);
    }

    #[test]
    fn orthonormal_pairs() {
        let q = QuadratureSpec::default();
        let e3 = |y: f64| basis_e(3, y);
        assert_abs_diff_eq!(inner_product(e3, e3, &q).unwrap().re, 1.0, epsilon = 1e-10);
        let e2 = |y: f64| basis_e(2, y);
        let e5 = |y: f64| basis_e(5, y);
        assert!(inner_product(e2, e5, &q).unwrap().norm() < 1e-10);
    }

    #[test]
    fn kernels() {
        for n in 0..6u32 {
            assert_abs_diff_eq!(dirichlet_kernel(n, 0.0), 2.0 * n as f64 + 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(fejer_kernel(n, 0.0), n as f64 + 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(dirichlet_kernel(n, 2.0 * PI), 2.0 * n as f64 + 1.0, epsilon = 1e-9);
        }
        assert_abs_diff_eq!(dirichlet_kernel(0, 1.3), 1.0, epsilon = 1e-15);
        for k in 0..200 {
            let x = -PI + 2.0 * PI * k as f64 / 199.0;
            assert!(fejer_kernel(7, x) >= 0.0);
            let direct: f64 = (-7i32..=7).map(|j| (j as f64 * x).cos()).sum();
            assert_abs_diff_eq!(dirichlet_kernel(7, x), direct, epsilon = 1e-12);
        }
        let gl = GaussLegendre::get(64);
        let mean = |f: &dyn Fn(f64) -> f64| gl.on(-PI, PI).map(|(x, w)| w * f(x)).sum::<f64>() / (2.0 * PI);
        assert_abs_diff_eq!(mean(&|x| dirichlet_kernel(5, x)), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mean(&|x| fejer_kernel(5, x)), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn node_sets_carry_unit_mass() {
        let q = QuadratureSpec::default();
        let w = |_: f64| 0.5;
        let hi: f64 = 40.0;
        let expect = 1.0 - 2.0 / PI * (1.0 / (2.0 * hi)).atan();
        let a = real_line_nodes(&q, hi, &w);
        let b = periodic_nodes(&q, hi, &w, 0.8);
        assert_abs_diff_eq!(2.0 * a.weight.iter().sum::<f64>(), expect, epsilon = 1e-13);
        assert_abs_diff_eq!(2.0 * b.weight.iter().sum::<f64>(), expect, epsilon = 1e-13);
    }

    #[test]
    fn tanh_sinh_scheme_is_usable() {
        let q = QuadratureSpec {
            scheme: Scheme::TanhSinh,
            ..QuadratureSpec::default()
        };
        let e1 = |y: f64| basis_e(1, y);
        assert_abs_diff_eq!(inner_product(e1, e1, &q).unwrap().re, 1.0, epsilon = 1e-10);
        assert_eq!("tanh-sinh".parse::<Scheme>().unwrap(), Scheme::TanhSinh);
    }
}
