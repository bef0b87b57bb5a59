//! Descriptions of the functions being expanded.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::tanh_sinh;
use crate::specialfn::{big_xi, is_nonpositive_integer, zeta, PrecisionProfile};

/// Which cosine power multiplies ζ in [`FunctionSpec::ZetaCosV`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightVariant {
    /// cos^v(arctan 2y) = (1 + 4y²)^{−v/2}
    HalfAngle,
    /// cos^v(2·arctan 2y) = ((1 − 4y²)/(1 + 4y²))^v
    DoubleAngle,
}

impl WeightVariant {
    pub const ALL: [WeightVariant; 2] = [WeightVariant::HalfAngle, WeightVariant::DoubleAngle];

    pub fn name(self) -> &'static str {
        match self {
            WeightVariant::HalfAngle => "half-angle",
            WeightVariant::DoubleAngle => "double-angle",
        }
    }

    /// The cosine whose v-th power is the weight, as a function of y.
    fn base(self, y: f64) -> f64 {
        match self {
            WeightVariant::HalfAngle => 1.0 / (1.0 + 4.0 * y * y).sqrt(),
            WeightVariant::DoubleAngle => (1.0 - 4.0 * y * y) / (1.0 + 4.0 * y * y),
        }
    }

    /// The same cosine as a function of φ = 2·arctan(2y).
    fn base_phi(self, phi: f64) -> f64 {
        match self {
            WeightVariant::HalfAngle => (0.5 * phi).cos(),
            WeightVariant::DoubleAngle => phi.cos(),
        }
    }
}

/// Principal power b^v of a real base.
fn real_pow(base: f64, v: Complex64) -> Complex64 {
    if base == 0.0 {
        return if v.re > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    let log = Complex64::new(base.abs().ln(), if base < 0.0 { PI } else { 0.0 });
    (v * log).exp()
}

/// A caller-supplied function of y with a label used in metadata.
#[derive(Clone)]
pub struct CustomFn {
    pub label: String,
    pub f: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl CustomFn {
    pub fn new(label: impl Into<String>, f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for CustomFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomFn({})", self.label)
    }
}

/// The function f(y) whose coefficients a_n = ∫ f e^{2in·arctan(2y)} dμ are
/// computed.
#[derive(Debug, Clone)]
pub enum FunctionSpec {
    /// 1/ζ(σ + iy)
    InvZeta {
        sigma: f64,
    },
    /// 1/ζ(σ − iy)
    InvZetaConj {
        sigma: f64,
    },
    /// ζ(σ + iy) times the v-th power of the variant's cosine
    ZetaCosV {
        sigma: f64,
        v: Complex64,
        variant: WeightVariant,
    },
    /// (¼ + y²) Ξ(y)
    XiWeighted,
    Custom(CustomFn),
}

impl FunctionSpec {
    pub fn validate(&self) -> Result<()> {
        let check_sigma = |sigma: f64| {
            if sigma > 0.5 && sigma < 1.0 {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!("sigma must lie in (1/2, 1), got {sigma}")))
            }
        };
        match self {
            FunctionSpec::InvZeta { sigma } | FunctionSpec::InvZetaConj { sigma } => check_sigma(*sigma),
            FunctionSpec::ZetaCosV { sigma, v, .. } => {
                check_sigma(*sigma)?;
                if is_nonpositive_integer(*v / 2.0) && v.re < 0.0 {
                    return Err(Error::InvalidSpec(format!("v = {v} is a negative even integer")));
                }
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::InvalidSpec("v must be finite".into()));
                }
                Ok(())
            }
            FunctionSpec::XiWeighted | FunctionSpec::Custom(_) => Ok(()),
        }
    }

    /// Stable text form used in metadata and cache keys.
    pub fn label(&self) -> String {
        match self {
            FunctionSpec::InvZeta { sigma } => format!("inv-zeta(sigma={sigma:?})"),
            FunctionSpec::InvZetaConj { sigma } => format!("inv-zeta-conj(sigma={sigma:?})"),
            FunctionSpec::ZetaCosV { sigma, v, variant } => format!(
                "zeta-cos-v(sigma={sigma:?},v={:?}{:+?}i,variant={})",
                v.re,
                v.im,
                variant.name()
            ),
            FunctionSpec::XiWeighted => "xi-weighted".to_string(),
            FunctionSpec::Custom(c) => format!("custom({})", c.label),
        }
    }

    /// f(y).
    pub fn eval(&self, y: f64) -> Result<Complex64> {
        self.eval_with(&PrecisionProfile::active(), y)
    }

    pub fn eval_with(&self, profile: &PrecisionProfile, y: f64) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        match self {
            FunctionSpec::InvZeta { sigma } => Ok(one / profile.zeta(Complex64::new(*sigma, y))?),
            FunctionSpec::InvZetaConj { sigma } => Ok(one / profile.zeta(Complex64::new(*sigma, -y))?),
            FunctionSpec::ZetaCosV { sigma, v, variant } => {
                Ok(profile.zeta(Complex64::new(*sigma, y))? * real_pow(variant.base(y), *v))
            }
            FunctionSpec::XiWeighted => Ok(Complex64::new((0.25 + y * y) * big_xi(y)?, 0.0)),
            FunctionSpec::Custom(c) => Ok((c.f)(y)),
        }
    }

    /// f(−y) = conj(f(y)) for every y.
    pub fn is_hermitian(&self) -> bool {
        match self {
            FunctionSpec::InvZeta { .. } | FunctionSpec::InvZetaConj { .. } | FunctionSpec::XiWeighted => true,
            FunctionSpec::ZetaCosV { v, .. } => v.im == 0.0,
            FunctionSpec::Custom(_) => false,
        }
    }

    /// Asymptotic mean m(y) subtracted before truncating the real line; its
    /// coefficients are integrated over the whole circle by
    /// [`FunctionSpec::mean_coefficient`].
    pub fn mean_model(&self, y: f64) -> Complex64 {
        match self {
            FunctionSpec::InvZeta { .. } | FunctionSpec::InvZetaConj { .. } => Complex64::new(1.0, 0.0),
            FunctionSpec::ZetaCosV { v, variant, .. } => real_pow(variant.base(y), *v),
            FunctionSpec::XiWeighted | FunctionSpec::Custom(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// ∫ m e^{2in·arctan(2y)} dμ = (1/π) ∫_0^π m(φ) cos(nφ) dφ (m is even in φ).
    pub fn mean_coefficient(&self, n: i64) -> Result<Complex64> {
        match self {
            FunctionSpec::InvZeta { .. } | FunctionSpec::InvZetaConj { .. } => Ok(if n == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }),
            FunctionSpec::ZetaCosV { v, variant, .. } => {
                let (v, variant) = (*v, *variant);
                let g = |phi: f64| real_pow(variant.base_phi(phi), v) * (n as f64 * phi).cos();
                // the double-angle cosine changes sign at π/2
                let pieces: &[(f64, f64)] = match variant {
                    WeightVariant::HalfAngle => &[(0.0, PI)],
                    WeightVariant::DoubleAngle => &[(0.0, 0.5 * PI), (0.5 * PI, PI)],
                };
                let mut acc = Complex64::new(0.0, 0.0);
                for &(a, b) in pieces {
                    acc += tanh_sinh(|phi, _, _| g(phi), a, b, 1e-14)?.value;
                }
                Ok(acc / PI)
            }
            FunctionSpec::XiWeighted | FunctionSpec::Custom(_) => Ok(Complex64::new(0.0, 0.0)),
        }
    }

    /// Mean of |f|² over heights near |y| for large |y|: the Dirichlet
    /// series mean squares Σμ²(k)k^{−2σ} = ζ(2σ)/ζ(4σ) for 1/ζ and ζ(2σ)
    /// for ζ, times the squared weight.
    pub fn mean_square(&self, y: f64) -> Result<f64> {
        match self {
            FunctionSpec::InvZeta { sigma } | FunctionSpec::InvZetaConj { sigma } => {
                Ok(zeta(Complex64::new(2.0 * sigma, 0.0))?.re / zeta(Complex64::new(4.0 * sigma, 0.0))?.re)
            }
            FunctionSpec::ZetaCosV { sigma, v, variant } => {
                Ok(zeta(Complex64::new(2.0 * sigma, 0.0))?.re * real_pow(variant.base(y), *v).norm_sqr())
            }
            FunctionSpec::XiWeighted | FunctionSpec::Custom(_) => Ok(0.0),
        }
    }

    /// Integrand oscillates without decay, so the real line is truncated.
    pub fn truncates(&self) -> bool {
        !matches!(self, FunctionSpec::Custom(_))
    }

    /// Half-width of the real-line window actually needed.
    pub fn window(&self, y_max: f64) -> f64 {
        match self {
            // (¼ + y²)Ξ(y) < 1e-25 beyond y = 120
            FunctionSpec::XiWeighted => y_max.min(120.0),
            _ => y_max,
        }
    }

    /// Largest panel width at y that keeps the panel rule spectrally
    /// accurate: twice the distance to the nearest complex singularity of f,
    /// capped at ½.
    pub fn feature_width(&self, y: f64) -> f64 {
        let cap = 0.5;
        match self {
            FunctionSpec::InvZeta { sigma } | FunctionSpec::InvZetaConj { sigma } => {
                // zeros of ζ sit at distance σ − ½ from the real y-axis
                (2.0 * (sigma - 0.5)).min(cap)
            }
            FunctionSpec::ZetaCosV { sigma, .. } => {
                let pole = 2.0 * (y * y + (1.0 - sigma).powi(2)).sqrt();
                let weight = 2.0 * (y * y + 0.25).sqrt();
                pole.min(weight).min(cap)
            }
            FunctionSpec::XiWeighted | FunctionSpec::Custom(_) => cap,
        }
    }
}

/// 1/ζ(σ + iy) as a convenience for tests and callers.
pub fn inv_zeta_value(sigma: f64, y: f64) -> Result<Complex64> {
    Ok(Complex64::new(1.0, 0.0) / zeta(Complex64::new(sigma, y))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn validation() {
        assert!(FunctionSpec::InvZeta { sigma: 0.75 }.validate().is_ok());
        assert!(FunctionSpec::InvZeta { sigma: 1.2 }.validate().is_err());
        let bad = FunctionSpec::ZetaCosV {
            sigma: 0.9,
            v: Complex64::new(-2.0, 0.0),
            variant: WeightVariant::HalfAngle,
        };
        assert!(bad.validate().is_err());
        let ok = FunctionSpec::ZetaCosV {
            sigma: 0.9,
            v: Complex64::new(-1.0, 0.0),
            variant: WeightVariant::HalfAngle,
        };
        assert!(ok.validate().is_ok());
    }

    #[test]
    fn weight_variants() {
        let y: f64 = 0.8;
        let phi = 2.0 * (2.0 * y).atan();
        for w in WeightVariant::ALL {
            assert_abs_diff_eq!(w.base(y), w.base_phi(phi), epsilon = 1e-15);
        }
    }

    #[test]
    fn mean_coefficients_of_cosines() {
        // cos φ has coefficients ½ at n = ±1
        let d = FunctionSpec::ZetaCosV {
            sigma: 0.9,
            v: Complex64::new(1.0, 0.0),
            variant: WeightVariant::DoubleAngle,
        };
        assert_abs_diff_eq!(d.mean_coefficient(1).unwrap().re, 0.5, epsilon = 1e-13);
        assert!(d.mean_coefficient(2).unwrap().norm() < 1e-13);
        // cos(φ/2): (1/π)∫_0^π cos(φ/2) cos(nφ) dφ = (−1)^n 4 / (π(1 − 4n²))... at n = 0, 2/π
        let h = FunctionSpec::ZetaCosV {
            sigma: 0.9,
            v: Complex64::new(1.0, 0.0),
            variant: WeightVariant::HalfAngle,
        };
        assert_abs_diff_eq!(h.mean_coefficient(0).unwrap().re, 2.0 / PI, epsilon = 1e-13);
        assert_abs_diff_eq!(h.mean_coefficient(1).unwrap().re, 2.0 / (3.0 * PI), epsilon = 1e-13);
    }
}
