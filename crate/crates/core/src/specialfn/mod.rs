//! Special functions consumed by the coefficient formulas: Γ, ζ and its
//! derivatives, ξ and Ξ, the theta-type series Θ with its Euler-operator
//! powers, and the Whittaker function W.

mod cauchy;
mod gamma;
mod theta;
mod whittaker;
mod xi;
mod zeta;

pub use cauchy::{taylor_coefficients, RefinedTaylor};
pub use gamma::{binomial, factorial, gamma, is_nonpositive_integer, log_gamma, rgamma};
pub use theta::{theta_big, theta_d_operator, theta_operator_polynomial};
pub use whittaker::{
    hyp1f1, tricomi_u, whittaker_m, whittaker_ode_residual, whittaker_w, whittaker_w_asymptotic,
    whittaker_w_mcombination, WhittakerAsymptotic,
};
pub use xi::{big_xi, xi, xi_derivatives};
pub use zeta::{inv_zeta_series, inv_zeta_taylor, zeta, zeta_derivative, zeta_prime_trivial, zeta_times_sm1};

use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

static ACTIVE: RwLock<Option<PrecisionProfile>> = RwLock::new(None);

/// Evaluation parameters shared by the ζ-family routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionProfile {
    /// Minimum Euler–Maclaurin cutoff N (raised automatically with |s|).
    pub em_terms: usize,
    /// Maximum number of Bernoulli correction terms.
    pub em_bernoulli: usize,
    /// Radius of the Cauchy circle used for derivatives of ζ.
    pub deriv_radius: f64,
    /// Trapezoid nodes on the Cauchy circle.
    pub deriv_nodes: usize,
    pub series_tol: f64,
}

impl Default for PrecisionProfile {
    fn default() -> Self {
        Self {
            em_terms: 50,
            em_bernoulli: 25,
            deriv_radius: 0.2,
            deriv_nodes: 64,
            series_tol: 1e-12,
        }
    }
}

impl PrecisionProfile {
    /// The profile used by the free functions of this module: the one last
    /// passed to [`PrecisionProfile::activate`], else the default.
    pub fn active() -> Self {
        ACTIVE.read().expect("profile lock poisoned").unwrap_or_default()
    }

    /// Makes `self` the process-wide profile.
    pub fn activate(self) -> Result<()> {
        self.validate()?;
        *ACTIVE.write().expect("profile lock poisoned") = Some(self);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.em_terms == 0 || self.em_bernoulli == 0 || self.deriv_nodes == 0 {
            return Err(Error::Domain("precision profile counts must be positive".into()));
        }
        if !(self.deriv_radius > 0.0 && self.deriv_radius <= 0.25) {
            return Err(Error::Domain(format!(
                "deriv_radius {} outside (0, 1/4]",
                self.deriv_radius
            )));
        }
        if !(self.series_tol > 0.0) {
            return Err(Error::Domain("series_tol must be positive".into()));
        }
        Ok(())
    }
}
