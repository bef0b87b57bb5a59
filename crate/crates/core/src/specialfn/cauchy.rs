//! Taylor coefficients by the trapezoid rule on a Cauchy circle.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{tolerance, Result};

/// Taylor coefficients c_0..=c_k of `f` about `center` from `nodes`
/// equally spaced samples on the circle of the given radius.
pub fn taylor_coefficients<F>(
    mut f: F,
    center: Complex64,
    radius: f64,
    nodes: usize,
    k_max: usize,
) -> Result<Vec<Complex64>>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let samples = sample_circle(&mut f, center, radius, nodes)?;
    Ok(coefficients_from_samples(&samples, radius, k_max, 1))
}

fn sample_circle<F>(f: &mut F, center: Complex64, radius: f64, nodes: usize) -> Result<Vec<Complex64>>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    (0..nodes)
        .map(|j| {
            let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / nodes as f64);
            f(center + w * radius)
        })
        .collect()
}

/// Coefficients from every `stride`-th sample.
fn coefficients_from_samples(samples: &[Complex64], radius: f64, k_max: usize, stride: usize) -> Vec<Complex64> {
    let n = samples.len() / stride;
    (0..=k_max)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                let angle = -2.0 * PI * ((j * k) % n) as f64 / n as f64;
                acc += samples[j * stride] * Complex64::from_polar(1.0, angle);
            }
            acc / (n as f64 * radius.powi(k as i32))
        })
        .collect()
}

/// Taylor coefficients validated by node doubling.
#[derive(Debug, Clone)]
pub struct RefinedTaylor {
    pub coefficients: Vec<Complex64>,
    /// Per-coefficient |c_k(2N) - c_k(N)|.
    pub refinement: Vec<f64>,
    /// Largest sample modulus on the circle.
    pub sample_scale: f64,
}

impl RefinedTaylor {
    /// Samples `2 * nodes` points; the even-indexed half reproduces the
    /// `nodes`-point estimate. Fails when any coefficient moves by more than
    /// `tol` relative to the Cauchy bound `max|f| / r^k`.
    pub fn compute<F>(mut f: F, center: Complex64, radius: f64, nodes: usize, k_max: usize, tol: f64) -> Result<Self>
    where
        F: FnMut(Complex64) -> Result<Complex64>,
    {
        let samples = sample_circle(&mut f, center, radius, 2 * nodes)?;
        let fine = coefficients_from_samples(&samples, radius, k_max, 1);
        let coarse = coefficients_from_samples(&samples, radius, k_max, 2);
        let sample_scale = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let refinement: Vec<f64> = fine.iter().zip(&coarse).map(|(a, b)| (a - b).norm()).collect();
        for (k, d) in refinement.iter().enumerate() {
            let bound = sample_scale / radius.powi(k as i32);
            if *d > tol * bound.max(f64::MIN_POSITIVE) {
                return Err(tolerance(
                    format!("Cauchy-circle coefficient {k} under node doubling"),
                    d / bound,
                    tol,
                ));
            }
        }
        Ok(Self {
            coefficients: fine,
            refinement,
            sample_scale,
        })
    }

    /// k-th derivative, k! c_k.
    pub fn derivative(&self, k: usize) -> Complex64 {
        self.coefficients[k] * super::factorial(k as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_coefficients() {
        let c = taylor_coefficients(|z| Ok(z.exp()), Complex64::new(0.0, 0.0), 1.0, 32, 8).unwrap();
        let mut fact = 1.0;
        for (k, ck) in c.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((ck - 1.0 / fact).norm() < 1e-15, "k={k}");
        }
    }

    #[test]
    fn refinement_detects_nearby_pole() {
        // 1/(z - 0.95) sampled on |z| = 0.9 converges too slowly for 8 nodes
        let r = RefinedTaylor::compute(|z| Ok((z - 0.95).inv()), Complex64::new(0.0, 0.0), 0.9, 8, 2, 1e-10);
        assert!(r.is_err());
    }
}
