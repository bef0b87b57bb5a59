use std::f64::consts::PI;

use proptest::prelude::*;
use zeta_fourier::analysis::partial_sum;
use zeta_fourier::basis::{basis_e, dirichlet_kernel, fejer_kernel, inner_product, phi_of_x, x_of_phi, QuadratureSpec};
use zeta_fourier::coefficients::{CoefficientTable, Method};
use zeta_fourier::specialfn::{gamma, xi, zeta};
use zeta_fourier::Complex64;

fn scale(z: Complex64) -> f64 {
    z.norm().max(1.0)
}

fn trig_poly(c: &[Complex64], x: f64) -> Complex64 {
    c.iter().enumerate().map(|(i, &ck)| ck * basis_e(i as i64 - 4, x)).sum()
}

fn coeffs() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| Complex64::new(a, b)), 9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zeta_commutes_with_conjugation(sigma in -3.0f64..3.0, t in 0.5f64..40.0) {
        let s = Complex64::new(sigma, t);
        let (a, b) = (zeta(s.conj()).unwrap(), zeta(s).unwrap().conj());
        prop_assert!((a - b).norm() <= 1e-10 * scale(b), "{a} vs {b}");
    }

    #[test]
    fn xi_is_symmetric_about_one_half(sigma in -2.0f64..3.0, t in -30.0f64..30.0) {
        let s = Complex64::new(sigma, t);
        let (a, b) = (xi(s).unwrap(), xi(1.0 - s).unwrap());
        prop_assert!((a - b).norm() <= 1e-10 * scale(a), "{a} vs {b}");
    }

    #[test]
    fn gamma_reflection(sigma in 0.05f64..0.95, t in -5.0f64..5.0) {
        let s = Complex64::new(sigma, t);
        let lhs = gamma(s).unwrap() * gamma(1.0 - s).unwrap();
        let rhs = PI / (s * PI).sin();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * scale(rhs));
    }

    #[test]
    fn basis_is_a_unimodular_character(m in -30i64..30, n in -30i64..30, x in -50.0f64..50.0) {
        prop_assert!((basis_e(n, x).norm() - 1.0).abs() < 1e-14);
        prop_assert!((basis_e(m, x) * basis_e(n, x) - basis_e(m + n, x)).norm() < 1e-12);
        prop_assert!((x_of_phi(phi_of_x(x)).unwrap() - x).abs() <= 1e-12 * x.abs().max(1.0));
    }

    #[test]
    fn kernels_match_their_sums(n in 0u32..40, x in -3.1f64..3.1) {
        let d: f64 = 1.0 + 2.0 * (1..=n).map(|k| (k as f64 * x).cos()).sum::<f64>();
        prop_assert!((dirichlet_kernel(n, x) - d).abs() < 1e-9 * (2 * n + 1) as f64);
        prop_assert!(fejer_kernel(n, x) >= -1e-12);
    }

    #[test]
    fn csv_round_trip_is_exact(c in coeffs(), n_min in -20i64..20) {
        let t = CoefficientTable::from_values("p".into(), n_min, c, Method::Quadrature).unwrap();
        let back = CoefficientTable::from_csv("p".into(), &t.to_csv()).unwrap();
        prop_assert_eq!(back.to_csv(), t.to_csv());
        for n in n_min..n_min + 9 {
            prop_assert_eq!(back.get(n).unwrap(), t.get(n).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn basis_is_orthonormal(m in -20i64..=20, n in -20i64..=20) {
        let q = QuadratureSpec::default();
        let ip = inner_product(|x| basis_e(m, x), |x| basis_e(n, x), &q).unwrap();
        let delta = if m == n { 1.0 } else { 0.0 };
        prop_assert!((ip - delta).norm() < 1e-9, "<e_{m}, e_{n}> = {ip}");
    }

    #[test]
    fn trigonometric_polynomials_obey_parseval(c in coeffs(), x in -5.0f64..5.0) {
        let q = QuadratureSpec::default();
        let f = |x: f64| trig_poly(&c, x);
        let norm = inner_product(f, f, &q).unwrap().re;
        let energy: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((norm - energy).abs() < 1e-9);
        let recovered: Vec<Complex64> = (-4..=4).map(|n| inner_product(f, |x| basis_e(n, x), &q).unwrap()).collect();
        for (a, b) in recovered.iter().zip(&c) {
            prop_assert!((a - b).norm() < 1e-9);
        }
        let table = CoefficientTable::from_values("p".into(), -4, recovered, Method::Quadrature).unwrap();
        prop_assert!((partial_sum(&table, x, 4).unwrap() - f(x)).norm() < 1e-8);
    }

    #[test]
    fn bessel_inequality(a in 0.1f64..4.0, b in -3.0f64..3.0) {
        let q = QuadratureSpec::default();
        let f = |x: f64| Complex64::new(1.0 / (a + (x - b).powi(2)), (x / (1.0 + x * x)).sin());
        let norm = inner_product(f, f, &q).unwrap().re;
        let mut energy = 0.0;
        for n in 0..=6i64 {
            for k in if n == 0 { vec![0] } else { vec![n, -n] } {
                energy += inner_product(f, |x| basis_e(k, x), &q).unwrap().norm_sqr();
            }
            prop_assert!(energy <= norm + 1e-9, "N = {n}: {energy} > {norm}");
        }
    }
}
