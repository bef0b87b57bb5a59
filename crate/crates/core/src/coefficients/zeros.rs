//! Ordinates of nontrivial zeros with ζ' at each zero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specialfn::{taylor_coefficients, zeta};

const FIRST_ZERO: f64 = 14.134725141734693;
const DERIV_RADIUS: f64 = 0.1;
const DERIV_NODES: usize = 32;

static BUNDLED: &str = include_str!("../../data/zeros100.txt");

/// Ascending ordinates β of zeros ½ + iβ and the values ζ'(½ + iβ).
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    betas: Vec<f64>,
    zeta_prime: Vec<Complex64>,
}

/// Parses one β per line; blank lines and `#` comments are skipped.
pub fn parse_zero_file(text: &str) -> Result<Vec<f64>> {
    let mut betas: Vec<f64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let beta: f64 = line.parse().map_err(|_| Error::ZeroParse {
            line: i + 1,
            message: format!("not a number: {line:?}"),
        })?;
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::ZeroParse {
                line: i + 1,
                message: format!("ordinate must be positive and finite, got {beta}"),
            });
        }
        if betas.last().is_some_and(|&prev| beta <= prev) {
            return Err(Error::ZeroOrder { line: i + 1 });
        }
        betas.push(beta);
    }
    if betas.is_empty() {
        return Err(Error::ZeroParse {
            line: 0,
            message: "no ordinates found".into(),
        });
    }
    Ok(betas)
}

fn zeta_prime_at(beta: f64) -> Result<Complex64> {
    let rho = Complex64::new(0.5, beta);
    Ok(taylor_coefficients(zeta, rho, DERIV_RADIUS, DERIV_NODES, 1)?[1])
}

impl ZeroTable {
    /// Validates the ordinates and computes ζ'(ρ) on Cauchy circles.
    pub fn from_betas(betas: Vec<f64>) -> Result<Self> {
        let zeta_prime = betas.iter().map(|&b| zeta_prime_at(b)).collect::<Result<Vec<_>>>()?;
        Self::with_derivatives(betas, zeta_prime)
    }

    /// Table from stored ordinates and derivatives.
    pub fn with_derivatives(betas: Vec<f64>, zeta_prime: Vec<Complex64>) -> Result<Self> {
        if betas.is_empty() {
            return Err(Error::ZeroSanity("empty table".into()));
        }
        if betas.len() != zeta_prime.len() {
            return Err(Error::ZeroSanity("ordinate and derivative counts differ".into()));
        }
        if let Some(i) = betas.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::ZeroOrder { line: i + 2 });
        }
        if (betas[0] - FIRST_ZERO).abs() > 1e-3 {
            return Err(Error::ZeroSanity(format!(
                "first ordinate {} is not the first zero {FIRST_ZERO}",
                betas[0]
            )));
        }
        if let Some(i) = zeta_prime.iter().position(|z| !(z.norm() > 1e-8) || !z.re.is_finite()) {
            return Err(Error::ZeroSanity(format!("zeta' vanishes at ordinate {}", betas[i])));
        }
        Ok(Self { betas, zeta_prime })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_betas(parse_zero_file(text)?)
    }

    /// The first hundred zeros shipped with the library.
    pub fn bundled() -> Result<Self> {
        Self::parse(BUNDLED)
    }

    pub fn bundled_text() -> &'static str {
        BUNDLED
    }

    /// The first `count` zeros.
    pub fn truncated(&self, count: usize) -> Self {
        let count = count.min(self.count()).max(1);
        Self {
            betas: self.betas[..count].to_vec(),
            zeta_prime: self.zeta_prime[..count].to_vec(),
        }
    }

    pub fn count(&self) -> usize {
        self.betas.len()
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn zeta_prime(&self) -> &[Complex64] {
        &self.zeta_prime
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_is_valid() {
        let t = ZeroTable::bundled().unwrap();
        assert_eq!(t.count(), 100);
        // ζ'(½ + 14.1347…i) = 0.7832965118670…+ 0.1246998297…i
        let d = t.zeta_prime()[0];
        assert!(
            (d - Complex64::new(0.7832965118670309, 0.1246998297481711)).norm() < 1e-9,
            "{d}"
        );
        assert!(zeta(Complex64::new(0.5, t.betas()[99])).unwrap().norm() < 1e-10);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_zero_file(""), Err(Error::ZeroParse { .. })));
        assert!(matches!(parse_zero_file("# only\n"), Err(Error::ZeroParse { .. })));
        assert!(matches!(
            parse_zero_file("14.13\nabc\n"),
            Err(Error::ZeroParse { line: 2, .. })
        ));
        assert!(matches!(
            parse_zero_file("21.02\n14.13\n"),
            Err(Error::ZeroOrder { line: 2 })
        ));
        assert!(matches!(ZeroTable::parse("15.0\n"), Err(Error::ZeroSanity(_))));
        assert_eq!(
            parse_zero_file("# c\n14.134725142\n\n21.022 # x\n").unwrap(),
            vec![14.134725142, 21.022]
        );
    }
}
