//! Summation conventions for the residue formulas and the registry of
//! conventions confirmed against direct quadrature.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper limit of the binomial residue sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumBound {
    /// 0 ≤ k < n
    Strict,
    /// 0 ≤ k ≤ n
    Inclusive,
}

/// Argument whose k-th derivative enters the residue sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// ∂^k_s 1/ζ(c ∓ s) exactly as written next to the sum.
    AsWritten,
    /// The same derivative taken in the reflected argument c ± s, which
    /// multiplies the k-th term by (−1)^k.
    Reflected,
}

/// One reading of the binomial residue sum
/// (1/n!) Σ_k C(n,k) (−1)^n (n−1)!/(k−1)! ∂^k_s [1/ζ(·)]|_{s=0}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SumConvention {
    pub bound: SumBound,
    /// Overall sign applied to the whole coefficient, including n = 0.
    pub negate: bool,
    pub orientation: Orientation,
}

impl SumConvention {
    /// The statement of the expansion for 1/ζ(σ + ix), as written.
    pub const AS_STATED: SumConvention = SumConvention {
        bound: SumBound::Strict,
        negate: false,
        orientation: Orientation::AsWritten,
    };

    pub fn all() -> Vec<SumConvention> {
        let mut out = Vec::with_capacity(8);
        for bound in [SumBound::Strict, SumBound::Inclusive] {
            for negate in [false, true] {
                for orientation in [Orientation::AsWritten, Orientation::Reflected] {
                    out.push(SumConvention {
                        bound,
                        negate,
                        orientation,
                    });
                }
            }
        }
        out
    }

    pub fn sign(&self) -> f64 {
        if self.negate {
            -1.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for SumConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = match self.bound {
            SumBound::Strict => "k<n",
            SumBound::Inclusive => "k<=n",
        };
        let orientation = match self.orientation {
            Orientation::AsWritten => "as-written",
            Orientation::Reflected => "reflected",
        };
        write!(f, "{bound},{},{orientation}", if self.negate { "-" } else { "+" })
    }
}

/// Sign given to S(n, σ) and the zeros it ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZeroSumConvention {
    /// S enters with a minus sign, as stated; `false` adds it.
    pub subtract: bool,
    /// Sum over ±β (conjugate pairs) rather than β > 0 only.
    pub pairs: bool,
}

impl ZeroSumConvention {
    pub const AS_STATED: ZeroSumConvention = ZeroSumConvention {
        subtract: true,
        pairs: true,
    };

    pub fn all() -> Vec<ZeroSumConvention> {
        let mut out = Vec::with_capacity(4);
        for subtract in [true, false] {
            for pairs in [true, false] {
                out.push(ZeroSumConvention { subtract, pairs });
            }
        }
        out
    }
}

impl fmt::Display for ZeroSumConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}S,{}",
            if self.subtract { "-" } else { "+" },
            if self.pairs { "pairs" } else { "positive-beta" }
        )
    }
}

/// Coefficient families whose formulas carry a calibrated convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// ā_n, expansion of 1/ζ(σ + ix)
    Bar,
    /// â_n, expansion of 1/ζ(σ − ix)
    Hat,
    /// ã_n for n < 0
    TildeNegative,
    /// ä_n by the Theta route
    Xi,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Bar => "bar",
            Family::Hat => "hat",
            Family::TildeNegative => "tilde-negative",
            Family::Xi => "xi",
        };
        f.write_str(s)
    }
}

/// The convention selected for a family, as a display string.
fn registry() -> &'static Mutex<HashMap<Family, String>> {
    static REG: OnceLock<Mutex<HashMap<Family, String>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Marks `convention` as the one confirmed for `family`.
pub fn register(family: Family, convention: &impl fmt::Display) {
    registry()
        .lock()
        .expect("convention registry poisoned")
        .insert(family, convention.to_string());
}

/// The registered convention of a family, if calibrated.
pub fn registered(family: Family) -> Option<String> {
    registry()
        .lock()
        .expect("convention registry poisoned")
        .get(&family)
        .cloned()
}

/// Fails unless `convention` is the one registered for `family`.
pub fn require(family: Family, convention: &impl fmt::Display) -> Result<()> {
    match registered(family) {
        Some(c) if c == convention.to_string() => Ok(()),
        _ => Err(Error::ConventionUnvalidated(format!("{family} ({convention})"))),
    }
}
