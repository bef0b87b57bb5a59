//! Fourier coefficients of zeta-related functions in the orthonormal basis
//! e_n(x) = e^{−2in·arctan(2x)} of L²(μ), dμ = dy / (2π(¼ + y²)).

// `!(a < b)` is the idiom for rejecting NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod basis;
pub mod coefficients;
pub mod error;
pub mod quadrature;
pub mod specialfn;

pub use error::{Error, Result};
pub use num_complex::Complex64;
