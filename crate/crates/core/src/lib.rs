//! Exact arithmetic, enumeration and lattice-point geometry for lecture hall
//! partitions and their relatives.
//!
//! The polynomial layer is generic over its coefficient ring; the aliases
//! below fix the arbitrary-precision instances used everywhere else.

pub mod algebra;
pub mod bijections;
pub mod enumeration;
mod error;
pub mod eulerian;
pub mod geometry;
pub mod harness;
pub mod sequences;
pub mod statistics;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Sparse multivariate polynomial with big-integer coefficients.
pub type Poly = algebra::SparsePoly<BigInt>;
/// Truncated multivariate power series with big-integer coefficients.
pub type Series = algebra::TruncSeries<BigInt>;
/// Dense univariate polynomial with exact rational coefficients.
pub type RatPoly = algebra::DensePoly<BigRational>;
