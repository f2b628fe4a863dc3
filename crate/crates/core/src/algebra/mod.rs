//! Exact polynomial and truncated power-series arithmetic.

mod dense;
mod monomial;
mod qanalog;
mod series;
mod sparse;
mod tally;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

pub use dense::{
    distinct_real_roots, interpolate, interpolate_integers, palindromic_center, real_root_count,
    sturm_chain, DensePoly, Field,
};
pub use monomial::{Caps, Monomial, Var};
pub use qanalog::{
    inverse_pochhammer, invert_factor, pochhammer, pochhammer_q, q_binomial, q_int, q_int_at, series,
    PochLength, SignedMonomial,
};
pub use series::{Mismatch, TruncSeries};
pub use sparse::SparsePoly;
pub use tally::Tally;

/// A commutative coefficient ring.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + for<'a> AddAssign<&'a T>
        + for<'a> SubAssign<&'a T>
        + for<'a> MulAssign<&'a T>
        + Send
        + Sync
{
}
