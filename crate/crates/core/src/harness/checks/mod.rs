//! The two sides of every registered identity.

pub(super) mod eulerian;
pub(super) mod geometry;
pub(super) mod partitions;
pub(super) mod permutations;

use num_bigint::BigInt;

use crate::algebra::{Caps, Monomial, Var};
use crate::enumeration::{walk, Bound};
use crate::sequences::SSeq;
use crate::statistics::Perm;
use crate::{Error, Poly, Result, Series};

pub(super) fn mono(pairs: &[(Var, u32)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().copied())
}

pub(super) fn q(e: u32) -> Monomial {
    Monomial::pow(Var::Q, e)
}

pub(super) fn x(e: u32) -> Monomial {
    Monomial::pow(Var::X, e)
}

/// `series / prod (1 - m)`.
pub(super) fn over(series: Series, denominators: impl IntoIterator<Item = Monomial>) -> Result<Series> {
    denominators.into_iter().try_fold(series, |acc, m| acc.div_one_minus(&m))
}

/// `prod 1/(1 - m)` below `caps`.
pub(super) fn product_inverse(caps: &Caps, denominators: impl IntoIterator<Item = Monomial>) -> Result<Series> {
    over(Series::one(caps.clone()), denominators)
}

/// `series * prod (1 + m)`.
pub(super) fn times_one_plus(series: Series, factors: impl IntoIterator<Item = Monomial>) -> Series {
    factors.into_iter().fold(series, |acc, m| acc.mul_binomial(false, &m))
}

pub(super) fn poly_product(factors: impl IntoIterator<Item = Poly>) -> Poly {
    factors.into_iter().fold(Poly::one(), |acc, f| &acc * &f)
}

/// A statistic that has to be a nonnegative exponent.
pub(super) fn exponent(value: i128, what: &str) -> Result<u32> {
    u32::try_from(value).map_err(|_| Error::Consistency(format!("{what} = {value} is not a valid exponent")))
}

pub(super) fn within_budget(size: u128, budget: u64) -> Result<()> {
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(())
}

pub(super) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub(super) fn permutations(n: usize, budget: u64) -> Result<impl Iterator<Item = Perm>> {
    within_budget(factorial(n), budget)?;
    Ok(Perm::all(n))
}

pub(super) fn range_seq(n: usize) -> Result<SSeq> {
    SSeq::explicit((1..=n as u64).collect())
}

pub(super) fn anti_seq(n: usize) -> Result<SSeq> {
    SSeq::explicit((1..=n as u64).rev().collect())
}

/// Coefficients of `v^0 .. v^(len-1)` in a univariate series.
pub(super) fn coefficients(series: &Series, v: Var, len: usize) -> Vec<BigInt> {
    (0..len).map(|e| series.coeff(&Monomial::pow(v, e as u32))).collect()
}

/// `sum z^(stat)` over members of `L^(s)` with `lambda_n <= max_last`,
/// keeping only monomials below `caps`.
pub(super) fn tally_members(
    s: &SSeq,
    max_last: u64,
    caps: &Caps,
    monomial: impl Fn(&[u64]) -> Result<Monomial>,
) -> Result<Series> {
    let mut tally = crate::algebra::Tally::new();
    let mut failure = None;
    walk(s.values(), Bound::last(max_last), &mut |parts| match monomial(parts) {
        Ok(m) if caps.allows(&m) => tally.add(m),
        Ok(_) => {}
        Err(e) => failure = failure.take().or(Some(e)),
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(Series::new(tally.into_poly(), caps.clone())),
    }
}
