use num_bigint::BigInt;

use super::{Caps, Monomial, SparsePoly, TruncSeries, Var};
use crate::{Error, Poly, Result, Series};

/// A monomial with a sign, the `a` in `(a; b)_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedMonomial {
    pub negative: bool,
    pub monomial: Monomial,
}

impl SignedMonomial {
    pub fn pos(m: Monomial) -> Self {
        SignedMonomial { negative: false, monomial: m }
    }

    pub fn neg(m: Monomial) -> Self {
        SignedMonomial { negative: true, monomial: m }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum PochLength {
    Finite(u32),
    Infinite,
}

/// `1 + m + m^2 + ... + m^(n-1)`.
pub fn q_int_at(n: u32, m: &Monomial) -> Poly {
    let mut p = Poly::zero();
    for i in 0..n {
        p.add_term(m.powi(i), BigInt::from(1));
    }
    p
}

/// `[n]_v = 1 + v + ... + v^(n-1)`.
pub fn q_int(n: u32, var: Var) -> Poly {
    q_int_at(n, &Monomial::var(var))
}

/// Gaussian binomial coefficient, obtained as an exact quotient of products
/// of `1 - v^i`; zero when `k > n`.
pub fn q_binomial(n: u32, k: u32, var: Var) -> Poly {
    if k > n {
        return Poly::zero();
    }
    let k = k.min(n - k);
    let mut num = Poly::one();
    let mut den = Poly::one();
    for i in 0..k {
        num = &num * &Poly::one_minus(Monomial::pow(var, n - i));
        den = &den * &Poly::one_minus(Monomial::pow(var, i + 1));
    }
    num.div_exact(&den).expect("Gaussian binomials are polynomials")
}

/// `1/(1 - m)` expanded below `caps`.
pub fn invert_factor(m: &Monomial, caps: &Caps) -> Result<Series> {
    TruncSeries::one(caps.clone()).div_one_minus(m)
}

/// `(a; b)_n = prod_{i<n} (1 - a b^i)` below `caps`. Factors whose monomial
/// already exceeds a cap are 1 under truncation, and so are all later ones.
pub fn pochhammer(a: &SignedMonomial, base: &Monomial, len: PochLength, caps: &Caps) -> Result<Series> {
    if len == PochLength::Infinite && (base.is_one() || !caps.bounds(base)) {
        return Err(Error::Unbounded(format!("infinite product in base {base} with no capped variable")));
    }
    let mut out = TruncSeries::one(caps.clone());
    let mut m = a.monomial.clone();
    let mut i = 0u32;
    loop {
        if let PochLength::Finite(n) = len {
            if i >= n {
                break;
            }
        }
        if !caps.allows(&m) {
            break;
        }
        // 1 - a b^i with a = -m flips to 1 + m
        out = out.mul_binomial(!a.negative, &m);
        m = m.mul(base);
        i += 1;
    }
    Ok(out)
}

/// `1/(a; b)_n` below `caps`, for a positive `a`.
pub fn inverse_pochhammer(a: &Monomial, base: &Monomial, len: PochLength, caps: &Caps) -> Result<Series> {
    if (base.is_one() || !caps.bounds(base))
        && len == PochLength::Infinite {
            return Err(Error::Unbounded(format!("infinite product in base {base} with no capped variable")));
        }
    let mut out = TruncSeries::one(caps.clone());
    let mut m = a.clone();
    let mut i = 0u32;
    loop {
        if let PochLength::Finite(n) = len {
            if i >= n {
                break;
            }
        }
        if !caps.allows(&m) {
            break;
        }
        out = out.div_one_minus(&m)?;
        m = m.mul(base);
        i += 1;
    }
    Ok(out)
}

/// Convenience: `(a; q)_n` in a single variable base.
pub fn pochhammer_q(a: &SignedMonomial, var: Var, len: PochLength, caps: &Caps) -> Result<Series> {
    pochhammer(a, &Monomial::var(var), len, caps)
}

/// Lift a polynomial into a series with the given caps.
pub fn series(p: SparsePoly<BigInt>, caps: &Caps) -> Series {
    TruncSeries::new(p, caps.clone())
}
