use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use super::{Caps, Coeff, Monomial, Var};
use crate::{Error, Result};

/// A polynomial stored as a map from monomial to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for SparsePoly<C> {
    fn default() -> Self {
        SparsePoly::zero()
    }
}

impl<C: Coeff> SparsePoly<C> {
    pub fn zero() -> Self {
        SparsePoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        SparsePoly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        SparsePoly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        SparsePoly::term(m, C::one())
    }

    pub fn var(v: Var) -> Self {
        SparsePoly::monomial(Monomial::var(v))
    }

    /// `1 - m`.
    pub fn one_minus(m: Monomial) -> Self {
        let mut p = SparsePoly::one();
        p.add_term(m, -C::one());
        p
    }

    /// `1 + m`.
    pub fn one_plus(m: Monomial) -> Self {
        let mut p = SparsePoly::one();
        p.add_term(m, C::one());
        p
    }

    /// `c0 + c1 v + c2 v^2 + ...`.
    pub fn from_univariate(v: Var, coeffs: &[C]) -> Self {
        let mut p = SparsePoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::pow(v, i as u32), c.clone());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut p = SparsePoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    pub fn coeff_sum(&self) -> C {
        let mut s = C::zero();
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = SparsePoly::zero();
        for (m, a) in &self.terms {
            let mut t = a.clone();
            t *= c;
            out.add_term(m.clone(), t);
        }
        out
    }

    /// Multiply every term by the monomial `m`.
    pub fn shift(&self, m: &Monomial) -> Self {
        SparsePoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// Product with every term outside `caps` discarded.
    pub fn mul_truncated(&self, other: &Self, caps: &Caps) -> Self {
        let mut out = SparsePoly::zero();
        for (ma, ca) in &self.terms {
            if !caps.allows(ma) {
                continue;
            }
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if caps.allows(&m) {
                    let mut t = ca.clone();
                    t *= cb;
                    out.add_term(m, t);
                }
            }
        }
        out
    }

    pub fn truncate(&self, caps: &Caps) -> Self {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| caps.allows(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = SparsePoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Apply a monomial map termwise, merging collisions.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Substitute a monomial for each variable.
    pub fn substitute(&self, f: impl Fn(Var) -> Monomial) -> Self {
        self.map_monomials(|m| m.substitute(&f))
    }

    /// Dense coefficient list in `v`; fails if any other variable occurs.
    pub fn univariate_coeffs(&self, v: Var) -> Result<Vec<C>> {
        let deg = match self.degree_in(v) {
            Some(d) => d as usize,
            None => return Ok(Vec::new()),
        };
        let mut out = vec![C::zero(); deg + 1];
        for (m, c) in &self.terms {
            if m.vars().any(|w| w != v) {
                return Err(Error::NotUnivariate(v.to_string()));
            }
            out[m.exponent(v) as usize] = c.clone();
        }
        Ok(out)
    }

    /// The unique variable of a univariate polynomial (`None` for constants).
    pub fn sole_variable(&self) -> Result<Option<Var>> {
        let vars = self.variables();
        match vars.len() {
            0 => Ok(None),
            1 => Ok(vars.into_iter().next()),
            _ => Err(Error::NotUnivariate(
                vars.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
            )),
        }
    }

    /// Coefficient list keyed by exponent, in ascending order.
    pub fn nonzero_coeffs(&self) -> Vec<C> {
        self.terms.values().cloned().collect()
    }
}

impl<C: Coeff + Integer> SparsePoly<C> {
    /// Exact quotient `self / d`, by leading-term division in the graded order.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (ld, lc) = match d.leading() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero();
        while let Some((lm, lr)) = rem.leading() {
            let t = lm.div(&ld).ok_or(Error::InexactDivision)?;
            let (c, r) = lr.div_rem(&lc);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let step = d.shift(&t).scale(&c);
            rem = &rem - &step;
            quot.add_term(t, c);
        }
        Ok(quot)
    }
}

impl<C: Coeff> Add for &SparsePoly<C> {
    type Output = SparsePoly<C>;

    fn add(self, rhs: &SparsePoly<C>) -> SparsePoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &SparsePoly<C> {
    type Output = SparsePoly<C>;

    fn sub(self, rhs: &SparsePoly<C>) -> SparsePoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &SparsePoly<C> {
    type Output = SparsePoly<C>;

    fn mul(self, rhs: &SparsePoly<C>) -> SparsePoly<C> {
        self.mul_truncated(rhs, &Caps::new())
    }
}

impl<C: Coeff> Neg for &SparsePoly<C> {
    type Output = SparsePoly<C>;

    fn neg(self) -> SparsePoly<C> {
        SparsePoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Coeff> $tr for SparsePoly<C> {
            type Output = SparsePoly<C>;

            fn $method(self, rhs: SparsePoly<C>) -> SparsePoly<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for SparsePoly<C> {
    type Output = SparsePoly<C>;

    fn neg(self) -> SparsePoly<C> {
        -&self
    }
}

/// Writes `coeff*monomial` terms joined by ` + ` / ` - `, in ascending order.
pub(crate) fn write_terms<'a, C: Coeff + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Monomial, &'a C)>,
) -> fmt::Result {
    let mut first = true;
    for (m, c) in terms {
        let text = c.to_string();
        let (negative, mag) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        if m.is_one() {
            f.write_str(&mag)?;
        } else if mag == "1" {
            write!(f, "{m}")?;
        } else {
            write!(f, "{mag}*{m}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<C: Coeff> fmt::Display for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = SparsePoly<i64>;

    fn q() -> P {
        P::var(Var::Q)
    }

    #[test]
    fn arithmetic_and_display() {
        let a = &P::one() + &q();
        let b = &P::one() - &q();
        assert_eq!((&a * &b).to_string(), "1 - q^2");
        assert_eq!(P::from_univariate(Var::X, &[1, 57, 302]).to_string(), "1 + 57*x + 302*x^2");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!((-&a).to_string(), "-1 - q");
        let mixed = &(&q() * &P::var(Var::U)).scale(&3) + &P::var(Var::X);
        assert_eq!(mixed.to_string(), "x + 3*q*u");
    }

    #[test]
    fn exact_division() {
        let num = P::one_minus(Monomial::pow(Var::Q, 2));
        let den = P::one_minus(Monomial::var(Var::Q));
        assert_eq!(num.div_exact(&den).unwrap(), &P::one() + &q());
        let bad = &P::one() + &q();
        assert_eq!(bad.div_exact(&den), Err(Error::InexactDivision));
        assert_eq!(num.div_exact(&P::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn univariate_views() {
        let p = P::from_univariate(Var::X, &[2, 0, 1]);
        assert_eq!(p.univariate_coeffs(Var::X).unwrap(), vec![2, 0, 1]);
        let mixed = &p + &q();
        assert!(mixed.univariate_coeffs(Var::X).is_err());
        assert_eq!(p.coeff_sum(), 3);
    }

    #[test]
    fn substitution_merges_terms() {
        let p = &P::var(Var::z(1)) + &P::var(Var::z(2));
        let s = p.substitute(|_| Monomial::var(Var::Q));
        assert_eq!(s.to_string(), "2*q");
    }
}
