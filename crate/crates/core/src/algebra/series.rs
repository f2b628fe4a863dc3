use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde_json::{json, Map, Value};

use super::sparse::write_terms;
use super::{Caps, Coeff, Monomial, SparsePoly, Var};
use crate::{Error, Result};

/// A multivariate power series known exactly below per-variable caps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries<C> {
    poly: SparsePoly<C>,
    caps: Caps,
}

/// The first disagreement between two series, in graded order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mismatch<C> {
    pub monomial: Monomial,
    pub lhs: C,
    pub rhs: C,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn new(poly: SparsePoly<C>, caps: Caps) -> Self {
        let poly = poly.truncate(&caps);
        TruncSeries { poly, caps }
    }

    pub fn one(caps: Caps) -> Self {
        TruncSeries::new(SparsePoly::one(), caps)
    }

    pub fn zero(caps: Caps) -> Self {
        TruncSeries { poly: SparsePoly::zero(), caps }
    }

    pub fn poly(&self) -> &SparsePoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> SparsePoly<C> {
        self.poly
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.poly.coeff(m)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn restrict(&self, caps: &Caps) -> Self {
        TruncSeries::new(self.poly.clone(), self.caps.meet(caps))
    }

    pub fn add(&self, other: &Self) -> Self {
        let caps = self.caps.meet(&other.caps);
        TruncSeries::new(&self.poly + &other.poly, caps)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let caps = self.caps.meet(&other.caps);
        TruncSeries::new(&self.poly - &other.poly, caps)
    }

    pub fn neg(&self) -> Self {
        TruncSeries { poly: -&self.poly, caps: self.caps.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let caps = self.caps.meet(&other.caps);
        TruncSeries { poly: self.poly.mul_truncated(&other.poly, &caps), caps }
    }

    pub fn mul_poly(&self, p: &SparsePoly<C>) -> Self {
        TruncSeries { poly: self.poly.mul_truncated(p, &self.caps), caps: self.caps.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncSeries { poly: self.poly.scale(c), caps: self.caps.clone() }
    }

    /// Multiply by the monomial `m`.
    pub fn shift(&self, m: &Monomial) -> Self {
        TruncSeries::new(self.poly.shift(m), self.caps.clone())
    }

    /// `self / (1 - m)`, expanded as `sum_j self * m^j`.
    pub fn div_one_minus(&self, m: &Monomial) -> Result<Self> {
        if m.is_one() {
            return Err(Error::DivisionByZero);
        }
        if !self.caps.bounds(m) {
            return Err(Error::Unbounded(format!("1/(1 - {m}) with no capped variable")));
        }
        let mut out = self.poly.clone();
        let mut cur = self.poly.clone();
        loop {
            cur = cur.shift(m).truncate(&self.caps);
            if cur.is_zero() {
                break;
            }
            out = &out + &cur;
        }
        Ok(TruncSeries { poly: out, caps: self.caps.clone() })
    }

    /// `self * (1 + sign*m)`.
    pub fn mul_binomial(&self, negative: bool, m: &Monomial) -> Self {
        let p = if negative {
            SparsePoly::one_minus(m.clone())
        } else {
            SparsePoly::one_plus(m.clone())
        };
        self.mul_poly(&p)
    }

    /// Substitute monomials for variables and truncate under `caps`. The
    /// caller guarantees every retained coefficient is fully determined.
    pub fn specialize(&self, f: impl Fn(Var) -> Monomial, caps: Caps) -> Self {
        TruncSeries::new(self.poly.substitute(f), caps)
    }

    /// First monomial below the common caps where the two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<Mismatch<C>> {
        let caps = self.caps.meet(&other.caps);
        let a = self.poly.truncate(&caps);
        let b = other.poly.truncate(&caps);
        let mut keys: Vec<&Monomial> = a.terms().map(|(m, _)| m).collect();
        keys.extend(b.terms().map(|(m, _)| m));
        keys.sort();
        keys.dedup();
        for m in keys {
            let (x, y) = (a.coeff(m), b.coeff(m));
            if x != y {
                return Some(Mismatch { monomial: m.clone(), lhs: x, rhs: y });
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let mut vars: Vec<Var> = self.poly.variables().into_iter().collect();
        vars.extend(self.caps.iter().map(|(v, _)| v));
        vars.sort();
        vars.dedup();
        let caps: Map<String, Value> =
            self.caps.iter().map(|(v, c)| (v.to_string(), json!(c))).collect();
        let terms: Vec<Value> = self
            .poly
            .terms()
            .map(|(m, c)| {
                let exp: Map<String, Value> = m.iter().map(|(v, e)| (v.to_string(), json!(e))).collect();
                json!({ "exp": exp, "coeff": c.to_string() })
            })
            .collect();
        json!({
            "vars": vars.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "caps": caps,
            "terms": terms,
        })
    }
}

impl<C: Coeff + FromStr> TruncSeries<C> {
    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("series json: {what}"));
        let mut caps = Caps::new();
        if let Some(obj) = value.get("caps").and_then(Value::as_object) {
            for (name, c) in obj {
                let v: Var = name.parse()?;
                let c = c.as_u64().ok_or_else(|| bad("cap is not an integer"))?;
                caps = caps.with(v, u32::try_from(c).map_err(|_| bad("cap too large"))?);
            }
        }
        let mut poly = SparsePoly::zero();
        let terms = value.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        for t in terms {
            let exp = t.get("exp").and_then(Value::as_object).ok_or_else(|| bad("missing exp"))?;
            let mut pairs = Vec::new();
            for (name, e) in exp {
                let e = e.as_u64().ok_or_else(|| bad("exponent is not an integer"))?;
                pairs.push((name.parse::<Var>()?, u32::try_from(e).map_err(|_| bad("exponent too large"))?));
            }
            let c = t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("missing coeff"))?;
            let c: C = c.parse().map_err(|_| bad("coefficient is not a decimal"))?;
            poly.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(TruncSeries::new(poly, caps))
    }
}

impl<C: Coeff + Integer> TruncSeries<C> {
    /// Exact quotient under the common caps.
    ///
    /// A divisor with a nonzero constant term whose other terms all involve a
    /// capped variable is inverted by eliminating low-order terms; anything
    /// else falls back to exact polynomial division.
    pub fn divide_exact(&self, d: &Self) -> Result<Self> {
        let caps = self.caps.meet(&d.caps);
        let dpoly = d.poly.truncate(&caps);
        let c0 = dpoly.coeff(&Monomial::one());
        let invertible = !c0.is_zero()
            && dpoly.terms().all(|(m, _)| m.is_one() || caps.bounds(m));
        if !invertible {
            let q = self.poly.div_exact(&d.poly)?;
            return Ok(TruncSeries::new(q, caps));
        }
        let mut rem: BTreeMap<Monomial, C> =
            self.poly.truncate(&caps).into_terms().collect();
        let mut quot = SparsePoly::zero();
        while let Some((m, c)) = rem.pop_first() {
            let (k, r) = c.div_rem(&c0);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (dm, dc) in dpoly.terms() {
                if dm.is_one() {
                    continue;
                }
                let prod = m.mul(dm);
                if !caps.allows(&prod) {
                    continue;
                }
                let mut t = k.clone();
                t *= dc;
                let slot = rem.entry(prod).or_insert_with(C::zero);
                *slot -= &t;
                if slot.is_zero() {
                    let key = m.mul(dm);
                    rem.remove(&key);
                }
            }
            quot.add_term(m, k);
        }
        Ok(TruncSeries { poly: quot, caps })
    }
}

impl<C: Coeff> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.poly.terms())?;
        if !self.caps.is_empty() {
            write!(f, " + O({})", self.caps)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = TruncSeries<i64>;
    type P = SparsePoly<i64>;

    fn qcap(c: u32) -> Caps {
        Caps::new().with(Var::Q, c)
    }

    #[test]
    fn multiply_and_divide() {
        let a = S::new(P::one_plus(Monomial::var(Var::Q)), qcap(10));
        let b = S::new(P::one_minus(Monomial::var(Var::Q)), qcap(10));
        let p = a.mul(&b);
        assert_eq!(p.poly().to_string(), "1 - q^2");
        assert_eq!(p.divide_exact(&b).unwrap(), a);
    }

    #[test]
    fn series_quotient() {
        let a = S::new(P::one_plus(Monomial::var(Var::Q)), qcap(6));
        let b = S::new(P::one_minus(Monomial::pow(Var::Q, 2)), qcap(6));
        let q = a.divide_exact(&b).unwrap();
        assert_eq!(q.poly().to_string(), "1 + q + q^2 + q^3 + q^4 + q^5");
        let two = S::new(P::constant(2), qcap(6));
        assert_eq!(a.divide_exact(&two), Err(Error::InexactDivision));
    }

    #[test]
    fn caps_meet_on_multiply() {
        let a = S::new(P::one_plus(Monomial::var(Var::Q)), qcap(10));
        let b = S::new(P::one_plus(Monomial::var(Var::Q)), qcap(2));
        assert_eq!(a.mul(&b).poly().to_string(), "1 + 2*q");
        assert_eq!(a.mul(&b).caps().get(Var::Q), Some(2));
    }

    #[test]
    fn geometric_division() {
        let one = S::one(qcap(4));
        let g = one.div_one_minus(&Monomial::var(Var::Q)).unwrap();
        assert_eq!(g.poly().to_string(), "1 + q + q^2 + q^3");
        assert!(S::one(Caps::new()).div_one_minus(&Monomial::var(Var::Q)).is_err());
        assert_eq!(one.div_one_minus(&Monomial::one()), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatch_is_first_in_graded_order() {
        let a = S::new(P::from_univariate(Var::Q, &[1, 2, 3, 4]), qcap(10));
        let b = S::new(P::from_univariate(Var::Q, &[1, 2, 5, 0]), qcap(10));
        let mm = a.first_mismatch(&b).unwrap();
        assert_eq!(mm.monomial, Monomial::pow(Var::Q, 2));
        assert_eq!((mm.lhs, mm.rhs), (3, 5));
        assert!(a.first_mismatch(&a).is_none());
        let c = S::new(P::from_univariate(Var::Q, &[1, 2]), qcap(2));
        assert!(a.first_mismatch(&c).is_none());
    }

    #[test]
    fn json_round_trip() {
        let p = &P::from_univariate(Var::Q, &[1, -3, 7]) + &P::var(Var::U);
        let s = S::new(p, qcap(5).with(Var::U, 3));
        let v = s.to_json();
        assert_eq!(v["vars"], json!(["q", "u"]));
        assert_eq!(v["terms"][1]["coeff"], json!("1"));
        assert_eq!(S::from_json(&v).unwrap(), s);
    }
}
