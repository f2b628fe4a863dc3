use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Coeff, SparsePoly, Var};
use crate::{Error, Result};

/// Exact field arithmetic, as needed for division, Sturm chains and
/// interpolation.
pub trait Field:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + PartialOrd
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}

/// Dense univariate polynomial; `coeffs[i]` multiplies `t^i` and the list
/// carries no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct DensePoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> DensePoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        DensePoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let mut k = F::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in self.coeffs.iter().skip(1) {
            k = k + F::one();
            out.push(c.clone() * k.clone());
        }
        DensePoly::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        DensePoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = F::one() / l.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &Vec<F>, i: usize| v.get(i).cloned().unwrap_or_else(F::zero);
        DensePoly::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        DensePoly::new(out)
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?.clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((DensePoly::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() / dl.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((DensePoly::new(quot), DensePoly::new(rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Sign of the polynomial as `t -> +inf` (or `-inf`).
    fn sign_at_infinity(&self, negative: bool) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some(l) => {
                let s = l.partial_cmp(&F::zero()).unwrap_or(Ordering::Equal);
                let odd = self.degree().unwrap_or(0) % 2 == 1;
                if negative && odd {
                    s.reverse()
                } else {
                    s
                }
            }
        }
    }
}

impl<F: Field> fmt::Display for DensePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Sturm chain of `p`: `p, p', -rem(p, p'), ...`.
pub fn sturm_chain<F: Field>(p: &DensePoly<F>) -> Vec<DensePoly<F>> {
    let mut chain = vec![p.clone()];
    let mut next = p.derivative();
    while !next.is_zero() {
        let prev = chain.last().expect("chain is nonempty").clone();
        chain.push(next.clone());
        let (_, r) = prev.div_rem(&next).expect("nonzero divisor");
        next = r.scale(&-F::one());
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut count = 0;
    let mut last = Ordering::Equal;
    for s in signs.filter(|&s| s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `p`, counted by a Sturm chain over the
/// square-free part, together with the degree of that square-free part.
pub fn distinct_real_roots<F: Field>(p: &DensePoly<F>) -> Result<(usize, usize)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    let (sq, _) = p.div_rem(&g)?;
    let chain = sturm_chain(&sq);
    let at_neg = sign_changes(chain.iter().map(|c| c.sign_at_infinity(true)));
    let at_pos = sign_changes(chain.iter().map(|c| c.sign_at_infinity(false)));
    Ok((at_neg - at_pos, sq.degree().unwrap_or(0)))
}

fn to_rational_poly<C: Coeff + Into<BigInt>>(p: &SparsePoly<C>, var: Var) -> Result<DensePoly<BigRational>> {
    let coeffs = p.univariate_coeffs(var)?;
    Ok(DensePoly::new(coeffs.into_iter().map(|c| BigRational::from_integer(c.into())).collect()))
}

/// `(distinct real roots, degree of square-free part)` of a univariate
/// integer polynomial. The polynomial is real-rooted iff the two agree.
pub fn real_root_count<C: Coeff + Into<BigInt>>(p: &SparsePoly<C>, var: Var) -> Result<(usize, usize)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    distinct_real_roots(&to_rational_poly(p, var)?)
}

/// `Some((d, sign))` with `x^d p(1/x) = sign * p(x)`, if such exist.
pub fn palindromic_center<C: Coeff>(p: &SparsePoly<C>, var: Var) -> Result<Option<(u32, i8)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let coeffs = p.univariate_coeffs(var)?;
    let lo = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    let hi = coeffs.len() - 1;
    let d = lo + hi;
    let sign = if coeffs[hi] == coeffs[lo] {
        1
    } else if coeffs[hi] == -coeffs[lo].clone() {
        -1
    } else {
        return Ok(None);
    };
    for i in lo..=hi {
        let mirrored = &coeffs[d - i];
        let expected = if sign == 1 { coeffs[i].clone() } else { -coeffs[i].clone() };
        if *mirrored != expected {
            return Ok(None);
        }
    }
    Ok(Some((d as u32, sign)))
}

/// The unique polynomial of degree below `points.len()` through `points`.
pub fn interpolate<F: Field>(points: &[(F, F)]) -> Result<DensePoly<F>> {
    for (i, (a, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(b, _)| b == a) {
            return Err(Error::DuplicateAbscissa(a.to_string()));
        }
    }
    // Newton divided differences, then expansion into the power basis.
    let n = points.len();
    let mut dd: Vec<F> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = dd[i].clone() - dd[i - 1].clone();
            let den = points[i].0.clone() - points[i - level].0.clone();
            dd[i] = num / den;
        }
    }
    let mut out = DensePoly::zero();
    for i in (0..n).rev() {
        let factor = DensePoly::new(vec![-points[i].0.clone(), F::one()]);
        out = out.mul(&factor).add(&DensePoly::constant(dd[i].clone()));
    }
    Ok(out)
}

/// Interpolation from integer samples `(t, value)`.
pub fn interpolate_integers(points: &[(i64, BigInt)]) -> Result<DensePoly<BigRational>> {
    let pts: Vec<(BigRational, BigRational)> = points
        .iter()
        .map(|(t, v)| (BigRational::from_integer(BigInt::from(*t)), BigRational::from_integer(v.clone())))
        .collect();
    interpolate(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ip(coeffs: &[i64]) -> SparsePoly<i64> {
        SparsePoly::from_univariate(Var::X, coeffs)
    }

    #[test]
    fn root_counts() {
        assert_eq!(real_root_count(&ip(&[2, -3, 1]), Var::X).unwrap(), (2, 2));
        assert_eq!(real_root_count(&ip(&[1, 0, 1]), Var::X).unwrap(), (0, 2));
        assert_eq!(real_root_count(&ip(&[1]), Var::X).unwrap(), (0, 0));
        assert_eq!(real_root_count(&ip(&[1, 1, 1]), Var::X).unwrap(), (0, 2));
        assert_eq!(real_root_count(&ip(&[1, 57, 302, 302, 57, 1]), Var::X).unwrap(), (5, 5));
        // (x-1)^2 (x+2): one double root
        assert_eq!(real_root_count(&ip(&[2, -3, 0, 1]), Var::X).unwrap(), (2, 2));
        assert_eq!(real_root_count(&SparsePoly::<i64>::zero(), Var::X), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn palindromes() {
        assert_eq!(palindromic_center(&ip(&[1, 3, 1]), Var::X).unwrap(), Some((2, 1)));
        assert_eq!(palindromic_center(&ip(&[1, 2]), Var::X).unwrap(), None);
        assert_eq!(palindromic_center(&ip(&[0, 1, 0, -1]), Var::X).unwrap(), Some((4, -1)));
        assert_eq!(palindromic_center(&ip(&[0, 0, 5]), Var::X).unwrap(), Some((4, 1)));
    }

    #[test]
    fn interpolation() {
        let p = interpolate(&[(r(0), r(1)), (r(1), r(4)), (r(2), r(9))]).unwrap();
        assert_eq!(p.coeffs(), &[r(1), r(2), r(1)]);
        let p = interpolate(&[(r(0), r(1)), (r(1), r(2))]).unwrap();
        assert_eq!(p.coeffs(), &[r(1), r(1)]);
        assert!(matches!(
            interpolate(&[(r(0), r(1)), (r(0), r(2))]),
            Err(Error::DuplicateAbscissa(_))
        ));
        assert!(interpolate::<BigRational>(&[]).unwrap().is_zero());
    }

    #[test]
    fn division_and_gcd() {
        let a = DensePoly::new(vec![r(-1), r(0), r(1)]);
        let b = DensePoly::new(vec![r(-1), r(1)]);
        let (q, rem) = a.div_rem(&b).unwrap();
        assert_eq!(q.coeffs(), &[r(1), r(1)]);
        assert!(rem.is_zero());
        assert_eq!(a.gcd(&b).coeffs(), &[r(-1), r(1)]);
        assert_eq!(a.eval(&r(3)), r(8));
    }
}
