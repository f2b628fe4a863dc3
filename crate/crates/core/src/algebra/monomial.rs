use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

const NAMED: [&str; 8] = ["q", "x", "u", "v", "z", "y", "w", "t"];
const INDEXED_BASE: u16 = 100;

/// A formal variable. Ids below 100 are named (`q`, `x`, ...); ids from 101 on
/// are the indexed family `z1, z2, ...`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u16);

impl Var {
    pub const Q: Var = Var(0);
    pub const X: Var = Var(1);
    pub const U: Var = Var(2);
    pub const V: Var = Var(3);
    pub const Z: Var = Var(4);
    pub const Y: Var = Var(5);
    pub const W: Var = Var(6);
    pub const T: Var = Var(7);

    /// The indexed variable `z_i`, `i >= 1`.
    pub fn z(i: usize) -> Var {
        assert!(i >= 1 && i < (u16::MAX - INDEXED_BASE) as usize);
        Var(INDEXED_BASE + i as u16)
    }

    pub fn id(self) -> u16 {
        self.0
    }

    pub fn name(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 > INDEXED_BASE {
            write!(f, "z{}", self.0 - INDEXED_BASE)
        } else if let Some(name) = NAMED.get(self.0 as usize) {
            f.write_str(name)
        } else {
            write!(f, "v#{}", self.0)
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        let s = s.trim();
        if let Some(pos) = NAMED.iter().position(|&n| n == s) {
            return Ok(Var(pos as u16));
        }
        if let Some(idx) = s.strip_prefix('z') {
            if let Ok(i) = idx.parse::<usize>() {
                if (1..1000).contains(&i) {
                    return Ok(Var::z(i));
                }
            }
        }
        Err(Error::Parse(format!("unknown variable '{s}'")))
    }
}

/// A power product of variables. Exponents are stored sorted by variable with
/// no zero entries, so the empty product is the unit monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::pow(v, 1)
    }

    pub fn pow(v: Var, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Monomial {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// `z1^e1 * z2^e2 * ...` for an exponent vector.
    pub fn from_exponents(exps: &[u64]) -> Monomial {
        Monomial::from_pairs(
            exps.iter()
                .enumerate()
                .map(|(i, &e)| (Var::z(i + 1), u32::try_from(e).expect("exponent overflow"))),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            let mut d = 0;
            if j < other.0.len() && other.0[j].0 == v {
                d = other.0[j].1;
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if d > e {
                return None;
            }
            if e > d {
                out.push((v, e - d));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn powi(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Replace every variable by a monomial image.
    pub fn substitute(&self, f: &impl Fn(Var) -> Monomial) -> Monomial {
        let mut out = Monomial::one();
        for &(v, e) in &self.0 {
            out = out.mul(&f(v).powi(e));
        }
        out
    }
}

impl Ord for Monomial {
    /// Graded order: total degree first, then the exponent vector compared
    /// variable by variable in id order, larger exponent first-differing wins.
    fn cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exclusive per-variable truncation orders. A variable without an entry is
/// unbounded.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Caps(BTreeMap<Var, u32>);

impl Caps {
    pub fn new() -> Caps {
        Caps::default()
    }

    pub fn of(pairs: &[(Var, u32)]) -> Caps {
        Caps(pairs.iter().copied().collect())
    }

    pub fn with(mut self, v: Var, cap: u32) -> Caps {
        self.0.insert(v, cap);
        self
    }

    pub fn get(&self, v: Var) -> Option<u32> {
        self.0.get(&v).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(&v, &c)| (v, c))
    }

    pub fn allows(&self, m: &Monomial) -> bool {
        if self.0.is_empty() {
            return true;
        }
        self.0.iter().all(|(&v, &c)| m.exponent(v) < c)
    }

    /// True when some variable of `m` carries a cap, so powers of `m`
    /// eventually leave the window.
    pub fn bounds(&self, m: &Monomial) -> bool {
        m.vars().any(|v| self.0.contains_key(&v))
    }

    /// Componentwise minimum; a cap present on either side survives.
    pub fn meet(&self, other: &Caps) -> Caps {
        let mut out = self.0.clone();
        for (&v, &c) in &other.0 {
            out.entry(v).and_modify(|d| *d = (*d).min(c)).or_insert(c);
        }
        Caps(out)
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, c)| format!("{v}={c}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Caps {
    type Err = Error;

    /// Parses `"q=30,u=20"`.
    fn from_str(s: &str) -> Result<Caps> {
        let mut caps = Caps::new();
        for item in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap '{item}' is not of the form var=N")))?;
            let v: Var = name.parse()?;
            let c: u32 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cap value '{value}' is not a number")))?;
            caps.0.insert(v, c);
        }
        Ok(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let q = Monomial::var(Var::Q);
        let x = Monomial::var(Var::X);
        let q2 = Monomial::pow(Var::Q, 2);
        assert!(Monomial::one() < q);
        assert!(q < q2);
        assert!(x < q);
        assert!(q.mul(&x) < q2);
        assert!(Monomial::from_pairs([(Var::Q, 1), (Var::U, 1)]) < q2);
    }

    #[test]
    fn divide_and_multiply() {
        let a = Monomial::from_pairs([(Var::Q, 3), (Var::U, 1)]);
        let b = Monomial::from_pairs([(Var::Q, 1)]);
        let c = a.div(&b).unwrap();
        assert_eq!(c, Monomial::from_pairs([(Var::Q, 2), (Var::U, 1)]));
        assert_eq!(c.mul(&b), a);
        assert!(b.div(&a).is_none());
        assert!(a.div(&Monomial::var(Var::X)).is_none());
    }

    #[test]
    fn names_round_trip() {
        for v in [Var::Q, Var::X, Var::U, Var::V, Var::Z, Var::Y, Var::z(1), Var::z(12)] {
            assert_eq!(v.to_string().parse::<Var>().unwrap(), v);
        }
        assert!("nope".parse::<Var>().is_err());
    }

    #[test]
    fn caps_parse_and_meet() {
        let a: Caps = "q=30, u=20".parse().unwrap();
        let b: Caps = "q=10,x=5".parse().unwrap();
        let m = a.meet(&b);
        assert_eq!(m.get(Var::Q), Some(10));
        assert_eq!(m.get(Var::U), Some(20));
        assert_eq!(m.get(Var::X), Some(5));
        assert_eq!(m.to_string(), "q=10,x=5,u=20");
        assert!("q".parse::<Caps>().is_err());
    }

    #[test]
    fn display() {
        let m = Monomial::from_pairs([(Var::X, 2), (Var::Q, 1)]);
        assert_eq!(m.to_string(), "q*x^2");
        assert_eq!(Monomial::one().to_string(), "1");
    }
}
