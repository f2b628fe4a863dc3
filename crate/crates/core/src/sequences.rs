//! The positive-integer sequences `s` that parameterize everything else.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    Explicit,
    /// Alternating recurrence with multipliers `k` (odd steps) and `l` (even).
    Kl { k: u64, l: u64 },
    /// `a_n = l a_{n-1} - a_{n-2}`.
    Ell { l: u64 },
    /// `1, k+1, 2k+1, ...`.
    OneModK { k: u64 },
    /// `k, 2k, 3k, ...`.
    Arithmetic { k: u64 },
}

/// A finite sequence of positive integers with the family it came from.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SSeq {
    values: Vec<u64>,
    family: Family,
}

impl SSeq {
    pub fn explicit(values: Vec<u64>) -> Result<SSeq> {
        if let Some(i) = values.iter().position(|&v| v == 0) {
            return Err(Error::NonPositiveTerm { index: i + 1 });
        }
        Ok(SSeq { values, family: Family::Explicit })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 1-based access, matching the usual indexing of `s_i`.
    pub fn at(&self, i: usize) -> u64 {
        self.values[i - 1]
    }

    pub fn product(&self) -> u128 {
        self.values.iter().map(|&v| v as u128).product()
    }

    pub fn reversed(&self) -> SSeq {
        let mut values = self.values.clone();
        values.reverse();
        SSeq { values, family: Family::Explicit }
    }

    pub fn prefix(&self, n: usize) -> SSeq {
        SSeq { values: self.values[..n].to_vec(), family: self.family }
    }

    pub fn kl(k: u64, l: u64, n: usize) -> Result<SSeq> {
        make_kl(k, l, n)
    }

    pub fn ell(l: u64, n: usize) -> Result<SSeq> {
        make_family(Family::Ell { l }, n)
    }
}

/// Terms `a_0 = 0, a_1, ..., a_n` of the `(k, l)` recurrence, unchecked.
pub fn kl_terms(k: u64, l: u64, n: usize) -> Vec<i128> {
    let mut a: Vec<i128> = vec![0, 1];
    while a.len() <= n {
        let i = a.len();
        let m = if i.is_multiple_of(2) { l } else { k } as i128;
        a.push(m * a[i - 1] - a[i - 2]);
    }
    a.truncate(n + 1);
    a
}

/// `a^(k,l)_1..n`: `a_1 = 1`, `a_2 = l`, `a_{2i} = l a_{2i-1} - a_{2i-2}` and
/// `a_{2i+1} = k a_{2i} - a_{2i-1}`, with `a_0 = 0`.
pub fn make_kl(k: u64, l: u64, n: usize) -> Result<SSeq> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidParameter(format!("(k, l) = ({k}, {l}) must be positive")));
    }
    let a = kl_terms(k, l, n);
    let mut values = Vec::with_capacity(n);
    for (i, &t) in a.iter().enumerate().skip(1) {
        if t <= 0 {
            return Err(Error::NonPositiveTerm { index: i });
        }
        values.push(u64::try_from(t).map_err(|_| Error::InvalidParameter(format!("term {i} overflows")))?);
    }
    Ok(SSeq { values, family: Family::Kl { k, l } })
}

pub fn make_family(family: Family, n: usize) -> Result<SSeq> {
    let positive = |k: u64, name: &str| {
        if k == 0 {
            Err(Error::InvalidParameter(format!("{name} must be positive")))
        } else {
            Ok(())
        }
    };
    match family {
        Family::Explicit => Err(Error::InvalidParameter("explicit sequences need their values".into())),
        Family::Kl { k, l } => make_kl(k, l, n),
        Family::Ell { l } => {
            positive(l, "l")?;
            let s = make_kl(l, l, n)?;
            Ok(SSeq { values: s.values, family })
        }
        Family::OneModK { k } => {
            positive(k, "k")?;
            Ok(SSeq { values: (0..n as u64).map(|i| i * k + 1).collect(), family })
        }
        Family::Arithmetic { k } => {
            positive(k, "k")?;
            Ok(SSeq { values: (1..=n as u64).map(|i| i * k).collect(), family })
        }
    }
}

/// `rho_i = a^(k,l)_i + a^(l,k)_{i-1}` and `r_i = a^(l,k)_i + a^(k,l)_{i-1}`.
pub fn rho_r(k: u64, l: u64, n: usize) -> Result<(Vec<u64>, Vec<u64>)> {
    let a = make_kl(k, l, n)?;
    let b = make_kl(l, k, n)?;
    let prev = |s: &SSeq, i: usize| if i == 1 { 0 } else { s.at(i - 1) };
    let rho = (1..=n).map(|i| a.at(i) + prev(&b, i)).collect();
    let r = (1..=n).map(|i| b.at(i) + prev(&a, i)).collect();
    Ok((rho, r))
}

/// Exact test of `x > c_l * y`, where `c_l` is the larger root of
/// `t^2 - l t + 1`.
pub fn gt_c_ell(x: u64, y: u64, l: u64) -> bool {
    if y == 0 {
        return x > 0;
    }
    let (x, y, l) = (x as u128, y as u128, l as u128);
    2 * x > l * y && x * x + y * y > l * x * y
}

impl fmt::Display for SSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.values.len();
        match self.family {
            Family::Kl { k, l } => write!(f, "kl:{k},{l}:n={n}"),
            Family::Ell { l } => write!(f, "ell:{l}:n={n}"),
            Family::OneModK { k } => write!(f, "1modk:{k}:n={n}"),
            Family::Arithmetic { k } => write!(f, "arith:{k}:n={n}"),
            Family::Explicit => {
                let parts: Vec<String> = self.values.iter().map(u64::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for SSeq {
    type Err = Error;

    /// `1,2,3`, `kl:1,4:n=8`, `ell:3:n=6`, `1modk:2:n=6` or `arith:2:n=5`.
    fn from_str(text: &str) -> Result<SSeq> {
        let text = text.trim();
        let num = |t: &str| -> Result<u64> {
            t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("'{t}' is not a nonnegative integer")))
        };
        if !text.contains(':') {
            let values = text
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(num)
                .collect::<Result<Vec<_>>>()?;
            return SSeq::explicit(values);
        }
        let fields: Vec<&str> = text.split(':').collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("sequence spec '{text}' needs the form family:params:n=N")));
        }
        let n = fields[2]
            .trim()
            .strip_prefix("n=")
            .ok_or_else(|| Error::Parse(format!("missing n= in '{text}'")))
            .and_then(num)? as usize;
        let params = fields[1].split(',').map(num).collect::<Result<Vec<_>>>()?;
        let one = |name: &str| -> Result<u64> {
            match params.as_slice() {
                [p] => Ok(*p),
                _ => Err(Error::Parse(format!("{name} takes exactly one parameter"))),
            }
        };
        let family = match fields[0].trim() {
            "kl" => match params.as_slice() {
                [k, l] => Family::Kl { k: *k, l: *l },
                _ => return Err(Error::Parse("kl takes two parameters".into())),
            },
            "ell" => Family::Ell { l: one("ell")? },
            "1modk" => Family::OneModK { k: one("1modk")? },
            "arith" => Family::Arithmetic { k: one("arith")? },
            other => return Err(Error::Parse(format!("unknown sequence family '{other}'"))),
        };
        make_family(family, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kl_sequences() {
        assert_eq!(make_kl(1, 4, 9).unwrap().values(), &[1, 4, 3, 8, 5, 12, 7, 16, 9]);
        assert_eq!(make_kl(4, 1, 9).unwrap().values(), &[1, 1, 3, 2, 5, 3, 7, 4, 9]);
        assert_eq!(make_kl(2, 2, 5).unwrap().values(), &[1, 2, 3, 4, 5]);
        // k l < 4 eventually goes nonpositive: (1,3) gives 1,3,2,3,1,0
        assert_eq!(make_kl(1, 3, 6), Err(Error::NonPositiveTerm { index: 6 }));
        assert!(make_kl(1, 3, 5).is_ok());
    }

    #[test]
    fn families() {
        assert_eq!(make_family(Family::OneModK { k: 2 }, 6).unwrap().values(), &[1, 3, 5, 7, 9, 11]);
        assert_eq!(make_family(Family::Arithmetic { k: 2 }, 5).unwrap().values(), &[2, 4, 6, 8, 10]);
        assert_eq!(make_family(Family::Ell { l: 2 }, 4).unwrap().values(), &[1, 2, 3, 4]);
        assert_eq!(make_family(Family::Ell { l: 3 }, 5).unwrap().values(), &[1, 3, 8, 21, 55]);
        assert!(make_family(Family::Arithmetic { k: 0 }, 3).is_err());
    }

    #[test]
    fn rho_and_r() {
        let (rho, r) = rho_r(1, 4, 5).unwrap();
        assert_eq!(rho, vec![1, 5, 4, 11, 7]);
        assert_eq!(r, vec![1, 2, 7, 5, 13]);
        assert_eq!(rho_r(2, 2, 4).unwrap().0, vec![1, 3, 5, 7]);
        assert_eq!(rho_r(3, 5, 1).unwrap(), (vec![1], vec![1]));
    }

    #[test]
    fn c_ell_comparisons() {
        assert!(gt_c_ell(3, 2, 2));
        assert!(!gt_c_ell(2, 2, 2));
        assert!(gt_c_ell(7, 2, 3));
        assert!(!gt_c_ell(5, 2, 3));
        assert!(gt_c_ell(1, 0, 3));
        assert!(!gt_c_ell(0, 0, 3));
    }

    #[test]
    fn spec_grammar() {
        for text in ["1,2,3,4", "kl:1,4:n=8", "ell:3:n=6", "1modk:2:n=6", "arith:2:n=5"] {
            let s: SSeq = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        assert_eq!("kl:1,4:n=3".parse::<SSeq>().unwrap().values(), &[1, 4, 3]);
        assert!("1,0,2".parse::<SSeq>().is_err());
        assert!("foo:1:n=3".parse::<SSeq>().is_err());
        assert!("kl:1:n=3".parse::<SSeq>().is_err());
        assert!("ell:2:3".parse::<SSeq>().is_err());
    }
}
