//! `s`-Eulerian polynomials and their inflated and divided relatives, by
//! direct enumeration of inversion sequences.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::{palindromic_center, q_int, real_root_count, Var};
use crate::sequences::{make_family, Family, SSeq};
use crate::statistics::asc;
use crate::{Error, Poly, Result};

/// Inversion-sequence budget used when none is given: `LHP_BUDGET` if set,
/// otherwise ten million.
pub fn default_budget() -> u64 {
    std::env::var("LHP_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(10_000_000)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    E,
    Q,
    QDivided,
    OneK,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::E => "E",
            Kind::Q => "Q",
            Kind::QDivided => "Qdiv",
            Kind::OneK => "onek",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(text: &str) -> Result<Kind> {
        match text {
            "E" | "e" => Ok(Kind::E),
            "Q" | "q" => Ok(Kind::Q),
            "Qdiv" | "qdiv" => Ok(Kind::QDivided),
            "onek" => Ok(Kind::OneK),
            _ => Err(Error::Parse(format!("unknown kind '{text}'"))),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct EulerianResult {
    pub poly: Poly,
    pub sequence: SSeq,
    pub kind: Kind,
}

fn check_budget(s: &[u64], budget: u64) -> Result<()> {
    let size: u128 = s.iter().map(|&v| v as u128).product();
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(())
}

/// Tallies `exponent(e)` over `I_n^(s)`, split across threads by `e_1`.
fn tally_exponents(s: &[u64], exponent: impl Fn(&[u64]) -> usize + Sync) -> Vec<u64> {
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        if a.len() < b.len() {
            a.resize(b.len(), 0);
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    if s.is_empty() {
        let x = exponent(&[]);
        let mut c = vec![0; x + 1];
        c[x] = 1;
        return c;
    }
    (0..s[0])
        .into_par_iter()
        .map(|first| {
            let mut counts = Vec::new();
            let mut e = vec![0u64; s.len()];
            e[0] = first;
            loop {
                let x = exponent(&e);
                if counts.len() <= x {
                    counts.resize(x + 1, 0);
                }
                counts[x] += 1;
                let mut i = s.len();
                loop {
                    i -= 1;
                    if i == 0 {
                        return counts;
                    }
                    e[i] += 1;
                    if e[i] < s[i] {
                        break;
                    }
                    e[i] = 0;
                }
            }
        })
        .reduce(Vec::new, merge)
}

fn to_poly(counts: Vec<u64>) -> Poly {
    let coeffs: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    Poly::from_univariate(Var::X, &coeffs)
}

pub fn compute(kind: Kind, s: &SSeq, budget: u64) -> Result<EulerianResult> {
    let v = s.values();
    let n = v.len();
    let poly = match kind {
        Kind::E | Kind::OneK => {
            check_budget(v, budget)?;
            to_poly(tally_exponents(v, |e| asc(e, v) as usize))
        }
        Kind::Q => {
            check_budget(v, budget)?;
            let sn = v.last().copied().unwrap_or(1);
            to_poly(tally_exponents(v, |e| match e.last() {
                Some(&en) => (sn * asc(e, v) - en) as usize,
                None => 0,
            }))
        }
        Kind::QDivided => {
            let divided = quotient_sum(s, budget)?;
            let sn = v[n - 1];
            let q = compute(Kind::Q, s, budget)?.poly;
            if &divided * &q_int(sn as u32, Var::X) != q {
                return Err(Error::Consistency(format!("divided polynomial times [{sn}] differs from Q for s = {s}")));
            }
            divided
        }
    };
    Ok(EulerianResult { poly, sequence: s.clone(), kind })
}

/// `sum over I_{n-1}^(s) of x^(s_n asc e - floor(s_n e_{n-1} / s_{n-1}))`,
/// with no comparison against `Q`.
pub fn quotient_sum(s: &SSeq, budget: u64) -> Result<Poly> {
    let v = s.values();
    let n = v.len();
    if n == 0 {
        return Err(Error::InvalidParameter("the divided polynomial needs n >= 1".into()));
    }
    let head = &v[..n - 1];
    check_budget(head, budget)?;
    let sn = v[n - 1];
    Ok(to_poly(tally_exponents(head, |e| {
        let drop = match e.last() {
            Some(&last) => (sn as u128 * last as u128 / head[n - 2] as u128) as u64,
            None => 0,
        };
        (sn * asc(e, head) - drop) as usize
    })))
}

/// `E_n^(s)(x)`, the ascent polynomial of `I_n^(s)`.
pub fn s_eulerian(s: &SSeq) -> Result<Poly> {
    Ok(compute(Kind::E, s, default_budget())?.poly)
}

/// `Q_n^(s)(x) = sum x^(s_n asc e - e_n)`.
pub fn inflated_eulerian(s: &SSeq) -> Result<Poly> {
    Ok(compute(Kind::Q, s, default_budget())?.poly)
}

/// `Q_n^(s)(x) / (1 + x + ... + x^(s_n - 1))`, summed over `I_{n-1}^(s)`
/// and checked against the product.
pub fn inflated_divided(s: &SSeq) -> Result<Poly> {
    Ok(compute(Kind::QDivided, s, default_budget())?.poly)
}

/// `E_{n,k}(x)`, the ascent polynomial for `(1, k+1, 2k+1, ...)`.
pub fn one_k_eulerian(n: usize, k: u64) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let s = make_family(Family::OneModK { k }, n)?;
    Ok(compute(Kind::OneK, &s, default_budget())?.poly)
}

/// True iff every root of the univariate polynomial `p` (in any variable)
/// is real. Constants are vacuously real-rooted.
pub fn is_real_rooted(p: &Poly) -> Result<bool> {
    let var = p.sole_variable()?.unwrap_or(Var::X);
    let (roots, degree) = real_root_count(p, var)?;
    Ok(roots == degree)
}

/// Whether the coefficient sequence rises weakly and then falls weakly.
pub fn is_unimodal(p: &Poly) -> Result<bool> {
    let var = p.sole_variable()?.unwrap_or(Var::X);
    let c = p.univariate_coeffs(var)?;
    let peak = c.windows(2).position(|w| w[1] < w[0]).unwrap_or(c.len());
    Ok(c[peak.min(c.len())..].windows(2).all(|w| w[1] <= w[0]))
}

/// Whether `p` is palindromic about some center.
pub fn is_palindromic(p: &Poly) -> Result<bool> {
    let var = p.sole_variable()?.unwrap_or(Var::X);
    Ok(palindromic_center(p, var)?.is_some_and(|(_, sign)| sign == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> SSeq {
        SSeq::explicit(v.to_vec()).unwrap()
    }

    fn x(coeffs: &[i64]) -> Poly {
        Poly::from_univariate(Var::X, &coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    #[test]
    fn table_rows() {
        assert_eq!(s_eulerian(&seq(&[1, 2, 3, 4, 5, 6])).unwrap(), x(&[1, 57, 302, 302, 57, 1]));
        assert_eq!(s_eulerian(&seq(&[1, 1, 3, 2, 5, 3])).unwrap(), x(&[1, 20, 48, 20, 1]));
        assert_eq!(s_eulerian(&seq(&[7, 2, 3, 5, 4, 6])).unwrap(), x(&[1, 71, 948, 2450, 1411, 159]));
    }

    #[test]
    fn inflated_small() {
        assert_eq!(inflated_eulerian(&seq(&[1, 2])).unwrap(), x(&[1, 1]));
        assert_eq!(inflated_eulerian(&seq(&[2])).unwrap(), x(&[1, 1]));
        assert_eq!(inflated_eulerian(&seq(&[])).unwrap(), x(&[1]));
        assert_eq!(inflated_divided(&seq(&[1, 2])).unwrap(), x(&[1]));
        assert_eq!(inflated_divided(&seq(&[7])).unwrap(), x(&[1]));
        for n in 1..=5u64 {
            inflated_divided(&SSeq::explicit((1..=n).collect()).unwrap()).unwrap();
        }
        inflated_divided(&seq(&[3, 1, 4, 1, 5])).unwrap();
    }

    #[test]
    fn one_k() {
        assert_eq!(one_k_eulerian(2, 2).unwrap(), x(&[1, 2]));
        assert_eq!(one_k_eulerian(4, 1).unwrap(), x(&[1, 11, 11, 1]));
    }

    #[test]
    fn roots_and_shape() {
        assert!(is_real_rooted(&x(&[1, 57, 302, 302, 57, 1])).unwrap());
        assert!(!is_real_rooted(&x(&[1, 1, 1])).unwrap());
        assert!(is_real_rooted(&x(&[1])).unwrap());
        assert!(is_real_rooted(&Poly::zero()).is_err());
        assert!(is_unimodal(&x(&[1, 3, 3, 1])).unwrap());
        assert!(!is_unimodal(&x(&[1, 0, 1])).unwrap());
        assert!(is_palindromic(&x(&[0, 1, 2, 1])).unwrap());
    }

    #[test]
    fn budget_guard() {
        let err = compute(Kind::E, &seq(&[10, 10, 10]), 999).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { size: 1000, budget: 999 });
    }
}
