use crate::algebra::{Caps, Monomial, Tally, Var};
use crate::sequences::{make_kl, SSeq};
use crate::{Error, Result, Series};

use super::lecture::{chain_holds, walk};
use super::Bound;

/// A member of `G_n^(k,l)`: `lambda_1/a_n >= lambda_2/a_{n-1} >= ... >= lambda_n/a_1 >= 0`.
/// This is an `a^(k,l)`-lecture hall partition read backwards.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GPartition {
    parts: Vec<u64>,
    k: u64,
    l: u64,
}

impl GPartition {
    pub fn new(parts: Vec<u64>, k: u64, l: u64) -> Result<GPartition> {
        let a = make_kl(k, l, parts.len())?;
        if !is_g_member(&parts, &a)? {
            return Err(Error::NotMember(format!("{parts:?} in G_{}^({k},{l})", parts.len())));
        }
        Ok(GPartition { parts, k, l })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn kl(&self) -> (u64, u64) {
        (self.k, self.l)
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// `(|lambda|_o, |lambda|_e)`.
    pub fn alternating_sums(&self) -> (u64, u64) {
        g_stats(&self.parts)
    }
}

/// `(lambda_1 + lambda_3 + ..., lambda_2 + lambda_4 + ...)`.
pub fn g_stats(parts: &[u64]) -> (u64, u64) {
    (parts.iter().step_by(2).sum(), parts.iter().skip(1).step_by(2).sum())
}

/// Membership in `G_n` where `a` holds `a_1..a_n`.
pub fn is_g_member(parts: &[u64], a: &SSeq) -> Result<bool> {
    if parts.len() != a.len() {
        return Err(Error::LengthMismatch { expected: a.len(), got: parts.len() });
    }
    let reversed: Vec<u64> = parts.iter().rev().copied().collect();
    Ok(chain_holds(&reversed, a.values()))
}

/// Visits every member of `G_n` with `a = a_1..a_n` and weight at most
/// `max_weight`, in G order.
pub fn walk_g(a: &[u64], max_weight: u64, visit: &mut impl FnMut(&[u64])) -> Result<()> {
    let mut g = vec![0u64; a.len()];
    walk(a, Bound::weight(max_weight), &mut |nu| {
        for (slot, v) in g.iter_mut().zip(nu.iter().rev()) {
            *slot = *v;
        }
        visit(&g);
    })
}

/// `G_n^(k,l)(x, y) = sum x^|lambda|_o y^|lambda|_e` below caps on `x`, `y`.
pub fn g_gf(k: u64, l: u64, n: usize, caps: &Caps) -> Result<Series> {
    let (Some(cx), Some(cy)) = (caps.get(Var::X), caps.get(Var::Y)) else {
        return Err(Error::Unbounded("G generating function needs caps on x and y".into()));
    };
    let a = make_kl(k, l, n)?;
    let mut tally = Tally::new();
    let max_weight = (cx as u64 + cy as u64).saturating_sub(2);
    walk_g(a.values(), max_weight, &mut |g| {
        let (o, e) = g_stats(g);
        if o < cx as u64 && e < cy as u64 {
            tally.add(Monomial::from_pairs([(Var::X, o as u32), (Var::Y, e as u32)]));
        }
    })?;
    Ok(Series::new(tally.into_poly(), caps.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_members_from_the_worked_chain() {
        for parts in [vec![4, 0], vec![4, 4, 1], vec![12, 4, 5, 1], vec![9, 12, 4, 5, 0]] {
            assert!(GPartition::new(parts, 1, 4).is_ok());
        }
        assert!(GPartition::new(vec![0, 1], 1, 4).is_err());
        assert_eq!(GPartition::new(vec![12, 4, 5, 1], 1, 4).unwrap().alternating_sums(), (17, 5));
    }

    #[test]
    fn g_walk_matches_filter() {
        let a = make_kl(2, 3, 3).unwrap();
        let mut seen = Vec::new();
        walk_g(a.values(), 9, &mut |g| seen.push(g.to_vec())).unwrap();
        let mut brute = Vec::new();
        for x in 0..=9u64 {
            for y in 0..=9 - x {
                for z in 0..=9 - x - y {
                    if is_g_member(&[x, y, z], &a).unwrap() {
                        brute.push(vec![x, y, z]);
                    }
                }
            }
        }
        seen.sort();
        assert_eq!(seen, brute);
    }
}
