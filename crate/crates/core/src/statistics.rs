//! Permutation, signed permutation, multiset word and inversion sequence
//! statistics.

use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{Monomial, Tally};
use crate::sequences::SSeq;
use crate::{Error, Poly, Result};

fn parse_list<T: FromStr>(text: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| Error::Parse(format!("bad entry '{t}'"))))
        .collect()
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm(Vec<u32>);

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PermStats {
    pub descent_set: Vec<usize>,
    pub des: u64,
    pub maj: u64,
    pub comaj: u64,
    pub inv: u64,
    pub exc: u64,
    pub cyc: u64,
    pub bin: u64,
    pub sq: u64,
    pub binv: u64,
    pub sqin: u64,
    pub lhp: i64,
    pub siz: i64,
}

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Perm {
        Perm((1..=n as u32).collect())
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        (1..=n as u32).permutations(n).map(Perm)
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// 1-based positions `i` with `pi_i > pi_{i+1}`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.0[i - 1] > self.0[i]).collect()
    }

    pub fn des(&self) -> u64 {
        self.descents().len() as u64
    }

    pub fn maj(&self) -> u64 {
        self.descents().iter().map(|&i| i as u64).sum()
    }

    pub fn inv(&self) -> u64 {
        let p = &self.0;
        (0..p.len()).map(|j| (0..j).filter(|&i| p[i] > p[j]).count() as u64).sum()
    }

    pub fn cycles(&self) -> u64 {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if !seen[start] {
                count += 1;
                let mut j = start;
                while !seen[j] {
                    seen[j] = true;
                    j = self.0[j] as usize - 1;
                }
            }
        }
        count
    }

    pub fn stats(&self) -> PermStats {
        let n = self.n() as u64;
        let descent_set = self.descents();
        let d = || descent_set.iter().map(|&i| i as u64);
        let inv = self.inv();
        let maj: u64 = d().sum();
        let bin: u64 = d().map(|i| i * (i + 1) / 2).sum();
        let sq: u64 = d().map(|i| i * i).sum();
        // (i+1) + ... + n
        let tail: u64 = d().map(|i| (n * (n + 1) - i * (i + 1)) / 2).sum();
        let sqin = sq + inv;
        PermStats {
            des: descent_set.len() as u64,
            maj,
            comaj: d().map(|i| n - i).sum(),
            inv,
            exc: self.0.iter().enumerate().filter(|(i, &v)| v as usize > i + 1).count() as u64,
            cyc: self.cycles(),
            bin,
            sq,
            binv: bin + inv,
            sqin,
            lhp: tail as i64 - inv as i64,
            siz: ((n + 1) * maj) as i64 - sqin as i64,
            descent_set,
        }
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(text: &str) -> Result<Perm> {
        Perm::new(parse_list(text)?)
    }
}

/// Which boundary value `sigma_0` the signed descent count uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    /// `sigma_0 = 0`.
    B,
    /// `sigma_0 = -sigma_2`.
    D,
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(text: &str) -> Result<Flavor> {
        match text {
            "B" | "b" => Ok(Flavor::B),
            "D" | "d" => Ok(Flavor::D),
            _ => Err(Error::Parse(format!("unknown flavor '{text}'"))),
        }
    }
}

/// A signed permutation: `|sigma_i|` runs over `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPerm(Vec<i64>);

impl SignedPerm {
    pub fn new(values: Vec<i64>) -> Result<SignedPerm> {
        Perm::new(values.iter().map(|v| v.unsigned_abs() as u32).collect())?;
        Ok(SignedPerm(values))
    }

    /// All of `B_n`: permutations in lexicographic order, each with every
    /// sign pattern.
    pub fn all(n: usize) -> impl Iterator<Item = SignedPerm> {
        Perm::all(n).flat_map(move |p| {
            (0u32..1 << n).map(move |mask| {
                SignedPerm(
                    p.0.iter()
                        .enumerate()
                        .map(|(i, &v)| if mask >> i & 1 == 1 { -(v as i64) } else { v as i64 })
                        .collect(),
                )
            })
        })
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn negatives(&self) -> usize {
        self.0.iter().filter(|v| **v < 0).count()
    }

    /// Members of `D_n` have an even number of negative entries.
    pub fn is_type_d(&self) -> bool {
        self.negatives().is_multiple_of(2)
    }

    pub fn des(&self, flavor: Flavor) -> Result<u64> {
        let first = match flavor {
            Flavor::B => 0,
            Flavor::D => {
                if self.0.len() < 2 {
                    return Err(Error::InvalidParameter("type D descents need n >= 2".into()));
                }
                -self.0[1]
            }
        };
        let mut prev = first;
        let mut count = 0;
        for &v in &self.0 {
            if prev > v {
                count += 1;
            }
            prev = v;
        }
        Ok(count)
    }
}

impl FromStr for SignedPerm {
    type Err = Error;

    fn from_str(text: &str) -> Result<SignedPerm> {
        SignedPerm::new(parse_list(text)?)
    }
}

/// A word over positive letters, typically an arrangement of a multiset.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultisetWord(Vec<u64>);

impl MultisetWord {
    pub fn new(letters: Vec<u64>) -> Result<MultisetWord> {
        if letters.is_empty() {
            return Err(Error::InvalidParameter("empty word".into()));
        }
        if letters.contains(&0) {
            return Err(Error::InvalidParameter("letters must be positive".into()));
        }
        Ok(MultisetWord(letters))
    }

    pub fn letters(&self) -> &[u64] {
        &self.0
    }

    /// Strict descents `w_i > w_{i+1}`, with no boundary letter.
    pub fn des(&self) -> u64 {
        self.0.windows(2).filter(|w| w[0] > w[1]).count() as u64
    }

    /// Every distinct rearrangement of `letters`, in lexicographic order.
    pub fn arrangements(letters: &[u64]) -> Vec<MultisetWord> {
        let mut w = letters.to_vec();
        w.sort_unstable();
        let mut out = vec![MultisetWord(w.clone())];
        while next_permutation(&mut w) {
            out.push(MultisetWord(w.clone()));
        }
        out
    }
}

fn next_permutation(w: &mut [u64]) -> bool {
    let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
        return false;
    };
    let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).expect("pivot has a successor");
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

impl FromStr for MultisetWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<MultisetWord> {
        MultisetWord::new(parse_list(text)?)
    }
}

/// An `s`-inversion sequence, `0 <= e_i < s_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvSeq {
    e: Vec<u64>,
    s: SSeq,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InvSeqStats {
    pub ascent_set: Vec<usize>,
    pub asc: u64,
    pub amaj: u64,
    pub lhp: u64,
    pub weight: u64,
}

impl InvSeq {
    pub fn new(e: Vec<u64>, s: SSeq) -> Result<InvSeq> {
        if e.len() != s.len() {
            return Err(Error::LengthMismatch { expected: s.len(), got: e.len() });
        }
        if let Some(i) = e.iter().zip(s.values()).position(|(e, s)| e >= s) {
            return Err(Error::InvalidParameter(format!("e_{} = {} is not below s_{}", i + 1, e[i], i + 1)));
        }
        Ok(InvSeq { e, s })
    }

    pub fn entries(&self) -> &[u64] {
        &self.e
    }

    pub fn ambient(&self) -> &SSeq {
        &self.s
    }

    pub fn stats(&self) -> InvSeqStats {
        invseq_stats(&self.e, self.s.values())
    }
}

/// Positions `i` in `0..n` with `e_i/s_i < e_{i+1}/s_{i+1}`, where `e_0 = 0`
/// and `s_0 = 1`.
pub fn ascent_set(e: &[u64], s: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut pe, mut ps) = (0u128, 1u128);
    for (i, (&x, &y)) in e.iter().zip(s).enumerate() {
        if pe * (y as u128) < (x as u128) * ps {
            out.push(i);
        }
        (pe, ps) = (x as u128, y as u128);
    }
    out
}

pub fn asc(e: &[u64], s: &[u64]) -> u64 {
    let (mut pe, mut ps) = (0u128, 1u128);
    let mut count = 0;
    for (&x, &y) in e.iter().zip(s) {
        if pe * (y as u128) < (x as u128) * ps {
            count += 1;
        }
        (pe, ps) = (x as u128, y as u128);
    }
    count
}

pub fn invseq_stats(e: &[u64], s: &[u64]) -> InvSeqStats {
    let n = e.len();
    let ascent_set = ascent_set(e, s);
    let mut suffix = vec![0u64; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + s[i];
    }
    let weight = e.iter().sum();
    let tail: u64 = ascent_set.iter().map(|&i| suffix[i]).sum();
    InvSeqStats {
        asc: ascent_set.len() as u64,
        amaj: ascent_set.iter().map(|&i| (n - i) as u64).sum(),
        lhp: tail - weight,
        weight,
        ascent_set,
    }
}

/// Calls `visit` on every element of `I_n^(s)` in lexicographic order.
pub fn for_each_invseq(s: &[u64], mut visit: impl FnMut(&[u64])) {
    let n = s.len();
    let mut e = vec![0u64; n];
    loop {
        visit(&e);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            e[i] += 1;
            if e[i] < s[i] {
                break;
            }
            e[i] = 0;
        }
    }
}

/// Lehmer-style code `e_i = #{j < i : pi_j > pi_i}`, an element of `I_n^(1..n)`.
pub fn perm_to_invseq(p: &Perm) -> Vec<u64> {
    let v = p.images();
    (0..v.len()).map(|i| (0..i).filter(|&j| v[j] > v[i]).count() as u64).collect()
}

/// Inverse of [`perm_to_invseq`].
pub fn invseq_to_perm(e: &[u64]) -> Result<Perm> {
    let n = e.len();
    if let Some(i) = e.iter().enumerate().position(|(i, &x)| x > i as u64) {
        return Err(Error::InvalidParameter(format!("e_{} = {} exceeds {}", i + 1, e[i], i)));
    }
    // ranks[j] is the 0-based rank of pi_j among the entries seen so far
    let mut ranks: Vec<usize> = Vec::with_capacity(n);
    for (i, &r) in e.iter().enumerate() {
        let r = r as usize;
        for x in ranks.iter_mut() {
            if *x >= i - r {
                *x += 1;
            }
        }
        ranks.push(i - r);
    }
    Perm::new(ranks.into_iter().map(|r| r as u32 + 1).collect())
}

/// `sum over items of monomial(item)`.
pub fn distribution<T>(items: impl IntoIterator<Item = T>, monomial: impl Fn(&T) -> Monomial) -> Poly {
    items.into_iter().map(|t| monomial(&t)).collect::<Tally>().into_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q_int, Var};

    #[test]
    fn two_one() {
        let st = Perm::new(vec![2, 1]).unwrap().stats();
        assert_eq!(st.descent_set, vec![1]);
        assert_eq!((st.maj, st.comaj, st.inv, st.bin, st.sq), (1, 1, 1, 1, 1));
        assert_eq!((st.binv, st.sqin, st.exc, st.cyc, st.lhp), (2, 2, 1, 1, 1));
        let id = Perm::identity(4).stats();
        assert_eq!((id.des, id.maj, id.inv, id.cyc), (0, 0, 0, 4));
    }

    #[test]
    fn maj_over_s3() {
        let d = distribution(Perm::all(3), |p| Monomial::pow(Var::U, p.maj() as u32));
        assert_eq!(d, &q_int(2, Var::U) * &q_int(3, Var::U));
        assert_eq!(distribution(Perm::all(2), |p| Monomial::pow(Var::X, p.des() as u32)).to_string(), "1 + x");
    }

    #[test]
    fn invseq_examples() {
        let s = SSeq::explicit(vec![5, 3]).unwrap();
        let st = InvSeq::new(vec![3, 2], s.clone()).unwrap().stats();
        assert_eq!(st.ascent_set, vec![0, 1]);
        assert_eq!((st.asc, st.amaj, st.lhp), (2, 3, 6));
        let zero = InvSeq::new(vec![0, 0], s.clone()).unwrap().stats();
        assert_eq!((zero.asc, zero.amaj, zero.lhp), (0, 0, 0));
        assert!(InvSeq::new(vec![5, 0], s).is_err());
    }

    #[test]
    fn signed_descents() {
        assert_eq!(SignedPerm::new(vec![1]).unwrap().des(Flavor::B).unwrap(), 0);
        assert_eq!(SignedPerm::new(vec![-1]).unwrap().des(Flavor::B).unwrap(), 1);
        assert!(SignedPerm::new(vec![1]).unwrap().des(Flavor::D).is_err());
        let d2 = distribution(SignedPerm::all(2).filter(SignedPerm::is_type_d), |s| {
            Monomial::pow(Var::X, s.des(Flavor::D).unwrap() as u32)
        });
        assert_eq!(d2.to_string(), "1 + 2*x + x^2");
        assert_eq!(SignedPerm::all(3).count(), 48);
    }

    #[test]
    fn multiset_words() {
        assert_eq!(MultisetWord::new(vec![1, 1, 2, 2]).unwrap().des(), 0);
        assert_eq!(MultisetWord::new(vec![2, 1, 2, 1]).unwrap().des(), 2);
        let words = MultisetWord::arrangements(&[1, 1, 2, 2]);
        assert_eq!(words.len(), 6);
        let d = distribution(words, |w| Monomial::pow(Var::X, w.des() as u32));
        assert_eq!(d.to_string(), "1 + 4*x + x^2");
        assert!(MultisetWord::new(vec![]).is_err());
    }

    #[test]
    fn lehmer_codes() {
        assert_eq!(perm_to_invseq(&Perm::identity(3)), vec![0, 0, 0]);
        assert_eq!(perm_to_invseq(&Perm::new(vec![2, 1]).unwrap()), vec![0, 1]);
        assert_eq!(perm_to_invseq(&Perm::new(vec![3, 1, 2]).unwrap()), vec![0, 1, 1]);
        for p in Perm::all(5) {
            let e = perm_to_invseq(&p);
            assert_eq!(invseq_to_perm(&e).unwrap(), p);
            let s: Vec<u64> = (1..=5).collect();
            assert_eq!(asc(&e, &s), p.des());
            assert_eq!(e[4], 5 - p.images()[4] as u64);
        }
    }

    #[test]
    fn invseq_walk_counts() {
        let mut n = 0;
        for_each_invseq(&[2, 3, 1], |_| n += 1);
        assert_eq!(n, 6);
        let mut m = 0;
        for_each_invseq(&[], |_| m += 1);
        assert_eq!(m, 1);
    }
}
