use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::enumeration::{class_counts, is_g_member, walk_g, GPartition, PartitionClass};
use crate::sequences::{kl_terms, make_kl, rho_r};
use crate::{Error, Result};

fn ceil_div(x: i128, y: i128) -> i128 {
    x.div_euclid(y) + i128::from(x.rem_euclid(y) != 0)
}

/// `Gamma_n` on raw parts. `a` holds `a_0..a_n`, `lam` has length `n - 1`.
fn gamma_raw(lam: &[u64], s: u64, a: &[i128]) -> Vec<i128> {
    let n = lam.len() + 1;
    let l = |i: usize| lam[i - 1] as i128;
    let mut mu = vec![0i128; n];
    mu[0] = s as i128 + if n == 1 { 0 } else { ceil_div(a[n] * l(1), a[n - 1]) };
    for t in 1..=n / 2 {
        mu[2 * t - 1] = l(2 * t - 1);
    }
    let mut t = 1;
    while 2 * t < n {
        let up = if 2 * t + 1 < n { ceil_div(a[n - 2 * t] * l(2 * t + 1), a[n - 2 * t - 1]) } else { 0 };
        let down = (a[n - 2 * t] * l(2 * t - 1)).div_euclid(a[n - 2 * t + 1]);
        mu[2 * t] = up + down - l(2 * t);
        t += 1;
    }
    mu
}

/// Candidate preimage of `mu` under `Gamma_n`, before validation.
fn gamma_inv_raw(mu: &[u64], a: &[i128]) -> (Vec<i128>, i128) {
    let n = mu.len();
    let m = |i: usize| mu[i - 1] as i128;
    let mut lam = vec![0i128; n - 1];
    for t in 1..=n / 2 {
        lam[2 * t - 2] = m(2 * t);
    }
    let mut t = 1;
    while 2 * t < n {
        let up = if 2 * t + 1 < n { ceil_div(a[n - 2 * t] * lam[2 * t], a[n - 2 * t - 1]) } else { 0 };
        let down = (a[n - 2 * t] * lam[2 * t - 2]).div_euclid(a[n - 2 * t + 1]);
        lam[2 * t - 1] = up + down - m(2 * t + 1);
        t += 1;
    }
    let s = m(1) - if n == 1 { 0 } else { ceil_div(a[n] * lam[0], a[n - 1]) };
    (lam, s)
}

fn to_parts(v: Vec<i128>) -> Option<Vec<u64>> {
    v.into_iter().map(|x| u64::try_from(x).ok()).collect()
}

/// `Gamma_n(lambda, s)` for `lambda` in `G_{n-1}^(k,l)`.
pub fn gamma(lambda: &GPartition, s: u64) -> Result<GPartition> {
    let (k, l) = lambda.kl();
    let n = lambda.n() + 1;
    let a = kl_terms(k, l, n);
    make_kl(k, l, n)?;
    let mu = to_parts(gamma_raw(lambda.parts(), s, &a))
        .ok_or_else(|| Error::Consistency(format!("negative part in Gamma of {:?}", lambda.parts())))?;
    GPartition::new(mu, k, l).map_err(|e| Error::Consistency(format!("Gamma left G_{n}: {e}")))
}

/// The unique `(lambda, s)` with `Gamma_n(lambda, s) = mu`.
pub fn gamma_inv(mu: &GPartition) -> Result<(GPartition, u64)> {
    let (k, l) = mu.kl();
    let n = mu.n();
    if n == 0 {
        return Err(Error::InvalidParameter("the empty partition has no Gamma preimage".into()));
    }
    let a = kl_terms(k, l, n);
    let (lam, s) = gamma_inv_raw(mu.parts(), &a);
    let not_image = || Error::NotMember(format!("{:?} is not in the image of Gamma_{n}", mu.parts()));
    let lam = to_parts(lam).ok_or_else(not_image)?;
    let s = u64::try_from(s).map_err(|_| not_image())?;
    if !is_g_member(&lam, &make_kl(k, l, n - 1)?)? || to_parts(gamma_raw(&lam, s, &a)).as_deref() != Some(mu.parts())
    {
        return Err(not_image());
    }
    Ok((GPartition::new(lam, k, l)?, s))
}

/// A partition given by multiplicities of distinct part values.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PartMultiplicity(BTreeMap<u64, u64>);

impl PartMultiplicity {
    pub fn new() -> PartMultiplicity {
        PartMultiplicity::default()
    }

    /// Accumulates `(part, multiplicity)` pairs; zero multiplicities vanish.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<PartMultiplicity> {
        let mut out = PartMultiplicity::new();
        for (p, m) in pairs {
            out.add(p, m)?;
        }
        Ok(out)
    }

    pub fn from_parts(parts: &[u64]) -> Result<PartMultiplicity> {
        PartMultiplicity::from_pairs(parts.iter().map(|&p| (p, 1)))
    }

    pub fn add(&mut self, part: u64, mult: u64) -> Result<()> {
        if part == 0 {
            return Err(Error::InvalidParameter("parts must be positive".into()));
        }
        if mult > 0 {
            *self.0.entry(part).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn get(&self, part: u64) -> u64 {
        self.0.get(&part).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|(p, m)| p * m).sum()
    }

    /// Pairs in decreasing order of part.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.0.iter().rev().map(|(p, m)| (*p, *m))
    }

    /// The parts listed largest first.
    pub fn to_parts(&self) -> Vec<u64> {
        self.iter().flat_map(|(p, m)| std::iter::repeat_n(p, m as usize)).collect()
    }
}

impl fmt::Display for PartMultiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.iter().map(|(p, m)| format!("{p}^{m}")).collect();
        f.write_str(&terms.join(" "))
    }
}

impl FromStr for PartMultiplicity {
    type Err = Error;

    /// `"5^4 7^1 2^1 1^1"`; a bare part counts once.
    fn from_str(text: &str) -> Result<PartMultiplicity> {
        let num = |t: &str| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad number '{t}'")));
        let pairs = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| match t.split_once('^') {
                Some((p, m)) => Ok((num(p)?, num(m)?)),
                None => Ok((num(t)?, 1)),
            })
            .collect::<Result<Vec<_>>>()?;
        PartMultiplicity::from_pairs(pairs)
    }
}

/// `BME_n(mu)`: multiplicities `m_1..m_n` of the parts `rho_1..rho_n`
/// (`n` even) or `r_1..r_n` (`n` odd).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BmeImage {
    pub parts: Vec<u64>,
    pub mults: Vec<u64>,
}

impl BmeImage {
    pub fn weight(&self) -> u64 {
        self.parts.iter().zip(&self.mults).map(|(p, m)| p * m).sum()
    }

    pub fn to_multiplicity(&self) -> PartMultiplicity {
        PartMultiplicity::from_pairs(self.parts.iter().copied().zip(self.mults.iter().copied()))
            .expect("parts are positive")
    }

    /// Index order without the zero multiplicities.
    pub fn compact(&self) -> String {
        self.terms().filter(|(_, m)| *m > 0).map(|(p, m)| format!("{p}^{m}")).collect::<Vec<_>>().join(" ")
    }

    fn terms(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.parts.iter().copied().zip(self.mults.iter().copied()).rev()
    }
}

impl fmt::Display for BmeImage {
    /// `p_n^m_n ... p_1^m_1`, zero multiplicities included.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms().map(|(p, m)| format!("{p}^{m}")).collect();
        f.write_str(&terms.join(" "))
    }
}

/// The parts `BME_n` draws from.
pub fn bme_parts(k: u64, l: u64, n: usize) -> Result<Vec<u64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let (rho, r) = rho_r(k, l, n)?;
    Ok(if n.is_multiple_of(2) { rho } else { r })
}

fn bme_mults(mu: &[u64], a: &[i128]) -> Result<Vec<u64>> {
    let mut mults = Vec::with_capacity(mu.len());
    let mut cur = mu.to_vec();
    while !cur.is_empty() {
        let (lam, s) = gamma_inv_raw(&cur, &a[..=cur.len()]);
        let bad = || Error::Consistency(format!("{cur:?} has no Gamma preimage"));
        mults.push(u64::try_from(s).map_err(|_| bad())?);
        cur = to_parts(lam).ok_or_else(bad)?;
    }
    Ok(mults)
}

pub fn bme(mu: &GPartition) -> Result<BmeImage> {
    let (k, l) = mu.kl();
    let n = mu.n();
    let a = kl_terms(k, l, n);
    Ok(BmeImage { parts: bme_parts(k, l, n)?, mults: bme_mults(mu.parts(), &a)? })
}

/// Rebuilds `mu` from multiplicities `m_1..m_n` through repeated `Gamma`.
pub fn bme_inv_mults(mults: &[u64], k: u64, l: u64) -> Result<GPartition> {
    let n = mults.len();
    let a = kl_terms(k, l, n);
    make_kl(k, l, n)?;
    let mut cur: Vec<u64> = Vec::new();
    for &s in mults.iter().rev() {
        let m = cur.len() + 1;
        cur = to_parts(gamma_raw(&cur, s, &a[..=m]))
            .ok_or_else(|| Error::Consistency(format!("negative part rebuilding from {mults:?}")))?;
    }
    GPartition::new(cur, k, l)
}

/// Inverse of [`bme`] from a value-keyed multiplicity map.
pub fn bme_inv(m: &PartMultiplicity, n: usize, k: u64, l: u64) -> Result<GPartition> {
    let parts = bme_parts(k, l, n)?;
    let mut mults = vec![0u64; n];
    for (p, c) in m.iter() {
        let mut hits = parts.iter().enumerate().filter(|(_, q)| **q == p);
        let (i, _) = hits.next().ok_or_else(|| Error::InvalidParameter(format!("{p} is not an allowed part")))?;
        if hits.next().is_some() {
            return Err(Error::InvalidParameter(format!("part {p} occurs at two indices")));
        }
        mults[i] = c;
    }
    bme_inv_mults(&mults, k, l)
}

/// Outcome of an exhaustive `BME_n` check up to a weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BmeReport {
    pub k: u64,
    pub l: u64,
    pub n: usize,
    pub max_weight: u64,
    pub members: usize,
    pub weight_preserving: bool,
    pub round_trip: bool,
    pub member_counts: Vec<u64>,
    pub image_counts: Vec<u64>,
}

impl BmeReport {
    pub fn passed(&self) -> bool {
        self.weight_preserving && self.round_trip && self.member_counts == self.image_counts
    }
}

/// Runs `BME_n` over all of `G_n^(k,l)` up to `max_weight` and compares
/// per-weight counts with partitions into the target parts.
pub fn bme_bijectivity_check(k: u64, l: u64, n: usize, max_weight: u64) -> Result<BmeReport> {
    let seq = make_kl(k, l, n)?;
    let a = kl_terms(k, l, n);
    let parts = bme_parts(k, l, n)?;
    let mut member_counts = vec![0u64; max_weight as usize + 1];
    let (mut weight_preserving, mut round_trip, mut members) = (true, true, 0);
    let mut failure = None;
    walk_g(seq.values(), max_weight, &mut |mu| {
        members += 1;
        let w: u64 = mu.iter().sum();
        member_counts[w as usize] += 1;
        match bme_mults(mu, &a) {
            Ok(mults) => {
                weight_preserving &= parts.iter().zip(&mults).map(|(p, m)| p * m).sum::<u64>() == w;
                round_trip &= bme_inv_mults(&mults, k, l).is_ok_and(|g| g.parts() == mu);
            }
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let image_counts = if n == 0 {
        let mut c = vec![0; max_weight as usize + 1];
        c[0] = 1;
        c
    } else {
        multiset_counts(&parts, max_weight)
    };
    Ok(BmeReport { k, l, n, max_weight, members, weight_preserving, round_trip, member_counts, image_counts })
}

/// Counts of multiplicity vectors over `parts` (indexed, so repeated values
/// count separately) by weight.
fn multiset_counts(parts: &[u64], max_weight: u64) -> Vec<u64> {
    let mut distinct: Vec<u64> = parts.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() == parts.len() {
        return class_counts(&PartitionClass::PartsFrom(distinct), max_weight);
    }
    let mut c = vec![0u64; max_weight as usize + 1];
    c[0] = 1;
    for &p in parts {
        for w in p as usize..c.len() {
            c[w] += c[w - p as usize];
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(parts: &[u64]) -> GPartition {
        GPartition::new(parts.to_vec(), 1, 4).unwrap()
    }

    #[test]
    fn worked_chain() {
        let steps = [(vec![0], 4, vec![4, 0]), (vec![4, 0], 1, vec![4, 4, 1]), (vec![4, 4, 1], 1, vec![12, 4, 5, 1]), (vec![12, 4, 5, 1], 1, vec![9, 12, 4, 5, 0])];
        for (lam, s, mu) in steps {
            assert_eq!(gamma(&g(&lam), s).unwrap().parts(), mu.as_slice());
            let (back, s_back) = gamma_inv(&g(&mu)).unwrap();
            assert_eq!((back.parts(), s_back), (lam.as_slice(), s));
        }
        assert_eq!(gamma(&g(&[]), 0).unwrap().parts(), &[0]);
    }

    #[test]
    fn worked_images() {
        let cases: [(&[u64], &str); 5] = [
            (&[0], "1^0"),
            (&[4, 0], "5^0 1^4"),
            (&[4, 4, 1], "7^0 2^4 1^1"),
            (&[12, 4, 5, 1], "11^0 4^4 5^1 1^1"),
            (&[9, 12, 4, 5, 0], "13^0 5^4 7^1 2^1 1^1"),
        ];
        for (mu, text) in cases {
            let image = bme(&g(mu)).unwrap();
            assert_eq!(image.to_string(), text);
            assert_eq!(image.weight(), mu.iter().sum::<u64>());
            let m: PartMultiplicity = text.parse().unwrap();
            assert_eq!(bme_inv(&m, mu.len(), 1, 4).unwrap().parts(), mu);
        }
        assert_eq!(bme(&g(&[9, 12, 4, 5, 0])).unwrap().compact(), "5^4 7^1 2^1 1^1");
        assert_eq!(bme(&g(&[])).unwrap().to_string(), "");
        assert_eq!(bme_inv(&PartMultiplicity::new(), 3, 1, 4).unwrap().parts(), &[0, 0, 0]);
    }

    #[test]
    fn weight_law() {
        for (k, l) in [(2, 2), (1, 4), (4, 1), (3, 2)] {
            for n in 1..=4usize {
                let a = make_kl(k, l, n - 1).unwrap();
                walk_g(a.values(), 8, &mut |lam| {
                    let lam = GPartition::new(lam.to_vec(), k, l).unwrap();
                    let (o, e) = lam.alternating_sums();
                    for s in 0..3 {
                        let mu = gamma(&lam, s).unwrap();
                        let (mo, me) = mu.alternating_sums();
                        let mult = if n % 2 == 0 { l } else { k };
                        assert_eq!(me, o);
                        assert_eq!(mo as i64, (mult * o) as i64 - e as i64 + s as i64);
                    }
                })
                .unwrap();
            }
        }
    }

    #[test]
    fn round_trips() {
        let r = bme_bijectivity_check(2, 2, 3, 10).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = bme_bijectivity_check(2, 2, 4, 12).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(bme_bijectivity_check(1, 4, 0, 5).unwrap().passed());
    }

    #[test]
    fn multiplicity_text() {
        let m: PartMultiplicity = "5^4 7^1 2^1 1^1 13^0".parse().unwrap();
        assert_eq!(m.to_string(), "7^1 5^4 2^1 1^1");
        assert_eq!(m.weight(), 30);
        assert_eq!(m.to_parts(), vec![7, 5, 5, 5, 5, 2, 1]);
        assert!("0^2".parse::<PartMultiplicity>().is_err());
        assert!(bme_inv(&"3^1".parse().unwrap(), 2, 1, 4).is_err());
    }
}
