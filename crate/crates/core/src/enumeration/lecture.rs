use crate::algebra::{Caps, Monomial, Tally, Var};
use crate::sequences::SSeq;
use crate::{Error, Result, Series};

/// Limits for a walk over `L_n^(s)`. At least one must be set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bound {
    pub max_weight: Option<u64>,
    pub max_last: Option<u64>,
}

impl Bound {
    pub fn weight(n: u64) -> Bound {
        Bound { max_weight: Some(n), max_last: None }
    }

    pub fn last(t: u64) -> Bound {
        Bound { max_weight: None, max_last: Some(t) }
    }
}

/// An `s`-lecture hall partition together with its ambient sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LHPartition {
    parts: Vec<u64>,
    s: SSeq,
}

impl LHPartition {
    pub fn new(parts: Vec<u64>, s: SSeq) -> Result<LHPartition> {
        if !is_member(&parts, &s)? {
            return Err(Error::NotMember(format!("{parts:?} for s = {s}")));
        }
        Ok(LHPartition { parts, s })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn ambient(&self) -> &SSeq {
        &self.s
    }

    pub fn stats(&self) -> StatBundle {
        bundle(&self.parts, self.s.values())
    }
}

pub(crate) fn chain_holds(parts: &[u64], s: &[u64]) -> bool {
    parts
        .windows(2)
        .zip(s.windows(2))
        .all(|(l, s)| l[0] as u128 * s[1] as u128 <= l[1] as u128 * s[0] as u128)
}

/// `lambda_1/s_1 <= ... <= lambda_n/s_n`, decided by cross-multiplication.
pub fn is_member(parts: &[u64], s: &SSeq) -> Result<bool> {
    if parts.len() != s.len() {
        return Err(Error::LengthMismatch { expected: s.len(), got: parts.len() });
    }
    Ok(chain_holds(parts, s.values()))
}

/// Calls `visit` on every member within `bound`, filling parts from the last
/// one down so each prefix is bounded by its successor.
pub fn walk(s: &[u64], bound: Bound, visit: &mut impl FnMut(&[u64])) -> Result<()> {
    if bound.max_weight.is_none() && bound.max_last.is_none() {
        return Err(Error::Unbounded("walk needs a weight or last-part bound".into()));
    }
    let n = s.len();
    if n == 0 {
        visit(&[]);
        return Ok(());
    }
    let mut parts = vec![0u64; n];
    let rem = bound.max_weight.unwrap_or(u64::MAX);
    fill(s, n - 1, bound.max_last.unwrap_or(u64::MAX), rem, &mut parts, visit);
    Ok(())
}

fn fill(s: &[u64], i: usize, cap: u64, rem: u64, parts: &mut [u64], visit: &mut impl FnMut(&[u64])) {
    let hi = cap.min(rem);
    for v in 0..=hi {
        parts[i] = v;
        if i == 0 {
            visit(parts);
        } else {
            let next = (v as u128 * s[i - 1] as u128 / s[i] as u128) as u64;
            fill(s, i - 1, next, rem - v, parts, visit);
        }
    }
}

/// All members within `bound`, in lexicographic order of parts.
pub fn members(s: &SSeq, bound: Bound) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    walk(s.values(), bound, &mut |p| out.push(p.to_vec()))?;
    out.sort();
    Ok(out)
}

pub fn enumerate_weight(s: &SSeq, max_weight: u64) -> Vec<LHPartition> {
    wrap(s, members(s, Bound::weight(max_weight)).expect("bounded"))
}

pub fn enumerate_last(s: &SSeq, max_last: u64) -> Vec<LHPartition> {
    wrap(s, members(s, Bound::last(max_last)).expect("bounded"))
}

fn wrap(s: &SSeq, all: Vec<Vec<u64>>) -> Vec<LHPartition> {
    all.into_iter().map(|parts| LHPartition { parts, s: s.clone() }).collect()
}

/// `counts[v]` is the number of members with `lambda_n = v`, for `v <= t`.
pub fn count_by_last(s: &SSeq, t: u64) -> Vec<u128> {
    let s = s.values();
    let n = s.len();
    if n == 0 {
        return vec![1];
    }
    let mut top = vec![0u64; n];
    top[n - 1] = t;
    for i in (0..n - 1).rev() {
        top[i] = (top[i + 1] as u128 * s[i] as u128 / s[i + 1] as u128) as u64;
    }
    let mut counts = vec![1u128; top[0] as usize + 1];
    for i in 1..n {
        let mut prefix = Vec::with_capacity(counts.len());
        let mut acc = 0u128;
        for c in &counts {
            acc += c;
            prefix.push(acc);
        }
        counts = (0..=top[i])
            .map(|v| {
                let u = (v as u128 * s[i - 1] as u128 / s[i] as u128) as usize;
                prefix[u.min(prefix.len() - 1)]
            })
            .collect();
    }
    counts
}

pub fn count_last_at_most(s: &SSeq, t: u64) -> u128 {
    count_by_last(s, t).iter().sum()
}

/// Statistics of a single partition.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct StatBundle {
    pub weight: u64,
    pub ceil: Vec<u64>,
    pub ceil_sum: u64,
    pub ceil_odd: u64,
    pub floor: Vec<u64>,
    pub floor_sum: u64,
    pub floor_odd: u64,
    pub eps_plus: Vec<u64>,
    pub eps_sum: u64,
    pub last: u64,
    pub last_ceil: u64,
    pub odd_index_sum: u64,
    pub even_index_sum: u64,
}

pub fn stats(parts: &[u64], s: &SSeq) -> Result<StatBundle> {
    if !is_member(parts, s)? {
        return Err(Error::NotMember(format!("{parts:?} for s = {s}")));
    }
    Ok(bundle(parts, s.values()))
}

pub(crate) fn bundle(parts: &[u64], s: &[u64]) -> StatBundle {
    let ceil: Vec<u64> = parts.iter().zip(s).map(|(l, si)| l.div_ceil(*si)).collect();
    let floor: Vec<u64> = parts.iter().zip(s).map(|(l, si)| l / si).collect();
    let eps_plus: Vec<u64> = parts.iter().zip(s).zip(&ceil).map(|((l, si), c)| si * c - l).collect();
    StatBundle {
        weight: parts.iter().sum(),
        ceil_sum: ceil.iter().sum(),
        ceil_odd: ceil.iter().filter(|c| *c % 2 == 1).count() as u64,
        floor_sum: floor.iter().sum(),
        floor_odd: floor.iter().filter(|c| *c % 2 == 1).count() as u64,
        eps_sum: eps_plus.iter().sum(),
        last: parts.last().copied().unwrap_or(0),
        last_ceil: ceil.last().copied().unwrap_or(0),
        odd_index_sum: parts.iter().step_by(2).sum(),
        even_index_sum: parts.iter().skip(1).step_by(2).sum(),
        ceil,
        floor,
        eps_plus,
    }
}

/// A statistic that can be attached to a variable in a generating function.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stat {
    /// `|lambda|`
    Weight,
    /// `lambda_n`
    Last,
    /// `ceil(lambda_n / s_n)`
    LastCeil,
    /// `|ceil(lambda)|`
    CeilSum,
    /// number of odd entries of `ceil(lambda)`
    CeilOdd,
    FloorSum,
    FloorOdd,
    /// `|eps+(lambda)|`
    EpsSum,
    /// `lambda_i`, 1-based
    Part(usize),
}

impl Stat {
    fn value(self, parts: &[u64], s: &[u64]) -> u64 {
        let ceil = |i: usize| parts[i].div_ceil(s[i]);
        let n = parts.len();
        match self {
            Stat::Weight => parts.iter().sum(),
            Stat::Last => parts.last().copied().unwrap_or(0),
            Stat::LastCeil => if n == 0 { 0 } else { ceil(n - 1) },
            Stat::CeilSum => (0..n).map(ceil).sum(),
            Stat::CeilOdd => (0..n).filter(|&i| ceil(i) % 2 == 1).count() as u64,
            Stat::FloorSum => (0..n).map(|i| parts[i] / s[i]).sum(),
            Stat::FloorOdd => (0..n).filter(|&i| (parts[i] / s[i]) % 2 == 1).count() as u64,
            Stat::EpsSum => (0..n).map(|i| s[i] * ceil(i) - parts[i]).sum(),
            Stat::Part(i) => parts[i - 1],
        }
    }

    /// Largest `lambda_n` that keeps this statistic below `cap`, if any.
    fn last_bound(self, cap: u64, s: &[u64]) -> Option<u64> {
        let sn = *s.last()?;
        let below = cap.checked_sub(1)?;
        match self {
            Stat::Weight | Stat::Last => Some(below),
            Stat::LastCeil | Stat::CeilSum => Some(below * sn),
            Stat::FloorSum => Some(cap * sn - 1),
            Stat::Part(i) if i == s.len() => Some(below),
            _ => None,
        }
    }
}

/// Sum of `prod var^stat` over all members, truncated below `caps`. The
/// enumeration bound is derived from whichever capped statistics limit it.
pub fn weighted_gf(s: &SSeq, caps: &Caps, weights: &[(Stat, Var)]) -> Result<Series> {
    let sv = s.values();
    if let Some((Stat::Part(i), _)) = weights.iter().find(|(st, _)| matches!(st, Stat::Part(i) if *i == 0 || *i > sv.len())) {
        return Err(Error::InvalidParameter(format!("part index {i} out of range")));
    }
    let mut bound = Bound::default();
    for &(stat, var) in weights {
        let Some(cap) = caps.get(var) else { continue };
        if stat == Stat::Weight {
            let w = (cap as u64).saturating_sub(1);
            bound.max_weight = Some(bound.max_weight.map_or(w, |b| b.min(w)));
        }
        if let Some(t) = stat.last_bound(cap as u64, sv) {
            bound.max_last = Some(bound.max_last.map_or(t, |b| b.min(t)));
        }
    }
    if sv.is_empty() {
        bound.max_weight = Some(0);
    }
    if bound.max_weight.is_none() && bound.max_last.is_none() {
        return Err(Error::Unbounded(format!("caps {caps} do not bound the enumeration for s = {s}")));
    }
    let mut tally = Tally::new();
    let mut exps: Vec<(Var, u32)> = Vec::with_capacity(weights.len());
    walk(sv, bound, &mut |parts| {
        exps.clear();
        for &(stat, var) in weights {
            let e = stat.value(parts, sv) as u32;
            if let Some(c) = caps.get(var) {
                if e >= c {
                    return;
                }
            }
            exps.push((var, e));
        }
        tally.add(Monomial::from_pairs(exps.iter().copied()));
    })?;
    Ok(Series::new(tally.into_poly(), caps.clone()))
}

/// `sum q^|l| x^ceil(l_n/s_n) u^|ceil(l)| v^o(ceil(l)) z^|eps+(l)|` restricted
/// to the requested variables.
pub fn multi_gf(s: &SSeq, caps: &Caps, vars: &[Var]) -> Result<Series> {
    let weights = vars
        .iter()
        .map(|&v| {
            let stat = match v {
                Var::Q => Stat::Weight,
                Var::X => Stat::LastCeil,
                Var::U => Stat::CeilSum,
                Var::V => Stat::CeilOdd,
                Var::Z => Stat::EpsSum,
                other => return Err(Error::InvalidParameter(format!("no standard statistic for {other}"))),
            };
            Ok((stat, v))
        })
        .collect::<Result<Vec<_>>>()?;
    weighted_gf(s, caps, &weights)
}

/// Which truncated family to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TruncMode {
    /// `L_{n,k}`: at most `k` positive parts.
    AtMost,
    /// `L_{n,k}` with exactly `k` positive parts.
    Exactly,
    /// `A_{n,k}`.
    Anti,
}

/// `(n-k+1, ..., n)` for the lecture hall modes, `(n, ..., n-k+1)` for anti.
pub fn truncated_ambient(n: u64, k: u64, mode: TruncMode) -> Result<SSeq> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let up: Vec<u64> = (n - k + 1..=n).collect();
    match mode {
        TruncMode::Anti => SSeq::explicit(up.into_iter().rev().collect()),
        _ => SSeq::explicit(up),
    }
}

pub fn enumerate_truncated(n: u64, k: u64, mode: TruncMode, max_weight: u64) -> Result<Vec<LHPartition>> {
    let s = truncated_ambient(n, k, mode)?;
    let mut all = enumerate_weight(&s, max_weight);
    if mode == TruncMode::Exactly {
        all.retain(|l| l.parts[0] > 0);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> SSeq {
        SSeq::explicit(v.to_vec()).unwrap()
    }

    #[test]
    fn membership() {
        let s = seq(&[5, 3]);
        assert!(is_member(&[2, 3], &s).unwrap());
        assert!(is_member(&[3, 2], &s).unwrap());
        assert!(!is_member(&[5, 3, 2, 1], &seq(&[4, 3, 2, 1])).unwrap());
        assert!(is_member(&[1, 4, 3, 2], &seq(&[4, 3, 2, 1])).unwrap());
        assert!(is_member(&[0, 0], &s).unwrap());
        assert_eq!(is_member(&[1], &s), Err(Error::LengthMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn small_enumerations() {
        let s = seq(&[1, 2]);
        let got: Vec<Vec<u64>> = enumerate_weight(&s, 3).into_iter().map(|l| l.parts).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2]]);
        assert_eq!(enumerate_weight(&s, 0).len(), 1);
        assert_eq!(enumerate_last(&s, 2).len(), 4);
        assert_eq!(enumerate_last(&s, 3).len(), 6);
        assert_eq!(enumerate_last(&s, 0).len(), 1);
    }

    #[test]
    fn last_part_counts_agree_with_walk() {
        for s in [seq(&[1, 2, 3]), seq(&[3, 1, 4]), seq(&[2, 7]), seq(&[5])] {
            for t in 0..12 {
                assert_eq!(count_last_at_most(&s, t), enumerate_last(&s, t).len() as u128);
            }
        }
    }

    #[test]
    fn stat_bundle() {
        let b = stats(&[2, 3], &seq(&[5, 3])).unwrap();
        assert_eq!(b.ceil, vec![1, 1]);
        assert_eq!((b.ceil_sum, b.ceil_odd, b.eps_sum), (2, 2, 3));
        assert_eq!(b.eps_plus, vec![3, 0]);
        assert_eq!(stats(&[0, 0], &seq(&[5, 3])).unwrap().weight, 0);
        assert!(stats(&[3, 0], &seq(&[5, 3])).is_err());
    }

    #[test]
    fn gf_needs_a_bound() {
        let s = seq(&[1, 2]);
        assert!(matches!(multi_gf(&s, &Caps::new().with(Var::V, 3), &[Var::V]), Err(Error::Unbounded(_))));
        let tiny = Caps::new().with(Var::Q, 1).with(Var::U, 1);
        assert_eq!(multi_gf(&s, &tiny, &[Var::Q, Var::U]).unwrap().poly().to_string(), "1");
    }

    #[test]
    fn truncated_modes() {
        assert_eq!(truncated_ambient(5, 2, TruncMode::AtMost).unwrap().values(), &[4, 5]);
        assert_eq!(truncated_ambient(5, 2, TruncMode::Anti).unwrap().values(), &[5, 4]);
        assert!(truncated_ambient(2, 3, TruncMode::Exactly).is_err());
        let all = enumerate_truncated(3, 3, TruncMode::AtMost, 8).unwrap();
        assert_eq!(all.len(), enumerate_weight(&seq(&[1, 2, 3]), 8).len());
    }
}
