use crate::algebra::{Caps, Monomial, Tally, Var};
use crate::sequences::{gt_c_ell, SSeq};
use crate::{Error, Result, Series};

use super::lecture::walk;
use super::Bound;

/// Restricted classes of ordinary partitions (parts listed largest first).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PartitionClass {
    Unrestricted,
    Distinct,
    Odd,
    /// Odd parts less than `bound`.
    OddBelow(u64),
    /// Odd parts less than `2n`, at most `floor(k/2)` of them (with
    /// multiplicity) in `[2 ceil(k/2) + 1, 2(n - floor(k/2)) - 1]`.
    OddInterval { n: u64, k: u64 },
    /// Distinct parts with every even-indexed part even.
    DistinctEvenAtEvenIndex,
    /// Distinct parts with every odd-indexed part even.
    DistinctEvenAtOddIndex,
    ModClass { modulus: u64, allowed: Vec<u64> },
    /// Consecutive parts differ by at least 2, and odd parts never differ by
    /// exactly 2.
    Gollnitz { no_ones: bool },
    /// `lambda_i > c_l lambda_{i+1}` for consecutive parts.
    RatioGtC(u64),
    PartsFrom(Vec<u64>),
}

impl PartitionClass {
    fn interval(n: u64, k: u64) -> (u64, u64) {
        (2 * k.div_ceil(2) + 1, (2 * (n - k / 2)).saturating_sub(1))
    }

    fn part_ok(&self, p: u64) -> bool {
        match self {
            PartitionClass::Odd => p % 2 == 1,
            PartitionClass::OddBelow(b) => p % 2 == 1 && p < *b,
            PartitionClass::OddInterval { n, .. } => p % 2 == 1 && p < 2 * n,
            PartitionClass::ModClass { modulus, allowed } => allowed.contains(&(p % modulus)),
            PartitionClass::Gollnitz { no_ones } => !(*no_ones && p == 1),
            PartitionClass::PartsFrom(list) => list.contains(&p),
            _ => true,
        }
    }

    fn admits(&self, prefix: &[u64], next: u64) -> bool {
        if !self.part_ok(next) {
            return false;
        }
        if let PartitionClass::OddInterval { n, k } = self {
            let (lo, hi) = Self::interval(*n, *k);
            let inside = prefix.iter().chain([next].iter()).filter(|p| (lo..=hi).contains(*p)).count();
            return inside as u64 <= k / 2;
        }
        let index = prefix.len() + 1;
        let Some(&prev) = prefix.last() else {
            return match self {
                PartitionClass::DistinctEvenAtOddIndex => next.is_multiple_of(2),
                _ => true,
            };
        };
        match self {
            PartitionClass::Distinct => prev > next,
            PartitionClass::DistinctEvenAtEvenIndex => prev > next && (index % 2 == 1 || next.is_multiple_of(2)),
            PartitionClass::DistinctEvenAtOddIndex => prev > next && (index.is_multiple_of(2) || next.is_multiple_of(2)),
            PartitionClass::Gollnitz { .. } => {
                let gap = prev - next;
                gap >= 2 && !(gap == 2 && next % 2 == 1)
            }
            PartitionClass::RatioGtC(l) => gt_c_ell(prev, next, *l),
            _ => true,
        }
    }
}

/// All partitions in `class` of weight at most `max_weight`.
pub fn partitions_in(class: &PartitionClass, max_weight: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    grow(class, &mut prefix, max_weight, max_weight, &mut |p| out.push(p.to_vec()));
    out
}

fn grow(class: &PartitionClass, prefix: &mut Vec<u64>, max_part: u64, rem: u64, visit: &mut impl FnMut(&[u64])) {
    visit(prefix);
    for p in (1..=max_part.min(rem)).rev() {
        if class.admits(prefix, p) {
            prefix.push(p);
            grow(class, prefix, p, rem - p, visit);
            prefix.pop();
        }
    }
}

/// `counts[w]` = number of partitions of `w` in the class, `w <= max_weight`.
pub fn class_counts(class: &PartitionClass, max_weight: u64) -> Vec<u64> {
    let mut counts = vec![0u64; max_weight as usize + 1];
    let mut prefix = Vec::new();
    grow(class, &mut prefix, max_weight, max_weight, &mut |p| {
        counts[p.iter().sum::<u64>() as usize] += 1;
    });
    counts
}

/// Weight counts of anti-lecture hall compositions of any length with all
/// parts positive and last part at most `t`.
pub fn anti_at_counts(t: u64, max_weight: u64) -> Result<Vec<u64>> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    let mut counts = vec![0u64; max_weight as usize + 1];
    counts[0] = 1;
    for k in 1..=max_weight {
        let s = SSeq::explicit((1..=k).rev().collect())?;
        let bound = Bound { max_weight: Some(max_weight), max_last: Some(t) };
        walk(s.values(), bound, &mut |parts| {
            if parts[0] > 0 {
                counts[parts.iter().sum::<u64>() as usize] += 1;
            }
        })?;
    }
    Ok(counts)
}

/// The two alternating ratio conditions on positive sequences.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AltRatio {
    /// `lambda_i > 2 lambda_{i+1}` at odd `i`, `2 lambda_i > lambda_{i+1}` at even `i`.
    TwoOne,
    /// The reverse alternation.
    OneTwo,
}

/// `sum x^|l|_o y^|l|_e` over positive sequences satisfying the alternation,
/// below `caps` on `x` and `y`.
pub fn alt_ratio_gf(kind: AltRatio, caps: &Caps) -> Result<Series> {
    let (Some(cx), Some(cy)) = (caps.get(Var::X), caps.get(Var::Y)) else {
        return Err(Error::Unbounded("alternating sequences need caps on x and y".into()));
    };
    if cx == 0 || cy == 0 {
        return Ok(Series::zero(caps.clone()));
    }
    let mut tally = Tally::new();
    let mut seq = Vec::new();
    alt_grow(kind, &mut seq, (0, 0), (cx as u64, cy as u64), &mut tally);
    Ok(Series::new(tally.into_poly(), caps.clone()))
}

fn alt_grow(kind: AltRatio, seq: &mut Vec<u64>, sums: (u64, u64), caps: (u64, u64), tally: &mut Tally) {
    tally.add(Monomial::from_pairs([(Var::X, sums.0 as u32), (Var::Y, sums.1 as u32)]));
    let next_odd = seq.len().is_multiple_of(2);
    let room = if next_odd { (caps.0 - sums.0).saturating_sub(1) } else { (caps.1 - sums.1).saturating_sub(1) };
    for v in 1..=room {
        if let Some(&p) = seq.last() {
            let prev_odd_index = seq.len() % 2 == 1;
            let strict_double = prev_odd_index == (kind == AltRatio::TwoOne);
            let ok = if strict_double { p > 2 * v } else { 2 * p > v };
            if !ok {
                break;
            }
        }
        seq.push(v);
        let next = if next_odd { (sums.0 + v, sums.1) } else { (sums.0, sums.1 + v) };
        alt_grow(kind, seq, next, caps, tally);
        seq.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_small() {
        assert_eq!(class_counts(&PartitionClass::Distinct, 5)[5], 3);
        assert_eq!(class_counts(&PartitionClass::Odd, 5)[5], 3);
        assert_eq!(class_counts(&PartitionClass::Unrestricted, 6), vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(class_counts(&PartitionClass::Distinct, 20), class_counts(&PartitionClass::RatioGtC(2), 20));
    }

    #[test]
    fn parity_classes_at_six() {
        let a = class_counts(&PartitionClass::DistinctEvenAtEvenIndex, 6)[6];
        let b = class_counts(&PartitionClass::ModClass { modulus: 8, allowed: vec![1, 5, 6] }, 6)[6];
        assert_eq!((a, b), (3, 3));
    }

    #[test]
    fn gollnitz_rule() {
        let parts = partitions_in(&PartitionClass::Gollnitz { no_ones: false }, 10);
        assert!(parts.contains(&vec![5, 1]));
        assert!(!parts.contains(&vec![5, 3]));
        assert!(parts.contains(&vec![6, 4]));
        assert!(!parts.contains(&vec![4, 3]));
    }

    #[test]
    fn anti_compositions() {
        assert_eq!(anti_at_counts(1, 0).unwrap(), vec![1]);
        // weight 3 with t = 1: (1,1,1) and (2,1)
        assert_eq!(anti_at_counts(1, 3).unwrap(), vec![1, 1, 1, 2]);
    }

    #[test]
    fn alternating_sequences() {
        let caps = Caps::new().with(Var::X, 4).with(Var::Y, 2);
        let g = alt_ratio_gf(AltRatio::TwoOne, &caps).unwrap();
        // (1), (2), (3), (3,1) plus the empty sequence
        assert_eq!(g.poly().to_string(), "1 + x + x^2 + x^3 + x^3*y");
    }
}
