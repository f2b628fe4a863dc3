use crate::enumeration::LHPartition;
use crate::sequences::SSeq;
use crate::statistics::ascent_set;
use crate::{Error, Result};

/// An inversion sequence with bars: `bars[i]` counts the bars weakly before
/// position `i + 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BarredInvSeq {
    pub e: Vec<u64>,
    pub bars: Vec<u64>,
}

impl BarredInvSeq {
    /// Checks `0 <= e_i < s_i`, that bars are nondecreasing and that every
    /// ascent (including position 0) gets at least one new bar.
    pub fn validate(&self, s: &SSeq) -> Result<()> {
        let n = s.len();
        for (len, name) in [(self.e.len(), "e"), (self.bars.len(), "bars")] {
            if len != n {
                return Err(Error::InvalidBarring(format!("{name} has length {len}, expected {n}")));
            }
        }
        if let Some(i) = self.e.iter().zip(s.values()).position(|(e, s)| e >= s) {
            return Err(Error::InvalidBarring(format!("e_{} is not below s_{}", i + 1, i + 1)));
        }
        let mut prev = 0;
        for (i, &b) in self.bars.iter().enumerate() {
            if b < prev {
                return Err(Error::InvalidBarring(format!("bar counts decrease at position {}", i + 1)));
            }
            prev = b;
        }
        for i in ascent_set(&self.e, s.values()) {
            let before = if i == 0 { 0 } else { self.bars[i - 1] };
            if self.bars[i] <= before {
                return Err(Error::InvalidBarring(format!("no bar at ascent {i}")));
            }
        }
        Ok(())
    }

    pub fn total_bars(&self) -> u64 {
        self.bars.last().copied().unwrap_or(0)
    }
}

/// `b_i = ceil(lambda_i / s_i)` and `e_i = s_i b_i - lambda_i`.
pub fn lhp_to_barred(lambda: &LHPartition) -> BarredInvSeq {
    let s = lambda.ambient().values();
    let bars: Vec<u64> = lambda.parts().iter().zip(s).map(|(l, s)| l.div_ceil(*s)).collect();
    let e = lambda.parts().iter().zip(s).zip(&bars).map(|((l, s), b)| s * b - l).collect();
    BarredInvSeq { e, bars }
}

pub fn barred_to_lhp(b: &BarredInvSeq, s: &SSeq) -> Result<LHPartition> {
    b.validate(s)?;
    let parts = b.e.iter().zip(&b.bars).zip(s.values()).map(|((e, b), s)| s * b - e).collect();
    LHPartition::new(parts, s.clone()).map_err(|e| Error::Consistency(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::enumerate_weight;

    #[test]
    fn example_and_zero() {
        let s = SSeq::explicit(vec![5, 3]).unwrap();
        let lam = LHPartition::new(vec![2, 3], s.clone()).unwrap();
        let b = lhp_to_barred(&lam);
        assert_eq!((b.e.clone(), b.bars.clone()), (vec![3, 0], vec![1, 1]));
        assert_eq!(b.total_bars(), 1);
        assert_eq!(barred_to_lhp(&b, &s).unwrap(), lam);
        let zero = lhp_to_barred(&LHPartition::new(vec![0, 0], s.clone()).unwrap());
        assert_eq!((zero.e, zero.bars), (vec![0, 0], vec![0, 0]));
        let missing = BarredInvSeq { e: vec![3, 0], bars: vec![0, 1] };
        assert!(matches!(barred_to_lhp(&missing, &s), Err(Error::InvalidBarring(_))));
    }

    #[test]
    fn round_trip() {
        let s = SSeq::explicit(vec![2, 3]).unwrap();
        for lam in enumerate_weight(&s, 15) {
            let b = lhp_to_barred(&lam);
            b.validate(&s).unwrap();
            assert_eq!(b.total_bars(), lam.parts()[1].div_ceil(3));
            assert_eq!(barred_to_lhp(&b, &s).unwrap(), lam);
        }
    }
}
