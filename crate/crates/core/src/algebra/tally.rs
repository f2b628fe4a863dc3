use std::collections::HashMap;

use num_bigint::BigInt;

use super::Monomial;
use crate::Poly;

/// Counts monomials with machine integers before converting to a polynomial.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    counts: HashMap<Monomial, u64>,
}

impl Tally {
    pub fn new() -> Tally {
        Tally::default()
    }

    pub fn add(&mut self, m: Monomial) {
        *self.counts.entry(m).or_insert(0) += 1;
    }

    pub fn add_n(&mut self, m: Monomial, n: u64) {
        *self.counts.entry(m).or_insert(0) += n;
    }

    pub fn merge(&mut self, other: Tally) {
        for (m, c) in other.counts {
            self.add_n(m, c);
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn into_poly(self) -> Poly {
        Poly::from_terms(self.counts.into_iter().map(|(m, c)| (m, BigInt::from(c))))
    }
}

impl FromIterator<Monomial> for Tally {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Tally {
        let mut t = Tally::new();
        for m in iter {
            t.add(m);
        }
        t
    }
}
