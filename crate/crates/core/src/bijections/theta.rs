use std::collections::{BTreeMap, HashSet};

use crate::enumeration::{class_counts, partitions_in, walk_g, PartitionClass};
use crate::sequences::{gt_c_ell, kl_terms, make_kl};
use crate::{Error, Result};

use super::bme::{bme, PartMultiplicity};

/// `a_0..a_m` of the `l`-sequence, extended until `p_m = a_m + a_{m-1}`
/// reaches `max_part`.
fn ell_terms(l: u64, max_part: u64) -> Result<Vec<u64>> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!("l = {l} must be at least 2")));
    }
    let mut n = 1;
    loop {
        let a = kl_terms(l, l, n);
        if (a[n] + a[n - 1]) as u128 >= max_part as u128 {
            return Ok(a.into_iter().map(|t| t as u64).collect());
        }
        n += 1;
    }
}

/// The parts `p_i = a_i + a_{i-1}` of the `l`-sequence that are at most `max`.
pub fn theta_parts(l: u64, max: u64) -> Result<Vec<u64>> {
    let a = ell_terms(l, max)?;
    Ok((1..a.len()).map(|i| a[i] + a[i - 1]).filter(|&p| p <= max).collect())
}

fn insert(lam: &mut Vec<u64>, off: usize, k: usize, a: &[u64], l: u64) {
    if lam.len() < off + 2 {
        lam.resize(off + 2, 0);
    }
    if k == 1 {
        lam[off] += a[1];
        return;
    }
    let x = lam[off] + a[k] - a[k - 1];
    let y = lam[off + 1] + a[k - 1] - a[k - 2];
    if gt_c_ell(x, y, l) {
        lam[off] = x;
        lam[off + 1] = y;
        insert(lam, off + 2, k - 1, a, l);
    } else {
        lam[off] += a[k];
        lam[off + 1] += a[k - 1];
    }
}

/// `Theta^(l)`: inserts the parts of `mu` largest first. Every part must be
/// some `p_i`.
pub fn theta(mu: &PartMultiplicity, l: u64) -> Result<Vec<u64>> {
    let largest = mu.iter().next().map_or(1, |(p, _)| p);
    let a = ell_terms(l, largest)?;
    let index: BTreeMap<u64, usize> = (1..a.len()).map(|i| (a[i] + a[i - 1], i)).collect();
    let mut lam = Vec::new();
    for (p, m) in mu.iter() {
        let &k = index.get(&p).ok_or_else(|| Error::InvalidParameter(format!("{p} is not a part p_i for l = {l}")))?;
        for _ in 0..m {
            insert(&mut lam, 0, k, &a, l);
        }
    }
    while lam.last() == Some(&0) {
        lam.pop();
    }
    Ok(lam)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaReport {
    pub l: u64,
    pub max_weight: u64,
    pub inputs: usize,
    pub images_in_class: bool,
    pub weight_preserving: bool,
    pub injective: bool,
    pub image_counts: Vec<u64>,
    pub class_counts: Vec<u64>,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.images_in_class && self.weight_preserving && self.injective && self.image_counts == self.class_counts
    }
}

fn ratio_ok(lam: &[u64], l: u64) -> bool {
    lam.iter().all(|&p| p > 0) && lam.windows(2).all(|w| gt_c_ell(w[0], w[1], l))
}

/// Applies `Theta^(l)` to every partition into parts `p_i` of weight at most
/// `max_weight`.
pub fn theta_bijectivity_check(l: u64, max_weight: u64) -> Result<ThetaReport> {
    let parts = theta_parts(l, max_weight.max(1))?;
    let inputs = partitions_in(&PartitionClass::PartsFrom(parts), max_weight);
    let mut image_counts = vec![0u64; max_weight as usize + 1];
    let mut seen = HashSet::new();
    let (mut images_in_class, mut weight_preserving, mut injective) = (true, true, true);
    for mu in &inputs {
        let lam = theta(&PartMultiplicity::from_parts(mu)?, l)?;
        let w: u64 = lam.iter().sum();
        weight_preserving &= w == mu.iter().sum::<u64>();
        images_in_class &= ratio_ok(&lam, l);
        if w <= max_weight {
            image_counts[w as usize] += 1;
        }
        injective &= seen.insert(lam);
    }
    Ok(ThetaReport {
        l,
        max_weight,
        inputs: inputs.len(),
        images_in_class,
        weight_preserving,
        injective,
        image_counts,
        class_counts: class_counts(&PartitionClass::RatioGtC(l), max_weight),
    })
}

/// Evidence on whether `Theta` undoes `BME_n` when `k = l`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProbeReport {
    pub tested: usize,
    pub agreements: usize,
    pub first_disagreement: Option<(Vec<u64>, Vec<u64>)>,
}

/// Compares `Theta(BME_n(mu))` with `mu` (trailing zeros dropped) over
/// `G_n^(l,l)` up to `max_weight`.
pub fn theta_bme_probe(l: u64, n: usize, max_weight: u64) -> Result<ProbeReport> {
    let seq = make_kl(l, l, n)?;
    let mut report = ProbeReport { tested: 0, agreements: 0, first_disagreement: None };
    let mut failure = None;
    walk_g(seq.values(), max_weight, &mut |mu| {
        let outcome = crate::enumeration::GPartition::new(mu.to_vec(), l, l)
            .and_then(|g| bme(&g))
            .and_then(|image| theta(&image.to_multiplicity(), l));
        match outcome {
            Ok(lam) => {
                let mut trimmed = mu.to_vec();
                while trimmed.last() == Some(&0) {
                    trimmed.pop();
                }
                report.tested += 1;
                if lam == trimmed {
                    report.agreements += 1;
                } else if report.first_disagreement.is_none() {
                    report.first_disagreement = Some((mu.to_vec(), lam));
                }
            }
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(parts: &[u64]) -> PartMultiplicity {
        PartMultiplicity::from_parts(parts).unwrap()
    }

    #[test]
    fn traces() {
        assert_eq!(theta(&pm(&[3, 1]), 2).unwrap(), vec![3, 1]);
        assert_eq!(theta(&pm(&[4]), 3).unwrap(), vec![3, 1]);
        assert_eq!(theta(&pm(&[3, 3]), 2).unwrap(), vec![3, 2, 1]);
        assert_eq!(theta(&pm(&[1, 1]), 2).unwrap(), vec![2]);
        assert_eq!(theta(&PartMultiplicity::new(), 5).unwrap(), Vec::<u64>::new());
        assert!(theta(&pm(&[2]), 2).is_err());
        assert_eq!(theta_parts(3, 30).unwrap(), vec![1, 4, 11, 29]);
    }

    #[test]
    fn bijective_small() {
        for l in 2..=4 {
            let r = theta_bijectivity_check(l, 14).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(theta_bijectivity_check(3, 0).unwrap().passed());
    }

    #[test]
    fn probe_runs() {
        let r = theta_bme_probe(2, 3, 6).unwrap();
        assert!(r.tested > 0);
    }
}
