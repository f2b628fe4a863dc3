//! Lecture hall cones and polytopes: generators, fundamental
//! parallelepipeds, lattice-point series, Ehrhart counting and the
//! Gorenstein property.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{interpolate_integers, Caps, Monomial, Tally, Var};
use crate::enumeration::count_last_at_most;
use crate::sequences::SSeq;
use crate::statistics::{ascent_set, for_each_invseq};
use crate::{Error, Poly, RatPoly, Result, Series};

/// Generators `v_i = (0, ..., 0, s_i, ..., s_n)`, one per row.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConeBasis {
    pub vectors: Vec<Vec<u64>>,
}

impl ConeBasis {
    pub fn diagonal(&self) -> Vec<u64> {
        self.vectors.iter().enumerate().map(|(i, v)| v[i]).collect()
    }
}

pub fn generators(s: &SSeq) -> ConeBasis {
    let v = s.values();
    let n = v.len();
    ConeBasis { vectors: (0..n).map(|i| (0..n).map(|j| if j < i { 0 } else { v[j] }).collect()).collect() }
}

/// Lattice points of a half-open parallelepiped, sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PiPointSet {
    pub points: Vec<Vec<u64>>,
    pub basis: ConeBasis,
}

fn check_size(s: &[u64], budget: u64) -> Result<()> {
    let size: u128 = s.iter().map(|&v| v as u128).product();
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(())
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Coordinates `alpha_j = lambda_j/s_j - lambda_{j-1}/s_{j-1}` of `lambda` in
/// the basis `v_1..v_n`, all of which must lie in `[0, 1)`.
fn alpha_ok(lambda: &[u64], s: &[u64]) -> bool {
    let mut prev = BigRational::zero();
    for (l, si) in lambda.iter().zip(s) {
        let cur = ratio(*l, *si);
        let alpha = &cur - &prev;
        if alpha < BigRational::zero() || alpha >= BigRational::one() {
            return false;
        }
        prev = cur;
    }
    true
}

/// Points of `Pi_n^(s)` from minimally barred inversion sequences:
/// `b_i = |Asc e in {0..i-1}|` and `lambda_i = s_i b_i - e_i`.
pub fn pi_points(s: &SSeq, budget: u64) -> Result<PiPointSet> {
    let v = s.values();
    check_size(v, budget)?;
    let mut points = Vec::new();
    let mut bad = None;
    for_each_invseq(v, |e| {
        let asc = ascent_set(e, v);
        let lambda: Vec<u64> =
            (0..e.len()).map(|i| v[i] * asc.iter().filter(|&&a| a < i + 1).count() as u64 - e[i]).collect();
        if bad.is_none() && !alpha_ok(&lambda, v) {
            bad = Some(lambda.clone());
        }
        points.push(lambda);
    });
    if let Some(lambda) = bad {
        return Err(Error::Consistency(format!("{lambda:?} lies outside the parallelepiped for s = {s}")));
    }
    points.sort();
    Ok(PiPointSet { points, basis: generators(s) })
}

/// Points of `Pi'_n^(s)`, where `v_n` is replaced by the last unit vector:
/// each point of the `(n-1)` parallelepiped lifted by
/// `lambda_n = ceil(s_n lambda_{n-1} / s_{n-1})`.
pub fn pi_prime_points(s: &SSeq, budget: u64) -> Result<PiPointSet> {
    let v = s.values();
    let n = v.len();
    if n == 0 {
        return Err(Error::InvalidParameter("the primed parallelepiped needs n >= 1".into()));
    }
    let head = pi_points(&s.prefix(n - 1), budget)?;
    let sn = v[n - 1];
    let mut points: Vec<Vec<u64>> = head
        .points
        .into_iter()
        .map(|mut p| {
            let last = match p.last() {
                Some(&prev) => (sn as u128 * prev as u128).div_ceil(v[n - 2] as u128) as u64,
                None => 0,
            };
            p.push(last);
            p
        })
        .collect();
    points.sort();
    let mut basis = generators(s);
    basis.vectors[n - 1] = (0..n).map(|j| u64::from(j == n - 1)).collect();
    Ok(PiPointSet { points, basis })
}

/// `F(z) = numerator / prod (1 - z^{v_i})`.
#[derive(Clone, PartialEq, Debug)]
pub struct LatticeGf {
    pub numerator: Poly,
    pub denominators: Vec<Monomial>,
}

impl LatticeGf {
    /// Expands the rational function below `caps`, which must bound every
    /// denominator.
    pub fn expand(&self, caps: &Caps) -> Result<Series> {
        let mut out = Series::new(self.numerator.clone(), caps.clone());
        for m in &self.denominators {
            out = out.div_one_minus(m)?;
        }
        Ok(out)
    }

    /// Substitutes a monomial for each variable in numerator and denominators.
    pub fn specialize(&self, f: impl Fn(Var) -> Monomial) -> LatticeGf {
        LatticeGf {
            numerator: self.numerator.substitute(&f),
            denominators: self.denominators.iter().map(|m| m.substitute(&f)).collect(),
        }
    }
}

pub fn lattice_gf(s: &SSeq, budget: u64) -> Result<LatticeGf> {
    let pi = pi_points(s, budget)?;
    let numerator = pi.points.iter().map(|p| Monomial::from_exponents(p)).collect::<Tally>().into_poly();
    let denominators = pi.basis.vectors.iter().map(|v| Monomial::from_exponents(v)).collect();
    Ok(LatticeGf { numerator, denominators })
}

/// `i(t) = |{lambda : lambda_n <= t s_n}|`, the lattice points of the `t`-th
/// dilate of the lecture hall polytope.
pub fn polytope_count(s: &SSeq, t: u64) -> u128 {
    match s.values().last() {
        Some(&sn) => count_last_at_most(s, t * sn),
        None => 1,
    }
}

/// Fits `i(t)` at `t = 0..n` and confirms the fit at `t = n+1, n+2`.
pub fn ehrhart_poly_p(s: &SSeq) -> Result<RatPoly> {
    let n = s.len() as u64;
    let points: Vec<(i64, BigInt)> = (0..=n).map(|t| (t as i64, BigInt::from(polytope_count(s, t)))).collect();
    let p = interpolate_integers(&points)?;
    for t in n + 1..=n + 2 {
        let fitted = p.eval(&BigRational::from_integer(BigInt::from(t)));
        let actual = BigRational::from_integer(BigInt::from(polytope_count(s, t)));
        if fitted != actual {
            return Err(Error::Consistency(format!("Ehrhart fit for s = {s} misses t = {t}")));
        }
    }
    Ok(p)
}

/// `h*(x)` with `sum_t i(t) x^t = h*(x) / (1 - x)^(n+1)`.
pub fn h_star(s: &SSeq) -> Result<Poly> {
    let p = ehrhart_poly_p(s)?;
    let n = s.len();
    let values: Vec<BigInt> = (0..=n)
        .map(|t| p.eval(&BigRational::from_integer(BigInt::from(t))).to_integer())
        .collect();
    let mut binom = vec![BigInt::one(); n + 2];
    for i in 1..=n + 1 {
        binom[i] = &binom[i - 1] * BigInt::from(n + 2 - i) / BigInt::from(i);
    }
    let coeffs: Vec<BigInt> = (0..=n)
        .map(|j| {
            (0..=j).fold(BigInt::zero(), |acc, i| {
                let term = &binom[i] * &values[j - i];
                if i % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    Ok(Poly::from_univariate(Var::X, &coeffs))
}

/// A quasi-polynomial: constituent `t mod period` is evaluated at `t`.
#[derive(Clone, PartialEq, Debug)]
pub struct QuasiPoly {
    pub period: u64,
    pub constituents: Vec<RatPoly>,
}

impl QuasiPoly {
    pub fn eval(&self, t: u64) -> BigRational {
        self.constituents[(t % self.period) as usize].eval(&BigRational::from_integer(BigInt::from(t)))
    }

    /// The smallest divisor `d` of the period whose residues already
    /// determine the constituents.
    pub fn minimal_period(&self) -> u64 {
        (1..=self.period)
            .filter(|&d| self.period.is_multiple_of(d))
            .find(|&d| (0..self.period).all(|r| self.constituents[r as usize] == self.constituents[(r % d) as usize]))
            .unwrap_or(self.period)
    }
}

/// `|tR ∩ Z^n|` where `R` is the region cut by `lambda_n <= 1`.
pub fn region_count(s: &SSeq, t: u64) -> u128 {
    if s.is_empty() {
        return 1;
    }
    count_last_at_most(s, t)
}

/// Fits one constituent per residue modulo `s_n` from `n + 1` samples and
/// checks two more.
pub fn ehrhart_quasi_r(s: &SSeq) -> Result<QuasiPoly> {
    let n = s.len() as u64;
    let period = s.values().last().copied().unwrap_or(1);
    let mut constituents = Vec::with_capacity(period as usize);
    for r in 0..period {
        let sample = |j: u64| {
            let t = r + j * period;
            (t as i64, BigInt::from(region_count(s, t)))
        };
        let p = interpolate_integers(&(0..=n).map(sample).collect::<Vec<_>>())?;
        for j in n + 1..=n + 2 {
            let (t, v) = sample(j);
            if p.eval(&BigRational::from_integer(BigInt::from(t))) != BigRational::from_integer(v) {
                return Err(Error::Consistency(format!("residue {r} fit for s = {s} misses t = {t}")));
            }
        }
        constituents.push(p);
    }
    Ok(QuasiPoly { period, constituents })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GorensteinResult {
    /// The witness `c`, when every step divides exactly.
    pub c: Option<Vec<u64>>,
    /// 1-based index of the first inexact step.
    pub failing_index: Option<usize>,
}

impl GorensteinResult {
    pub fn is_gorenstein(&self) -> bool {
        self.c.is_some()
    }
}

/// `c_1 = 1` and `c_j s_{j-1} = c_{j-1} s_j + gcd(s_j, s_{j-1})`.
pub fn gorenstein_check(s: &SSeq) -> GorensteinResult {
    let v = s.values();
    let mut c: Vec<u128> = Vec::with_capacity(v.len());
    for j in 0..v.len() {
        if j == 0 {
            c.push(1);
            continue;
        }
        let num = c[j - 1] * v[j] as u128 + v[j].gcd(&v[j - 1]) as u128;
        let (q, r) = num.div_rem(&(v[j - 1] as u128));
        if r != 0 || q > u64::MAX as u128 {
            return GorensteinResult { c: None, failing_index: Some(j + 1) };
        }
        c.push(q);
    }
    GorensteinResult { c: Some(c.into_iter().map(|x| x as u64).collect()), failing_index: None }
}

/// Whether some integer `d` maps the parallelepiped points onto themselves
/// by `lambda -> d - lambda`. Such a map reverses lexicographic order, so
/// `d` can only be the sum of the least and greatest points.
pub fn self_reciprocity_check(s: &SSeq, budget: u64) -> Result<bool> {
    let pi = pi_points(s, budget)?;
    let (Some(lo), Some(hi)) = (pi.points.first(), pi.points.last()) else {
        return Ok(true);
    };
    let d: Vec<u64> = lo.iter().zip(hi).map(|(a, b)| a + b).collect();
    let mut mirrored = Vec::with_capacity(pi.points.len());
    for p in &pi.points {
        let Some(m) = d.iter().zip(p).map(|(d, x)| d.checked_sub(*x)).collect::<Option<Vec<u64>>>() else {
            return Ok(false);
        };
        mirrored.push(m);
    }
    mirrored.sort();
    Ok(mirrored == pi.points)
}

/// `s_1 = 1`, `s_2 = l`, `s_j = l s_{j-1} + m s_{j-2}`.
pub fn linear_recurrence(l: u64, m: i64, n: usize) -> Result<SSeq> {
    let mut v: Vec<i128> = vec![1, l as i128];
    while v.len() < n {
        let j = v.len();
        v.push(l as i128 * v[j - 1] + m as i128 * v[j - 2]);
    }
    v.truncate(n);
    let values = v
        .into_iter()
        .enumerate()
        .map(|(i, x)| match u64::try_from(x) {
            Ok(x) if x > 0 => Ok(x),
            _ => Err(Error::NonPositiveTerm { index: i + 1 }),
        })
        .collect::<Result<Vec<_>>>()?;
    SSeq::explicit(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eulerian::{inflated_divided, inflated_eulerian, s_eulerian};

    const BUDGET: u64 = 1_000_000;

    fn seq(v: &[u64]) -> SSeq {
        SSeq::explicit(v.to_vec()).unwrap()
    }

    #[test]
    fn cone_generators() {
        assert_eq!(generators(&seq(&[2, 3])).vectors, vec![vec![2, 3], vec![0, 3]]);
        assert_eq!(generators(&seq(&[1])).vectors, vec![vec![1]]);
        assert_eq!(generators(&seq(&[1, 2, 3])).diagonal(), vec![1, 2, 3]);
    }

    #[test]
    fn parallelepipeds() {
        let pts = pi_points(&seq(&[2, 3]), BUDGET).unwrap().points;
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 2], vec![1, 3], vec![1, 4]]);
        assert_eq!(pi_points(&seq(&[1]), BUDGET).unwrap().points, vec![vec![0]]);
        assert_eq!(pi_points(&seq(&[1, 2]), BUDGET).unwrap().points, vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(pi_prime_points(&seq(&[1, 2]), BUDGET).unwrap().points.len(), 1);
        assert_eq!(pi_prime_points(&seq(&[4]), BUDGET).unwrap().points, vec![vec![0]]);
        assert_eq!(pi_prime_points(&seq(&[2, 3]), BUDGET).unwrap().points, vec![vec![0, 0], vec![1, 2]]);
    }

    #[test]
    fn parallelepiped_series_identities() {
        for s in [seq(&[2, 3]), seq(&[3, 1, 4]), seq(&[1, 2, 3, 4])] {
            let pts = pi_points(&s, BUDGET).unwrap().points;
            let sn = *s.values().last().unwrap();
            let by_height: Poly = pts.iter().map(|p| Monomial::pow(Var::X, u64::div_ceil(*p.last().unwrap(), sn) as u32)).collect::<Tally>().into_poly();
            assert_eq!(by_height, s_eulerian(&s).unwrap());
            let by_last: Poly = pts.iter().map(|p| Monomial::pow(Var::X, *p.last().unwrap() as u32)).collect::<Tally>().into_poly();
            assert_eq!(by_last, inflated_eulerian(&s).unwrap());
            let primed: Poly = pi_prime_points(&s, BUDGET).unwrap().points.iter().map(|p| Monomial::pow(Var::X, *p.last().unwrap() as u32)).collect::<Tally>().into_poly();
            assert_eq!(primed, inflated_divided(&s).unwrap());
        }
    }

    #[test]
    fn ehrhart() {
        let cube = ehrhart_poly_p(&seq(&[1, 2, 3])).unwrap();
        let expected = interpolate_integers(&(0..4i64).map(|t| (t, BigInt::from((t + 1).pow(3)))).collect::<Vec<_>>()).unwrap();
        assert_eq!(cube, expected);
        assert_eq!(ehrhart_poly_p(&seq(&[3, 2, 1])).unwrap(), expected);
        assert_eq!(h_star(&seq(&[1, 2, 3, 4, 5, 6])).unwrap(), s_eulerian(&seq(&[1, 2, 3, 4, 5, 6])).unwrap());
        assert_eq!(h_star(&seq(&[5])).unwrap().to_string(), "1 + 4*x");
        let q = ehrhart_quasi_r(&seq(&[2, 3])).unwrap();
        for t in 0..=12 {
            assert_eq!(q.eval(t), BigRational::from_integer(BigInt::from(region_count(&seq(&[2, 3]), t))));
        }
        let q3 = ehrhart_quasi_r(&seq(&[1, 2, 3])).unwrap();
        assert_eq!(q3.eval(3 * 2 + 1), BigRational::from_integer(BigInt::from(3 * 3 * 4)));
        assert_eq!(q3.eval(0), BigRational::one());
    }

    #[test]
    fn gorenstein() {
        assert_eq!(gorenstein_check(&seq(&[3, 5])).c, Some(vec![1, 2]));
        assert!(!gorenstein_check(&seq(&[5, 2])).is_gorenstein());
        assert_eq!(gorenstein_check(&seq(&[1, 1, 2, 3, 5])).failing_index, Some(5));
        assert!(gorenstein_check(&seq(&[1, 1, 2, 3])).is_gorenstein());
        assert!(self_reciprocity_check(&seq(&[3, 5]), BUDGET).unwrap());
        assert!(!self_reciprocity_check(&seq(&[5, 2]), BUDGET).unwrap());
        for k in 1..=3 {
            for n in 1..=3 {
                assert!(self_reciprocity_check(&SSeq::explicit((1..=n).map(|i| i * k).collect()).unwrap(), BUDGET).unwrap());
            }
        }
    }

    #[test]
    fn recurrences() {
        assert_eq!(linear_recurrence(2, -1, 5).unwrap().values(), &[1, 2, 3, 4, 5]);
        assert_eq!(linear_recurrence(3, 1, 4).unwrap().values(), &[1, 3, 10, 33]);
        assert!(linear_recurrence(1, -1, 5).is_err());
    }

    #[test]
    fn lattice_series() {
        let gf = lattice_gf(&seq(&[2, 3]), BUDGET).unwrap();
        assert_eq!(gf.numerator.to_string().matches('+').count(), 5);
        let q = gf.specialize(|_| Monomial::var(Var::Q));
        let lhs = q.expand(&Caps::new().with(Var::Q, 25)).unwrap();
        let enumerated = crate::enumeration::weighted_gf(&seq(&[2, 3]), &Caps::new().with(Var::Q, 25), &[(crate::enumeration::Stat::Weight, Var::Q)]).unwrap();
        assert_eq!(lhs.first_mismatch(&enumerated), None);
    }
}
