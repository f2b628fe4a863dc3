use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use lecture_hall::algebra::{
    invert_factor, palindromic_center, q_binomial, real_root_count, Caps, Monomial, Tally, Var,
};
use lecture_hall::bijections::{perm_to_invseq, theta, theta_parts, PartMultiplicity};
use lecture_hall::enumeration::{
    count_last_at_most, enumerate_weight, is_member, members, partitions_in, weighted_gf, Bound, PartitionClass,
    Stat,
};
use lecture_hall::eulerian::{inflated_divided, inflated_eulerian, is_real_rooted, s_eulerian};
use lecture_hall::geometry::{gorenstein_check, h_star, lattice_gf, pi_points, self_reciprocity_check};
use lecture_hall::sequences::{gt_c_ell, kl_terms, make_kl, SSeq};
use lecture_hall::statistics::{asc, Perm};
use lecture_hall::{Poly, Series};

const BUDGET: u64 = 1_000_000;

fn seq(v: &[u64]) -> SSeq {
    SSeq::explicit(v.to_vec()).unwrap()
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, -5i64..6), 0..5).prop_map(|terms| {
        Poly::from_terms(
            terms.into_iter().map(|(a, b, c)| (Monomial::from_pairs([(Var::Q, a), (Var::X, b)]), BigInt::from(c))),
        )
    })
}

fn sequence(max_n: usize, max_term: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max_term, 1..=max_n)
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn q_binomial_at_one(n in 0u32..12, k in 0u32..12) {
        prop_assume!(k <= n);
        let p = q_binomial(n, k, Var::Q);
        prop_assert_eq!(p.coeff_sum(), binomial(n as u64, k as u64));
    }

    #[test]
    fn inverse_factor_cancels(a in 1u32..4, b in 0u32..3, cq in 1u32..15, cx in 1u32..15) {
        let caps = Caps::new().with(Var::Q, cq).with(Var::X, cx);
        let m = Monomial::from_pairs([(Var::Q, a), (Var::X, b)]);
        let inv = invert_factor(&m, &caps).unwrap();
        let product = inv.mul(&Series::new(Poly::one_minus(m), caps.clone()));
        prop_assert!(product.first_mismatch(&Series::one(caps)).is_none());
    }

    #[test]
    fn square_free_part_keeps_roots(roots in prop::collection::vec(-4i64..5, 1..5)) {
        let linear = |r: i64| Poly::from_univariate(Var::X, &[BigInt::from(-r), BigInt::from(1)]);
        let p = roots.iter().fold(Poly::one(), |acc, &r| &acc * &linear(r));
        let squared = &p * &p;
        let distinct = roots.iter().collect::<BTreeSet<_>>().len();
        prop_assert_eq!(real_root_count(&p, Var::X).unwrap(), (distinct, distinct));
        prop_assert_eq!(real_root_count(&squared, Var::X).unwrap(), (distinct, distinct));
    }

    #[test]
    fn ell_sequences_satisfy_the_recurrence(l in 2u64..6, n in 3usize..10) {
        let a = make_kl(l, l, n).unwrap();
        let v = a.values();
        for j in 2..n {
            prop_assert_eq!(v[j] + v[j - 2], l * v[j - 1]);
        }
    }

    #[test]
    fn gt_c_two_is_plain_order(x in 0u64..50, y in 0u64..50) {
        prop_assert_eq!(gt_c_ell(x, y, 2), x > y);
    }

    #[test]
    fn gt_c_ell_monotone(x in 0u64..60, y in 0u64..60, l in 2u64..6) {
        if gt_c_ell(x, y, l) {
            prop_assert!(gt_c_ell(x + 1, y, l));
            if y > 0 {
                prop_assert!(gt_c_ell(x, y - 1, l));
            }
        }
    }

    #[test]
    fn enumeration_matches_box_filter(s in sequence(3, 4), max in 0u64..13) {
        let ss = seq(&s);
        let found: BTreeSet<Vec<u64>> = enumerate_weight(&ss, max).into_iter().map(|l| l.parts().to_vec()).collect();
        let mut brute = BTreeSet::new();
        let n = s.len();
        let mut parts = vec![0u64; n];
        loop {
            if parts.iter().sum::<u64>() <= max && is_member(&parts, &ss).unwrap() {
                brute.insert(parts.clone());
            }
            let Some(i) = (0..n).find(|&i| parts[i] < max) else { break };
            parts[i] += 1;
            for p in parts.iter_mut().take(i) {
                *p = 0;
            }
        }
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn reversal_counts(s in sequence(4, 5), t in 0u64..3) {
        let ss = seq(&s);
        let last = *s.last().unwrap();
        prop_assert_eq!(count_last_at_most(&ss, t * last), count_last_at_most(&ss.reversed(), t * s[0]));
    }

    #[test]
    fn eulerian_reversal(s in sequence(5, 4)) {
        let ss = seq(&s);
        prop_assert_eq!(s_eulerian(&ss).unwrap(), s_eulerian(&ss.reversed()).unwrap());
    }

    #[test]
    fn eulerian_is_real_rooted(s in sequence(6, 8)) {
        let ss = seq(&s);
        prop_assume!(ss.product() <= BUDGET as u128);
        prop_assert!(is_real_rooted(&s_eulerian(&ss).unwrap()).unwrap());
    }

    #[test]
    fn h_star_is_eulerian(s in sequence(4, 5)) {
        let ss = seq(&s);
        prop_assert_eq!(h_star(&ss).unwrap(), s_eulerian(&ss).unwrap());
    }

    #[test]
    fn parallelepiped_size(s in sequence(4, 6)) {
        let ss = seq(&s);
        prop_assert_eq!(pi_points(&ss, BUDGET).unwrap().points.len() as u128, ss.product());
    }

    #[test]
    fn cone_series_matches_enumeration(s in sequence(3, 4), cap in 4u32..9) {
        let ss = seq(&s);
        let n = s.len();
        let caps = (1..=n).fold(Caps::new(), |c, i| c.with(Var::z(i), cap));
        let weights: Vec<(Stat, Var)> = (1..=n).map(|i| (Stat::Part(i), Var::z(i))).collect();
        let lhs = weighted_gf(&ss, &caps, &weights).unwrap();
        let rhs = lattice_gf(&ss, BUDGET).unwrap().expand(&caps).unwrap();
        prop_assert!(lhs.first_mismatch(&rhs).is_none());
    }

    #[test]
    fn gorenstein_triple(s in sequence(5, 8)) {
        let ss = seq(&s);
        prop_assume!(ss.product() <= 50_000);
        let arithmetic = gorenstein_check(&ss).is_gorenstein();
        let symmetric = self_reciprocity_check(&ss, BUDGET).unwrap();
        let palindromic = palindromic_center(&inflated_divided(&ss).unwrap(), Var::X).unwrap().is_some();
        prop_assert_eq!(arithmetic, symmetric);
        prop_assert_eq!(symmetric, palindromic);
    }

    #[test]
    fn ascent_coincidence(mut s in sequence(5, 5)) {
        s.sort_unstable();
        prop_assume!(s.len() >= 2);
        let ss = seq(&s);
        let nonzero = |p: &Poly| p.nonzero_coeffs();
        prop_assert_eq!(
            nonzero(&inflated_divided(&ss).unwrap()),
            nonzero(&inflated_eulerian(&ss.prefix(s.len() - 1)).unwrap())
        );
    }
}

#[test]
fn eulerian_products_are_palindromic() {
    let mut product = Poly::one();
    for n in 1..=7 {
        product = &product * &s_eulerian(&seq(&(1..=n).collect::<Vec<_>>())).unwrap();
        let center = palindromic_center(&product, Var::X).unwrap();
        assert!(matches!(center, Some((_, 1))), "n = {n}: {center:?}");
    }
}

#[test]
fn one_four_terms() {
    let a = kl_terms(1, 4, 12);
    for i in 1..=6usize {
        assert_eq!(a[2 * i], 4 * i as i128);
        if 2 * i < 12 {
            assert_eq!(a[2 * i + 1], 2 * i as i128 + 1);
        }
    }
}

#[test]
fn ascents_are_descents_on_permutations() {
    for n in 1..=7 {
        let s: Vec<u64> = (1..=n as u64).collect();
        for p in Perm::all(n) {
            let e = perm_to_invseq(&p);
            assert_eq!(asc(&e, &s), p.des(), "{p:?}");
            let plain = std::iter::once(0).chain(e.iter().copied()).collect::<Vec<_>>();
            assert_eq!(plain.windows(2).filter(|w| w[0] < w[1]).count() as u64, p.des());
        }
    }
}

#[test]
fn maj_and_inv_equidistributed() {
    for n in 1..=7 {
        let maj: Tally = Perm::all(n).map(|p| Monomial::pow(Var::Q, p.maj() as u32)).collect();
        let inv: Tally = Perm::all(n).map(|p| Monomial::pow(Var::Q, p.inv() as u32)).collect();
        assert_eq!(maj.into_poly(), inv.into_poly());
    }
}

#[test]
fn theta_images_are_ratio_ordered() {
    for l in 2..=5 {
        let inputs = partitions_in(&PartitionClass::PartsFrom(theta_parts(l, 18).unwrap()), 18);
        for mu in inputs {
            let lam = theta(&PartMultiplicity::from_parts(&mu).unwrap(), l).unwrap();
            assert!(lam.windows(2).all(|w| gt_c_ell(w[0], w[1], l)), "l = {l}: {mu:?} -> {lam:?}");
        }
    }
}

#[test]
fn box_counts() {
    for n in 1..=5usize {
        let s = seq(&(1..=n as u64).collect::<Vec<_>>());
        for t in 0..=3u64 {
            for i in 0..n as u64 {
                let count = members(&s, Bound::last(t * n as u64 + i)).unwrap().len() as u128;
                let expected = (t as u128 + 1).pow(n as u32 - i as u32) * (t as u128 + 2).pow(i as u32);
                assert_eq!(count, expected, "n={n} t={t} i={i}");
            }
        }
    }
}
