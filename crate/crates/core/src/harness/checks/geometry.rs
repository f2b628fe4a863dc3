use super::{within_budget, x};
use crate::algebra::{palindromic_center, Caps, Tally, Var};
use crate::bijections::{bme_bijectivity_check, theta_bijectivity_check};
use crate::enumeration::{class_counts, weighted_gf, PartitionClass, Stat};
use crate::eulerian::{compute, inflated_divided, quotient_sum, Kind};
use crate::geometry::{gorenstein_check, lattice_gf, linear_recurrence, pi_points, pi_prime_points, self_reciprocity_check};
use crate::harness::evidence::Evidence;
use crate::harness::params::{require, Ctx};
use crate::sequences::SSeq;
use crate::Result;

fn seq(ctx: &Ctx, default: &[u64]) -> Result<SSeq> {
    let s = ctx.seq_or("s", default)?;
    require(!s.is_empty(), || "s must be nonempty".into())?;
    Ok(s)
}

pub(crate) fn lptgf(ctx: &Ctx) -> Result<Evidence> {
    let s = seq(ctx, &[2, 3])?;
    let n = s.len();
    let mut caps = Caps::new();
    for i in 1..=n {
        let v = Var::z(i);
        caps = caps.with(v, ctx.caps.get(v).unwrap_or(10));
    }
    let weights: Vec<(Stat, Var)> = (1..=n).map(|i| (Stat::Part(i), Var::z(i))).collect();
    let lhs = weighted_gf(&s, &caps, &weights)?;
    let rhs = lattice_gf(&s, ctx.budget)?.expand(&caps)?;
    Ok(Evidence::series(&lhs, &rhs))
}

/// Lattice points `lambda` whose successive ratios `lambda_i / s_i` step up
/// by less than one; with `unit_last` the final step is measured against
/// the last unit vector instead.
fn brute_parallelepiped(s: &[u64], unit_last: bool) -> Vec<Vec<u64>> {
    fn grow(s: &[u64], unit_last: bool, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let i = prefix.len();
        if i == s.len() {
            out.push(prefix.clone());
            return;
        }
        let (prev, sp) = match i {
            0 => (0, 1),
            _ => (prefix[i - 1] as u128, s[i - 1] as u128),
        };
        let si = s[i] as u128;
        let last_unit = unit_last && i + 1 == s.len() && i > 0;
        let (lo, hi) = if last_unit { (si * prev, si * prev + sp) } else { (si * prev, si * prev + si * sp) };
        let mut l = lo.div_ceil(sp);
        while l * sp < hi {
            prefix.push(l as u64);
            grow(s, unit_last, prefix, out);
            prefix.pop();
            l += 1;
        }
    }
    let mut out = Vec::new();
    grow(s, unit_last, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn last_tally(points: &[Vec<u64>], f: impl Fn(u64) -> u64) -> crate::Poly {
    points.iter().map(|p| x(f(p[p.len() - 1]) as u32)).collect::<Tally>().into_poly()
}

pub(crate) fn pi_identities(ctx: &Ctx) -> Result<Evidence> {
    let s = seq(ctx, &[2, 3])?;
    let v = s.values();
    let n = v.len();
    within_budget(s.product(), ctx.budget)?;
    let sn = v[n - 1];
    let pi = pi_points(&s, ctx.budget)?;
    let brute = brute_parallelepiped(v, false);
    let mut ev = Evidence::lists("point", &render(&pi.points), &render(&brute));
    let e = compute(Kind::E, &s, ctx.budget)?.poly;
    let q = compute(Kind::Q, &s, ctx.budget)?.poly;
    ev = ev
        .and("ceiling heights against E", Evidence::polys(&last_tally(&brute, |l| l.div_ceil(sn)), &e))
        .and("heights against Q", Evidence::polys(&last_tally(&brute, |l| l), &q));
    if n >= 2 {
        let prime = pi_prime_points(&s, ctx.budget)?;
        let brute_prime = brute_parallelepiped(v, true);
        ev = ev
            .and("primed points", Evidence::lists("point", &render(&prime.points), &render(&brute_prime)))
            .and(
                "primed heights against the quotient sum",
                Evidence::polys(&last_tally(&brute_prime, |l| l), &quotient_sum(&s, ctx.budget)?),
            );
    }
    Ok(ev)
}

fn render(points: &[Vec<u64>]) -> Vec<String> {
    points.iter().map(|p| format!("{p:?}")).collect()
}

pub(crate) fn gor_equiv(ctx: &Ctx) -> Result<Evidence> {
    let s = seq(ctx, &[3, 5])?;
    let arithmetic = gorenstein_check(&s).is_gorenstein();
    let symmetric = self_reciprocity_check(&s, ctx.budget)?;
    within_budget(s.product(), ctx.budget)?;
    let palindromic = palindromic_center(&inflated_divided(&s)?, Var::X)?.is_some();
    let lhs = format!("gorenstein condition {arithmetic}");
    let rhs = format!("self-reciprocal {symmetric}, palindromic quotient {palindromic}");
    let ev = Evidence::values(lhs, rhs, arithmetic == symmetric && symmetric == palindromic);
    if !ctx.has("expect") {
        return Ok(ev);
    }
    let expect = ctx.str_or("expect", "")?;
    let expected: bool = expect
        .parse()
        .map_err(|_| crate::Error::InvalidParameter(format!("expect must be true or false, got '{expect}'")))?;
    Ok(ev.and("expected outcome", Evidence::equal(arithmetic, expected)))
}

pub(crate) fn only_ell_finite(ctx: &Ctx) -> Result<Evidence> {
    let l = ctx.u64_or("l", 2)?;
    let m = ctx.i64_or("m", -1)?;
    let max_n = ctx.usize_or("N", 10)?;
    require(l >= 1 && max_n >= 1, || "l and N must be positive".into())?;
    let mut pattern = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        pattern.push(match linear_recurrence(l, m, n) {
            Ok(s) => gorenstein_check(&s).is_gorenstein(),
            Err(crate::Error::NonPositiveTerm { .. }) => false,
            Err(e) => return Err(e),
        });
    }
    let show = |p: &[bool]| p.iter().map(|&b| if b { 'G' } else { '-' }).collect::<String>();
    let observed = show(&pattern);
    if m == -1 {
        let expected = show(&vec![true; max_n]);
        return Ok(Evidence::equal(observed, expected));
    }
    let fails_by_end = pattern.last() == Some(&false);
    let rhs = format!("fails by n = {max_n}");
    Ok(Evidence::values(observed, rhs, fails_by_end))
}

pub(crate) fn bme(ctx: &Ctx) -> Result<Evidence> {
    let k = ctx.u64_or("k", 2)?;
    let l = ctx.u64_or("l", 2)?;
    let n = ctx.usize_or("n", 3)?;
    let max = ctx.u64_or("N", 15)?;
    let r = bme_bijectivity_check(k, l, n, max)?;
    let flags = Evidence::values(
        format!("weight preserving {}, round trip {}", r.weight_preserving, r.round_trip),
        "weight preserving true, round trip true",
        r.weight_preserving && r.round_trip,
    );
    Ok(Evidence::lists("q", &r.member_counts, &r.image_counts).and("bijection flags", flags))
}

pub(crate) fn theta(ctx: &Ctx) -> Result<Evidence> {
    let l = ctx.u64_or("l", 2)?;
    let max = ctx.u64_or("N", 20)?;
    require(l >= 2, || "l must be at least 2".into())?;
    let r = theta_bijectivity_check(l, max)?;
    let flags = Evidence::values(
        format!("in class {}, weight preserving {}, injective {}", r.images_in_class, r.weight_preserving, r.injective),
        "in class true, weight preserving true, injective true",
        r.images_in_class && r.weight_preserving && r.injective,
    );
    let mut ev = Evidence::lists("q", &r.image_counts, &r.class_counts).and("map flags", flags);
    if l == 2 {
        ev = ev.and("distinct parts", Evidence::lists("q", &r.image_counts, &class_counts(&PartitionClass::Distinct, max)));
    }
    Ok(ev)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_parallelepiped_of_two_three() {
        let expected: Vec<Vec<u64>> = vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 2], vec![1, 3], vec![1, 4]];
        assert_eq!(brute_parallelepiped(&[2, 3], false), expected);
        assert_eq!(brute_parallelepiped(&[2, 3], true), vec![vec![0, 0], vec![1, 2]]);
    }
}
