use num_bigint::BigInt;

use super::{exponent, factorial, mono, over, permutations, range_seq, tally_members, within_budget, x};
use crate::algebra::{q_int, real_root_count, Tally, Var};
use crate::enumeration::{weighted_gf, Stat};
use crate::eulerian::{compute, quotient_sum, Kind};
use crate::geometry::h_star;
use crate::harness::evidence::Evidence;
use crate::harness::params::{require, Ctx};
use crate::sequences::{make_family, make_kl, Family, SSeq};
use crate::statistics::{for_each_invseq, invseq_stats, Flavor, MultisetWord, SignedPerm};
use crate::{Poly, Result, Series};

fn e_poly(s: &SSeq, ctx: &Ctx) -> Result<Poly> {
    Ok(compute(Kind::E, s, ctx.budget)?.poly)
}

fn q_poly(s: &SSeq, ctx: &Ctx) -> Result<Poly> {
    Ok(compute(Kind::Q, s, ctx.budget)?.poly)
}

fn seq(ctx: &Ctx) -> Result<SSeq> {
    let s = ctx.seq_or("s", &[2, 3, 5])?;
    require(!s.is_empty(), || "s must be nonempty".into())?;
    Ok(s)
}

pub(crate) fn invseq(ctx: &Ctx) -> Result<Evidence> {
    let s = seq(ctx)?;
    let caps = ctx.caps_for(&[Var::X])?;
    let lhs = weighted_gf(&s, &caps, &[(Stat::LastCeil, Var::X)])?;
    let rhs = over(Series::new(e_poly(&s, ctx)?, caps), std::iter::repeat_n(x(1), s.len()))?;
    Ok(Evidence::series(&lhs, &rhs))
}

/// Four-statistic refinements: `height` selects `x^(lambda_n)` over
/// `x^(ceil(lambda_n / s_n))`.
fn refined(ctx: &Ctx, height: bool) -> Result<Evidence> {
    let s = seq(ctx)?;
    let v = s.values();
    let n = v.len();
    let caps = ctx.caps_for(&[Var::Q, Var::U, Var::X, Var::Z])?;
    let x_stat = if height { Stat::Last } else { Stat::LastCeil };
    let weights = [(Stat::Weight, Var::Q), (x_stat, Var::X), (Stat::CeilSum, Var::U), (Stat::EpsSum, Var::Z)];
    let lhs = weighted_gf(&s, &caps, &weights)?;
    within_budget(s.product(), ctx.budget)?;
    let sn = v[n - 1];
    let mut tally = Tally::new();
    let mut failure = None;
    for_each_invseq(v, |e| {
        let st = invseq_stats(e, v);
        let xe = if height { exponent(sn as i128 * st.asc as i128 - e[n - 1] as i128, "s_n asc - e_n") } else { Ok(st.asc as u32) };
        match xe {
            Ok(xe) => tally.add(mono(&[
                (Var::X, xe),
                (Var::U, st.amaj as u32),
                (Var::Q, st.lhp as u32),
                (Var::Z, st.weight as u32),
            ])),
            Err(err) => failure = failure.take().or(Some(err)),
        }
    });
    if let Some(err) = failure {
        return Err(err);
    }
    let xs = if height { sn as u32 } else { 1 };
    let rhs = over(
        Series::new(tally.into_poly(), caps),
        (0..n).map(|i| mono(&[(Var::X, xs), (Var::U, (n - i) as u32), (Var::Q, v[i..].iter().sum::<u64>() as u32)])),
    )?;
    Ok(Evidence::series(&lhs, &rhs))
}

pub(crate) fn fullss(ctx: &Ctx) -> Result<Evidence> {
    refined(ctx, false)
}

pub(crate) fn ht_full(ctx: &Ctx) -> Result<Evidence> {
    refined(ctx, true)
}

pub(crate) fn rev_e(ctx: &Ctx) -> Result<Evidence> {
    let s = seq(ctx)?;
    Ok(Evidence::polys(&e_poly(&s, ctx)?, &h_star(&s.reversed())?))
}

pub(crate) fn ehrhart_hstar(ctx: &Ctx) -> Result<Evidence> {
    let s = seq(ctx)?;
    Ok(Evidence::polys(&h_star(&s)?, &e_poly(&s, ctx)?))
}

fn signed(ctx: &Ctx, n: usize) -> Result<impl Iterator<Item = SignedPerm>> {
    within_budget(factorial(n) << n, ctx.budget)?;
    Ok(SignedPerm::all(n))
}

fn des_poly(perms: impl Iterator<Item = SignedPerm>, flavor: Flavor, keep: impl Fn(&SignedPerm) -> bool) -> Result<Poly> {
    let mut tally = Tally::new();
    for p in perms.filter(|p| keep(p)) {
        tally.add(x(p.des(flavor)? as u32));
    }
    Ok(tally.into_poly())
}

fn arithmetic(k: u64, n: usize) -> Result<SSeq> {
    make_family(Family::Arithmetic { k }, n)
}

pub(crate) fn bn(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 3)?;
    let lhs = des_poly(signed(ctx, n)?, Flavor::B, |_| true)?;
    Ok(Evidence::polys(&lhs, &e_poly(&arithmetic(2, n)?, ctx)?))
}

pub(crate) fn wreath(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 3)?;
    let k = ctx.u64_or("k", 2)?;
    require(n >= 1 && k >= 1, || "n and k must be positive".into())?;
    let s = arithmetic(k, n)?;
    let e = e_poly(&s, ctx)?;
    let caps = ctx.caps_for(&[Var::X])?;
    let cap = ctx.cap(Var::X)? as u64;
    let nk = n as u64 * k;
    let heights =
        tally_members(&range_seq(n)?, cap.saturating_sub(1) * nk, &caps, |p| Ok(x(p[n - 1].div_ceil(nk) as u32)))?;
    let ratio = Evidence::series(&heights, &over(Series::new(e.clone(), caps), std::iter::repeat_n(x(1), n))?);
    match k {
        1 => {
            let lhs: Tally = permutations(n, ctx.budget)?.map(|p| x(p.des() as u32)).collect();
            Ok(Evidence::polys(&lhs.into_poly(), &e).and("lecture hall heights", ratio))
        }
        2 => {
            let lhs = des_poly(signed(ctx, n)?, Flavor::B, |_| true)?;
            Ok(Evidence::polys(&lhs, &e).and("lecture hall heights", ratio))
        }
        _ => Ok(ratio.skip(format!(
            "no descent statistic for the wreath product with k = {k} is fixed, so only the inversion-sequence side is checked"
        ))),
    }
}

pub(crate) fn signed_multi(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 2)?;
    require(n >= 1, || "n must be positive".into())?;
    let e = e_poly(&make_kl(1, 4, 2 * n)?, ctx)?;
    Ok(Evidence { lhs: e.to_string(), ..Evidence::default() }
        .skip("the descent convention for signed multiset permutations is not fixed, so the permutation side is not computed"))
}

pub(crate) fn one_k(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 4)?;
    let k = ctx.u64_or("k", 2)?;
    require(n >= 1 && k >= 1, || "n and k must be positive".into())?;
    let lhs = e_poly(&make_family(Family::OneModK { k }, n)?, ctx)?;
    let mut rhs = Poly::zero();
    for p in permutations(n, ctx.budget)? {
        let st = p.stats();
        rhs.add_term(x(st.exc as u32), BigInt::from(k).pow((n as u64 - st.cyc) as u32));
    }
    Ok(Evidence::polys(&lhs, &rhs))
}

pub(crate) fn multi1(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 2)?;
    require(n >= 1, || "n must be positive".into())?;
    let lhs = e_poly(&make_kl(4, 1, 2 * n)?, ctx)?;
    let letters: Vec<u64> = (1..=n as u64).flat_map(|i| [i, i]).collect();
    within_budget(factorial(2 * n) >> n, ctx.budget)?;
    let rhs: Tally = MultisetWord::arrangements(&letters).iter().map(|w| x(w.des() as u32)).collect();
    Ok(Evidence::polys(&lhs, &rhs.into_poly()))
}

fn type_d(ctx: &Ctx, n: usize) -> Result<(Poly, Poly)> {
    require(n >= 2, || "type D needs n >= 2".into())?;
    let all = des_poly(signed(ctx, n)?, Flavor::D, |_| true)?;
    let even = des_poly(signed(ctx, n)?, Flavor::D, SignedPerm::is_type_d)?;
    Ok((all, even))
}

pub(crate) fn typed_factor(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 3)?;
    let (all, even) = type_d(ctx, n)?;
    Ok(Evidence::polys(&all, &even.scale(&BigInt::from(2))))
}

fn root_evidence(p: &Poly) -> Result<Evidence> {
    let (roots, degree) = real_root_count(p, Var::X)?;
    Ok(Evidence::values(format!("{roots} distinct real roots"), format!("square-free degree {degree}"), roots == degree)
        .note(format!("polynomial {p}")))
}

pub(crate) fn realroot(ctx: &Ctx) -> Result<Evidence> {
    if ctx.str_or("group", "")? == "D" {
        let n = ctx.usize_or("n", 3)?;
        let (all, even) = type_d(ctx, n)?;
        return Ok(root_evidence(&even)?.and("half of the B_n type-D distribution", Evidence::polys(&all, &even.scale(&BigInt::from(2)))));
    }
    root_evidence(&e_poly(&seq(ctx)?, ctx)?)
}

pub(crate) fn ht_gf(ctx: &Ctx) -> Result<Evidence> {
    let s = seq(ctx)?;
    let caps = ctx.caps_for(&[Var::X])?;
    let lhs = weighted_gf(&s, &caps, &[(Stat::Last, Var::X)])?;
    let sn = s.values()[s.len() - 1] as u32;
    let rhs = over(Series::new(q_poly(&s, ctx)?, caps), std::iter::repeat_n(x(sn), s.len()))?;
    Ok(Evidence::series(&lhs, &rhs))
}

/// `sum over S_n of x^(m des + pi_last)`, with an offset.
fn des_last(ctx: &Ctx, n: usize, m: u64, offset: i128) -> Result<Poly> {
    let mut tally = Tally::new();
    for p in permutations(n, ctx.budget)? {
        let last = p.images().last().copied().unwrap_or(0) as i128;
        tally.add(x(exponent((m * p.des()) as i128 + last + offset, "height exponent")?));
    }
    Ok(tally.into_poly())
}

pub(crate) fn lhp_ht(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 3)?;
    require(n >= 1, || "n must be positive".into())?;
    let caps = ctx.caps_for(&[Var::X])?;
    let cap = ctx.cap(Var::X)?;
    let lhs = weighted_gf(&range_seq(n)?, &caps, &[(Stat::Last, Var::X)])?;
    let num = des_last(ctx, n, n as u64, -(n as i128))?;
    let rhs = over(Series::new(num, caps.clone()), std::iter::repeat_n(x(n as u32), n))?;
    let mut boxed = Poly::zero();
    for j in 0..=cap / n as u32 {
        for i in 0..n as u32 {
            let e = j * n as u32 + i;
            if e < cap {
                let count = BigInt::from(j + 1).pow(n as u32 - i) * BigInt::from(j + 2).pow(i);
                boxed.add_term(x(e), count);
            }
        }
    }
    let boxed = Series::new(boxed, caps).mul_binomial(true, &x(1));
    Ok(Evidence::series(&lhs, &rhs).and("box count series", Evidence::series(&lhs, &boxed)))
}

pub(crate) fn chung_graham(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 3)?;
    require(n >= 2, || "n must be at least 2".into())?;
    let full = des_last(ctx, n, n as u64, 0)?;
    let lhs = full.div_exact(&q_int(n as u32, Var::X))?;
    let rhs = des_last(ctx, n - 1, n as u64, 0)?.shift(&x(1));
    Ok(Evidence::polys(&lhs, &rhs).note("right side carries an extra factor x, so the quotient is compared with x times the smaller sum"))
}

pub(crate) fn qdivided(ctx: &Ctx) -> Result<Evidence> {
    let s = seq(ctx)?;
    let sn = s.values()[s.len() - 1] as u32;
    let lhs = q_poly(&s, ctx)?.div_exact(&q_int(sn, Var::X))?;
    Ok(Evidence::polys(&lhs, &quotient_sum(&s, ctx.budget)?))
}

pub(crate) fn as_coincide(ctx: &Ctx) -> Result<Evidence> {
    let s = seq(ctx)?;
    let v = s.values();
    require(v.windows(2).all(|w| w[0] <= w[1]), || format!("s = {s} must be nondecreasing"))?;
    require(v.len() >= 2, || "s needs at least two terms".into())?;
    let divided = compute(Kind::QDivided, &s, ctx.budget)?.poly;
    let smaller = q_poly(&s.prefix(v.len() - 1), ctx)?;
    Ok(Evidence::lists("index", &divided.nonzero_coeffs(), &smaller.nonzero_coeffs()))
}
