use super::{anti_seq, exponent, mono, over, permutations, poly_product, range_seq};
use crate::algebra::{q_int, q_int_at, Caps, Monomial, Tally, Var};
use crate::enumeration::{weighted_gf, Stat};
use crate::harness::evidence::Evidence;
use crate::harness::params::Ctx;
use crate::statistics::PermStats;
use crate::{Poly, Result, Series};

/// `sum over S_n of f(stats)`, failing on the first invalid exponent.
fn over_sn(ctx: &Ctx, n: usize, f: impl Fn(&PermStats) -> Result<Monomial>) -> Result<Poly> {
    let mut tally = Tally::new();
    for p in permutations(n, ctx.budget)? {
        tally.add(f(&p.stats())?);
    }
    Ok(tally.into_poly())
}

fn n_of(ctx: &Ctx) -> Result<usize> {
    ctx.usize_or("n", 3)
}

pub(crate) fn macmahon(ctx: &Ctx) -> Result<Evidence> {
    let n = n_of(ctx)?;
    let caps = ctx.caps_for(&[Var::X, Var::U])?;
    let cap_x = ctx.cap(Var::X)?;
    let mut lhs = Poly::zero();
    for t in 0..cap_x {
        let term = poly_product(std::iter::repeat_n(q_int(t + 1, Var::U), n)).truncate(&caps);
        lhs = &lhs + &term.shift(&Monomial::pow(Var::X, t));
    }
    let lhs = Series::new(lhs, caps.clone());
    let num = over_sn(ctx, n, |st| Ok(mono(&[(Var::X, st.des as u32), (Var::U, st.maj as u32)])))?;
    let rhs = over(Series::new(num, caps), (0..=n as u32).map(|i| mono(&[(Var::X, 1), (Var::U, i)])))?;
    Ok(Evidence::series(&lhs, &rhs))
}

pub(crate) fn permstats(ctx: &Ctx) -> Result<Evidence> {
    let n = n_of(ctx)?;
    let caps = ctx.caps_for(&[Var::X, Var::U])?;
    let lhs = weighted_gf(&range_seq(n)?, &caps, &[(Stat::LastCeil, Var::X), (Stat::CeilSum, Var::U)])?;
    let num = over_sn(ctx, n, |st| Ok(mono(&[(Var::X, st.des as u32), (Var::U, st.maj as u32)])))?;
    let rhs = over(Series::new(num, caps), (1..=n as u32).map(|i| mono(&[(Var::X, 1), (Var::U, i)])))?;
    Ok(Evidence::series(&lhs, &rhs))
}

pub(crate) fn bsanti(ctx: &Ctx) -> Result<Evidence> {
    let n = n_of(ctx)?;
    let caps = ctx.caps_for(&[Var::Q, Var::U])?;
    let lhs = weighted_gf(&anti_seq(n)?, &caps, &[(Stat::Weight, Var::Q), (Stat::FloorSum, Var::U)])?;
    let num = over_sn(ctx, n, |st| Ok(mono(&[(Var::Q, st.binv as u32), (Var::U, st.maj as u32)])))?;
    let rhs = over(Series::new(num, caps), (1..=n as u32).map(|i| mono(&[(Var::U, i), (Var::Q, i * (i + 1) / 2)])))?;
    Ok(Evidence::series(&lhs, &rhs))
}

fn one_minus(pairs: &[(Var, u32)]) -> Poly {
    Poly::one_minus(mono(pairs))
}

fn one_plus(pairs: &[(Var, u32)]) -> Poly {
    Poly::one_plus(mono(pairs))
}

pub(crate) fn majbinv(ctx: &Ctx) -> Result<Evidence> {
    let n = n_of(ctx)?;
    let lhs = over_sn(ctx, n, |st| Ok(mono(&[(Var::U, st.maj as u32), (Var::Q, st.binv as u32)])))?;
    let n = n as u32;
    let num = poly_product((1..=n).flat_map(|i| {
        [one_minus(&[(Var::U, i), (Var::Q, i * (i + 1) / 2)]), one_plus(&[(Var::U, 1), (Var::Q, i)])]
    }));
    let den = poly_product((1..=n).map(|i| one_minus(&[(Var::U, 2), (Var::Q, i + 1)])));
    Ok(Evidence::polys(&lhs, &num.div_exact(&den)?))
}

pub(crate) fn lhpdist(ctx: &Ctx) -> Result<Evidence> {
    let n = n_of(ctx)?;
    let lhs = over_sn(ctx, n, |st| {
        let e = exponent((n as i128 + 1) * st.maj as i128 - st.binv as i128, "(n+1) maj - binv")?;
        Ok(Monomial::pow(Var::Q, e))
    })?;
    let n = n as u32;
    let rhs = poly_product((1..=n).map(|i| q_int(i, Var::Q).substitute(|_| Monomial::pow(Var::Q, 2 * (n - i) + 1))));
    Ok(Evidence::polys(&lhs, &rhs))
}

pub(crate) fn majsqin(ctx: &Ctx) -> Result<Evidence> {
    let n = n_of(ctx)?;
    let lhs = over_sn(ctx, n, |st| Ok(mono(&[(Var::U, st.maj as u32), (Var::Q, st.sqin as u32)])))?;
    let rhs = poly_product((1..=n as u32).map(|i| q_int_at(i, &mono(&[(Var::U, 1), (Var::Q, i)]))));
    Ok(Evidence::polys(&lhs, &rhs))
}

pub(crate) fn johnson(ctx: &Ctx) -> Result<Evidence> {
    let n = n_of(ctx)?;
    let lhs = over_sn(ctx, n, |st| Ok(mono(&[(Var::U, st.maj as u32), (Var::Q, exponent(st.siz as i128, "siz")?)])))?;
    let n = n as u32;
    let rhs = poly_product((1..=n).map(|i| q_int_at(i, &mono(&[(Var::U, 1), (Var::Q, n + 1 - i)]))));
    Ok(Evidence::polys(&lhs, &rhs))
}

pub(crate) fn qcor(ctx: &Ctx) -> Result<Evidence> {
    let n = n_of(ctx)?;
    let lhs = over_sn(ctx, n, |st| Ok(Monomial::pow(Var::Q, exponent(st.lhp as i128, "lhp")?)))?;
    let n = n as u32;
    let rhs = poly_product((1..=n).map(|k| q_int_at(k, &Monomial::pow(Var::Q, 2 * (n - k) + 1))));
    Ok(Evidence::polys(&lhs, &rhs))
}

pub(crate) fn uqcor(ctx: &Ctx) -> Result<Evidence> {
    let n = n_of(ctx)?;
    let lhs =
        over_sn(ctx, n, |st| Ok(mono(&[(Var::Q, exponent(st.lhp as i128, "lhp")?), (Var::U, st.comaj as u32)])))?;
    let n = n as u32;
    let tail = |k: u32| (k..=n).sum::<u32>();
    let num = poly_product((1..=n).flat_map(|k| {
        [one_plus(&[(Var::U, 1), (Var::Q, k)]), one_minus(&[(Var::U, n + 1 - k), (Var::Q, tail(k))])]
    }));
    let den = poly_product((1..=n).map(|k| one_minus(&[(Var::U, 2), (Var::Q, n + k)])));
    Ok(Evidence::polys(&lhs, &num.div_exact(&den)?))
}

pub(crate) fn permsgf(ctx: &Ctx) -> Result<Evidence> {
    let n = n_of(ctx)?;
    let caps: Caps = ctx.caps_for(&[Var::Q, Var::U, Var::X, Var::Z])?;
    let weights = [(Stat::Weight, Var::Q), (Stat::CeilSum, Var::U), (Stat::LastCeil, Var::X), (Stat::EpsSum, Var::Z)];
    let lhs = weighted_gf(&range_seq(n)?, &caps, &weights)?;
    let num = over_sn(ctx, n, |st| {
        Ok(mono(&[
            (Var::X, st.des as u32),
            (Var::U, st.comaj as u32),
            (Var::Q, exponent(st.lhp as i128, "lhp")?),
            (Var::Z, st.inv as u32),
        ]))
    })?;
    let n = n as u32;
    let rhs = over(
        Series::new(num, caps),
        (0..n).map(|i| mono(&[(Var::X, 1), (Var::U, n - i), (Var::Q, (i + 1..=n).sum())])),
    )?;
    Ok(Evidence::series(&lhs, &rhs))
}
