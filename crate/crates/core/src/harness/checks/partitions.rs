use num_bigint::BigInt;

use super::{anti_seq, coefficients, mono, over, poly_product, product_inverse, q, range_seq, tally_members, times_one_plus};
use crate::algebra::{
    inverse_pochhammer, pochhammer, q_binomial, q_int, Caps, Monomial, PochLength, SignedMonomial, Tally, Var,
};
use crate::enumeration::{
    alt_ratio_gf, anti_at_counts, class_counts, count_last_at_most, enumerate_truncated, g_gf, members,
    multi_gf, truncated_ambient, weighted_gf, AltRatio, Bound, PartitionClass, Stat, TruncMode,
};
use crate::harness::evidence::Evidence;
use crate::harness::params::{require, Ctx};
use crate::sequences::{kl_terms, make_kl, SSeq};
use crate::{BigRational, Poly, Result, Series};

fn weight_series(s: &SSeq, caps: &Caps) -> Result<Series> {
    weighted_gf(s, caps, &[(Stat::Weight, Var::Q)])
}

fn counts_as_big(counts: &[u64]) -> Vec<BigInt> {
    counts.iter().map(|&c| BigInt::from(c)).collect()
}

fn n_at_least(ctx: &Ctx, key: &str, default: usize, min: usize) -> Result<usize> {
    let n = ctx.usize_or(key, default)?;
    require(n >= min, || format!("{key} must be at least {min}"))?;
    Ok(n)
}

pub(crate) fn lht(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 4)?;
    let caps = ctx.caps_for(&[Var::Q])?;
    let lhs = weight_series(&range_seq(n)?, &caps)?;
    let rhs = product_inverse(&caps, (1..=n as u32).map(|i| q(2 * i - 1)))?;
    let cap = ctx.cap(Var::Q)? as usize;
    let odd = class_counts(&PartitionClass::OddBelow(2 * n as u64), cap.saturating_sub(1) as u64);
    Ok(Evidence::series(&lhs, &rhs)
        .and("odd-part count", Evidence::lists("q", &coefficients(&lhs, Var::Q, cap), &counts_as_big(&odd))))
}

pub(crate) fn anti(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 4)?;
    let caps = ctx.caps_for(&[Var::Q])?;
    let lhs = weight_series(&anti_seq(n)?, &caps)?;
    let top = (1..=n as u32).map(q);
    let rhs = times_one_plus(product_inverse(&caps, (1..=n as u32).map(|i| q(i + 1)))?, top);
    Ok(Evidence::series(&lhs, &rhs))
}

/// `(-q;q)_inf / (q;q)_inf * (q, q^(t+1), q^(t+2); q^(t+2))_inf`.
pub(crate) fn chen(ctx: &Ctx) -> Result<Evidence> {
    let t = ctx.u64_or("t", 1)?;
    require(t >= 1, || "t must be positive".into())?;
    let caps = ctx.caps_for(&[Var::Q])?;
    let cap = ctx.cap(Var::Q)? as u64;
    let lhs = anti_at_counts(t, cap.saturating_sub(1))?;
    let base = q(t as u32 + 2);
    let inf = PochLength::Infinite;
    let mut rhs = pochhammer(&SignedMonomial::neg(q(1)), &q(1), inf, &caps)?
        .mul(&inverse_pochhammer(&q(1), &q(1), inf, &caps)?);
    for a in [q(1), q(t as u32 + 1), q(t as u32 + 2)] {
        rhs = rhs.mul(&pochhammer(&SignedMonomial::pos(a), &base, inf, &caps)?);
    }
    Ok(Evidence::lists("q", &counts_as_big(&lhs), &coefficients(&rhs, Var::Q, cap as usize)))
}

fn nk(ctx: &Ctx) -> Result<(u64, u64)> {
    let n = ctx.u64_or("n", 4)?;
    let k = ctx.u64_or("k", n.min(2))?;
    require(k >= 1 && k <= n, || format!("need 1 <= k <= n, got n = {n}, k = {k}"))?;
    Ok((n, k))
}

pub(crate) fn trunc(ctx: &Ctx) -> Result<Evidence> {
    let (n, k) = nk(ctx)?;
    let caps = ctx.caps_for(&[Var::Q])?;
    let cap = ctx.cap(Var::Q)? as usize;
    let lhs = weight_series(&truncated_ambient(n, k, TruncMode::AtMost)?, &caps)?;
    let rhs = class_counts(&PartitionClass::OddInterval { n, k }, cap.saturating_sub(1) as u64);
    Ok(Evidence::lists("q", &coefficients(&lhs, Var::Q, cap), &counts_as_big(&rhs)))
}

fn form(ctx: &Ctx) -> Result<TruncMode> {
    match ctx.str_or("form", "L")?.as_str() {
        "L" | "l" => Ok(TruncMode::Exactly),
        "A" | "a" => Ok(TruncMode::Anti),
        other => Err(crate::Error::InvalidParameter(format!("form must be L or A, got '{other}'"))),
    }
}

/// `(a; q)_k` for a single-variable `a = q^e`, as an exact polynomial.
fn finite_poch(sign_plus: bool, start: u32, k: u32) -> Poly {
    poly_product((0..k).map(|i| {
        let m = Monomial::pow(Var::Q, start + i);
        if sign_plus {
            Poly::one_plus(m)
        } else {
            Poly::one_minus(m)
        }
    }))
}

pub(crate) fn trunc_gf(ctx: &Ctx) -> Result<Evidence> {
    let (n, k) = nk(ctx)?;
    let mode = form(ctx)?;
    let caps = ctx.caps_for(&[Var::Q])?;
    let cap = ctx.cap(Var::Q)? as u64;
    let lhs: Tally =
        enumerate_truncated(n, k, mode, cap.saturating_sub(1))?.iter().map(|l| q(l.stats().weight as u32)).collect();
    let lhs = Series::new(lhs.into_poly(), caps.clone());
    let (n32, k32) = (n as u32, k as u32);
    let binom = q_binomial(n32, k32, Var::Q);
    let plus = finite_poch(true, n32 - k32 + 1, k32);
    let (shift, den_start) = match mode {
        TruncMode::Exactly => (k32 * (k32 + 1) / 2, 2 * n32 - k32 + 1),
        _ => (0, 2 * (n32 - k32 + 1)),
    };
    let numerator = Series::new((&binom * &plus).shift(&q(shift)), caps.clone());
    let rhs = over(numerator, (0..k32).map(|i| q(den_start + i)))?;
    Ok(Evidence::series(&lhs, &rhs))
}

pub(crate) fn kl(ctx: &Ctx) -> Result<Evidence> {
    let k = ctx.u64_or("k", 2)?;
    let l = ctx.u64_or("l", 2)?;
    let n = ctx.usize_or("n", 3)?;
    require(k * l >= 4, || format!("the (k, l) theorem needs k*l >= 4, got ({k}, {l})"))?;
    let caps = ctx.caps_for(&[Var::X, Var::Y])?;
    let lhs = g_gf(k, l, n, &caps)?;
    let (a, b) = if n % 2 == 0 { (kl_terms(k, l, n), kl_terms(l, k, n)) } else { (kl_terms(l, k, n), kl_terms(k, l, n)) };
    make_kl(k, l, n)?;
    make_kl(l, k, n)?;
    let rhs = product_inverse(&caps, (1..=n).map(|i| mono(&[(Var::X, a[i] as u32), (Var::Y, b[i - 1] as u32)])))?;
    Ok(Evidence::series(&lhs, &rhs))
}

pub(crate) fn ell_lh(ctx: &Ctx) -> Result<Evidence> {
    let l = ctx.u64_or("l", 3)?;
    let n = ctx.usize_or("n", 4)?;
    require(l >= 2, || "l must be at least 2".into())?;
    let caps = ctx.caps_for(&[Var::Q])?;
    let s = make_kl(l, l, n)?;
    let lhs = weight_series(&s, &caps)?;
    let a = kl_terms(l, l, n);
    let rhs = product_inverse(&caps, (1..=n).map(|i| q((a[i] + a[i - 1]) as u32)))?;
    Ok(Evidence::series(&lhs, &rhs))
}

pub(crate) fn ell_euler(ctx: &Ctx) -> Result<Evidence> {
    let l = ctx.u64_or("l", 3)?;
    let max = ctx.u64_or("N", 30)?;
    require(l >= 2, || "l must be at least 2".into())?;
    let parts = crate::bijections::theta_parts(l, max.max(1))?;
    let lhs = class_counts(&PartitionClass::PartsFrom(parts), max);
    let rhs = class_counts(&PartitionClass::RatioGtC(l), max);
    Ok(Evidence::lists("q", &lhs, &rhs))
}

pub(crate) fn gf_alt(kind: AltRatio, ctx: &Ctx) -> Result<Evidence> {
    let caps = ctx.caps_for(&[Var::X, Var::Y])?;
    let lhs = alt_ratio_gf(kind, &caps)?;
    let m = |a: u32, b: u32| mono(&[(Var::X, a), (Var::Y, b)]);
    let inf = PochLength::Infinite;
    let factors = match kind {
        AltRatio::TwoOne => [(m(1, 0), m(2, 1)), (m(4, 1), m(4, 2))],
        AltRatio::OneTwo => [(m(1, 0), m(2, 4)), (m(1, 1), m(1, 2))],
    };
    let mut rhs = Series::one(caps.clone());
    for (a, base) in &factors {
        rhs = rhs.mul(&inverse_pochhammer(a, base, inf, &caps)?);
    }
    Ok(Evidence::series(&lhs, &rhs))
}

pub(crate) fn gf_14(ctx: &Ctx) -> Result<Evidence> {
    gf_alt(AltRatio::TwoOne, ctx)
}

pub(crate) fn gf_41(ctx: &Ctx) -> Result<Evidence> {
    gf_alt(AltRatio::OneTwo, ctx)
}

/// Both sum-product identities; `which` selects the first or second.
pub(crate) fn css(ctx: &Ctx) -> Result<Evidence> {
    let which = ctx.u64_or("which", 1)?;
    require(which == 1 || which == 2, || "which must be 1 or 2".into())?;
    let caps = ctx.caps_for(&[Var::Q])?;
    let cap = ctx.cap(Var::Q)?;
    let fin = PochLength::Finite;
    let mut lhs = Series::zero(caps.clone());
    for j in 0u32.. {
        let (lead, a, den_len) =
            if which == 1 { (j * (3 * j).saturating_sub(1) / 2, 2, 3 * j) } else { (j * (3 * j + 1) / 2, 4, 3 * j + 1) };
        if lead >= cap {
            break;
        }
        let term = pochhammer(&SignedMonomial::pos(q(a)), &q(6), fin(j), &caps)?
            .mul(&inverse_pochhammer(&q(1), &q(1), fin(den_len), &caps)?)
            .shift(&q(lead));
        lhs = lhs.add(&term);
    }
    let inf = PochLength::Infinite;
    let (a, b) = if which == 1 { (q(1), q(5)) } else { (q(2), q(1)) };
    let rhs = inverse_pochhammer(&a, &q(3), inf, &caps)?.mul(&inverse_pochhammer(&b, &q(6), inf, &caps)?);
    Ok(Evidence::series(&lhs, &rhs))
}

fn mod8(ctx: &Ctx, class: PartitionClass, allowed: Vec<u64>) -> Result<Evidence> {
    let max = ctx.u64_or("N", 30)?;
    let lhs = class_counts(&class, max);
    let rhs = class_counts(&PartitionClass::ModClass { modulus: 8, allowed }, max);
    Ok(Evidence::lists("q", &lhs, &rhs))
}

pub(crate) fn new14(ctx: &Ctx) -> Result<Evidence> {
    mod8(ctx, PartitionClass::DistinctEvenAtEvenIndex, vec![1, 5, 6])
}

pub(crate) fn new41(ctx: &Ctx) -> Result<Evidence> {
    mod8(ctx, PartitionClass::DistinctEvenAtOddIndex, vec![2, 3, 7])
}

pub(crate) fn gollnitz14(ctx: &Ctx) -> Result<Evidence> {
    mod8(ctx, PartitionClass::Gollnitz { no_ones: false }, vec![1, 5, 6])
}

pub(crate) fn gollnitz41(ctx: &Ctx) -> Result<Evidence> {
    mod8(ctx, PartitionClass::Gollnitz { no_ones: true }, vec![2, 3, 7])
}

/// `prod (1 + u v q^i) / (1 - u^2 q^(shift + i))`.
fn refined_product(n: u32, shift: u32, caps: &Caps) -> Result<Series> {
    let den = (1..=n).map(|i| mono(&[(Var::U, 2), (Var::Q, shift + i)]));
    let num = (1..=n).map(|i| mono(&[(Var::U, 1), (Var::V, 1), (Var::Q, i)]));
    Ok(times_one_plus(product_inverse(caps, den)?, num))
}

pub(crate) fn refined_l(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 4)?;
    let caps = ctx.caps_for(&[Var::Q, Var::U, Var::V])?;
    let lhs = multi_gf(&range_seq(n)?, &caps, &[Var::Q, Var::U, Var::V])?;
    Ok(Evidence::series(&lhs, &refined_product(n as u32, n as u32, &caps)?))
}

pub(crate) fn refined_a(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 4)?;
    let caps = ctx.caps_for(&[Var::Q, Var::U, Var::V])?;
    let weights = [(Stat::Weight, Var::Q), (Stat::FloorSum, Var::U), (Stat::FloorOdd, Var::V)];
    let lhs = weighted_gf(&anti_seq(n)?, &caps, &weights)?;
    Ok(Evidence::series(&lhs, &refined_product(n as u32, 1, &caps)?))
}

pub(crate) fn refined_trunc(ctx: &Ctx) -> Result<Evidence> {
    let (n, k) = nk(ctx)?;
    let mode = form(ctx)?;
    let caps = ctx.caps_for(&[Var::Q, Var::U, Var::V])?;
    let cap = ctx.cap(Var::Q)? as u64;
    let mut tally = Tally::new();
    for lam in enumerate_truncated(n, k, mode, cap.saturating_sub(1))? {
        let st = lam.stats();
        let (u, v) = if mode == TruncMode::Exactly { (st.ceil_sum, st.ceil_odd) } else { (st.floor_sum, st.floor_odd) };
        let m = mono(&[(Var::Q, st.weight as u32), (Var::U, u as u32), (Var::V, v as u32)]);
        if caps.allows(&m) {
            tally.add(m);
        }
    }
    let lhs = Series::new(tally.into_poly(), caps.clone());
    let (n, k) = (n as u32, k as u32);
    let binom = q_binomial(n, k, Var::Q);
    let rhs = if mode == TruncMode::Exactly {
        let factors = (0..k).map(|i| {
            Poly::from_terms([
                (mono(&[(Var::U, 1), (Var::V, 1)]), BigInt::from(1)),
                (mono(&[(Var::U, 2), (Var::Q, n - k + 1 + i)]), BigInt::from(1)),
            ])
        });
        let numerator = (&binom * &poly_product(factors)).shift(&q(k * (k + 1) / 2));
        over(Series::new(numerator, caps.clone()), (0..k).map(|i| mono(&[(Var::U, 2), (Var::Q, 2 * n - k + 1 + i)])))?
    } else {
        let numerator = times_one_plus(
            Series::new(binom, caps.clone()),
            (0..k).map(|i| mono(&[(Var::U, 1), (Var::V, 1), (Var::Q, n - k + 1 + i)])),
        );
        over(numerator, (0..k).map(|i| mono(&[(Var::U, 2), (Var::Q, 2 * (n - k + 1) + i)])))?
    };
    Ok(Evidence::series(&lhs, &rhs))
}

/// `L_n(q, u)` against `A_n(1/q, u q^(n+1))`: each anti-lecture hall term
/// `q^a u^b` becomes `q^((n+1) b - a) u^b`.
pub(crate) fn la_recip(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 4)?;
    let caps = ctx.caps_for(&[Var::Q, Var::U])?;
    let cap_u = ctx.cap(Var::U)? as u64;
    let lhs = weighted_gf(&range_seq(n)?, &caps, &[(Stat::Weight, Var::Q), (Stat::CeilSum, Var::U)])?;
    let s = anti_seq(n)?;
    let rhs = tally_members(&s, cap_u.saturating_sub(1), &caps, |parts| {
        let a: u64 = parts.iter().sum();
        let b: u64 = parts.iter().zip(s.values()).map(|(l, si)| l / si).sum();
        let e = super::exponent((n as i128 + 1) * b as i128 - a as i128, "(n+1) floor sum - weight")?;
        Ok(mono(&[(Var::Q, e), (Var::U, b as u32)]))
    })?;
    Ok(Evidence::series(&lhs, &rhs))
}

fn nti(ctx: &Ctx) -> Result<(usize, u64, u64)> {
    let n = n_at_least(ctx, "n", 3, 1)?;
    let t = ctx.u64_or("t", 1)?;
    let i = ctx.u64_or("i", 0)?;
    require(i < n as u64, || format!("need 0 <= i < n, got i = {i}"))?;
    Ok((n, t, i))
}

pub(crate) fn boxed(ctx: &Ctx) -> Result<Evidence> {
    let (n, t, i) = nti(ctx)?;
    let lhs = count_last_at_most(&range_seq(n)?, t * n as u64 + i);
    let rhs = (t as u128 + 1).pow(n as u32 - i as u32) * (t as u128 + 2).pow(i as u32);
    Ok(Evidence::equal(lhs, rhs))
}

pub(crate) fn qbox(ctx: &Ctx) -> Result<Evidence> {
    let (n, t, i) = nti(ctx)?;
    let s = range_seq(n)?;
    let lhs: Tally = members(&s, Bound::last(t * n as u64 + i))?
        .iter()
        .map(|p| Monomial::pow(Var::U, p.iter().zip(s.values()).map(|(l, si)| l.div_ceil(*si)).sum::<u64>() as u32))
        .collect();
    let rhs = poly_product(
        std::iter::repeat_n(q_int(t as u32 + 1, Var::U), n - i as usize)
            .chain(std::iter::repeat_n(q_int(t as u32 + 2, Var::U), i as usize)),
    );
    Ok(Evidence::polys(&lhs.into_poly(), &rhs))
}

pub(crate) fn reverse(ctx: &Ctx) -> Result<Evidence> {
    let s = ctx.seq_or("s", &[2, 3, 5])?;
    let t = ctx.u64_or("t", 2)?;
    require(!s.is_empty(), || "s must be nonempty".into())?;
    let v = s.values();
    let lhs = count_last_at_most(&s, t * v[v.len() - 1]);
    let rhs = count_last_at_most(&s.reversed(), t * v[0]);
    Ok(Evidence::equal(lhs, rhs))
}

fn poch_at(a: &BigRational, q: &BigRational, n: usize) -> BigRational {
    let one = BigRational::from_integer(BigInt::from(1));
    let mut acc = one.clone();
    let mut qi = one.clone();
    for _ in 0..n {
        acc *= &one - a * &qi;
        qi *= q;
    }
    acc
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Both q-Chu-Vandermonde sums, evaluated exactly at rational `a`, `c`, `q`.
pub(crate) fn qchu(ctx: &Ctx) -> Result<Evidence> {
    let n = ctx.usize_or("n", 3)?;
    let which = ctx.u64_or("which", 1)?;
    require(which == 1 || which == 2, || "which must be 1 or 2".into())?;
    let parse = |key: &str, default: &str| -> Result<BigRational> {
        let text = ctx.str_or(key, default)?;
        let (p, d) = text.split_once('/').unwrap_or((text.as_str(), "1"));
        match (p.trim().parse::<i64>(), d.trim().parse::<i64>()) {
            (Ok(p), Ok(d)) if d != 0 => Ok(rational(p, d)),
            _ => Err(crate::Error::InvalidParameter(format!("{key} must be a rational like 2/5, got '{text}'"))),
        }
    };
    let (a, c, qv) = (parse("a", "2/5")?, parse("c", "7/11")?, parse("q", "1/3")?);
    require(qv != rational(0, 1), || "q must be nonzero".into())?;
    let one = rational(1, 1);
    let ca = &c / &a;
    let qpow = |e: i64| -> BigRational {
        if e >= 0 {
            num_traits::Pow::pow(&qv, e as u32)
        } else {
            num_traits::Pow::pow(&(&one / &qv), (-e) as u32)
        }
    };
    let (lhs, rhs) = if which == 1 {
        let lhs = num_traits::Pow::pow(&a, n as u32) * poch_at(&ca, &qv, n) / poch_at(&c, &qv, n);
        let qn = qpow(-(n as i64));
        let rhs = (0..=n).fold(rational(0, 1), |acc, m| {
            acc + poch_at(&a, &qv, m) * poch_at(&qn, &qv, m) / (poch_at(&c, &qv, m) * poch_at(&qv, &qv, m)) * qpow(m as i64)
        });
        (lhs, rhs)
    } else {
        let lhs = poch_at(&ca, &qv, n) / poch_at(&c, &qv, n);
        let rhs = (0..=n).fold(rational(0, 1), |acc, m| {
            let binom = poch_at(&qv, &qv, n) / (poch_at(&qv, &qv, m) * poch_at(&qv, &qv, n - m));
            let sign = num_traits::Pow::pow(&(-&c / &a), m as u32);
            acc + binom * poch_at(&a, &qv, m) / poch_at(&c, &qv, m) * sign * qpow((m * m.saturating_sub(1) / 2) as i64)
        });
        (lhs, rhs)
    };
    let equal = lhs == rhs;
    Ok(Evidence::values(lhs, rhs, equal))
}
