use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::checks::{eulerian as eu, geometry as geo, partitions as pa, permutations as pe};
use super::evidence::Evidence;
use super::params::Ctx;
use super::TheoremCase;
use crate::Result;

/// Seed for the randomized parts of the default suite.
pub const DEFAULT_SEED: u64 = 1;

/// A registered identity: how each side is computed and the caps it runs
/// under unless a case overrides them.
pub struct Entry {
    pub id: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub default_caps: &'static str,
    /// Whether the full statement is infinite and only checked up to a bound.
    pub finite: bool,
    pub(crate) check: fn(&Ctx) -> Result<Evidence>,
}

impl std::fmt::Debug for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Entry").field("id", &self.id).field("default_caps", &self.default_caps).finish()
    }
}

const fn entry(
    id: &'static str,
    lhs: &'static str,
    rhs: &'static str,
    default_caps: &'static str,
    check: fn(&Ctx) -> Result<Evidence>,
) -> Entry {
    Entry { id, lhs, rhs, default_caps, finite: false, check }
}

const fn finite(
    id: &'static str,
    lhs: &'static str,
    rhs: &'static str,
    default_caps: &'static str,
    check: fn(&Ctx) -> Result<Evidence>,
) -> Entry {
    Entry { id, lhs, rhs, default_caps, finite: true, check }
}

static ENTRIES: &[Entry] = &[
    entry("ANTI", "anti-lecture hall weights", "prod (1+q^i)/(1-q^(i+1))", "q=30", pa::anti),
    entry("AS_COINCIDE", "nonzero coefficients of Q_n/[s_n]", "nonzero coefficients of Q_(n-1)", "", eu::as_coincide),
    finite("BME", "G-partition counts by weight", "BME image counts by weight", "", geo::bme),
    entry("BN", "des_B over signed permutations", "E_n for s = (2,4,...,2n)", "", eu::bn),
    entry("BOX", "lecture hall partitions with l_n <= tn+i", "(t+1)^(n-i) (t+2)^i", "", pa::boxed),
    entry("BSANTI", "anti-lecture hall by weight and floor sum", "sum q^binv u^maj / prod (1-u^i q^(i(i+1)/2))", "q=25,u=12", pe::bsanti),
    entry("CHEN", "anti-lecture hall partitions with l_1 <= t", "product of Pochhammer symbols", "q=30", pa::chen),
    entry("CHUNG_GRAHAM", "sum over S_n of x^(n des + pi_n) / [n]", "x sum over S_(n-1) of x^(n des + pi_(n-1))", "", eu::chung_graham),
    entry("CSS", "basic hypergeometric sum", "infinite product", "q=41", pa::css),
    entry("EHRHART_HSTAR", "h* of the lecture hall polytope", "ascent polynomial E_n", "", eu::ehrhart_hstar),
    entry("ELL_EULER", "partitions into theta parts", "partitions with ratios above c_l", "", pa::ell_euler),
    entry("ELL_LH", "l-lecture hall weights", "prod 1/(1-q^(a_i+a_(i-1)))", "q=30", pa::ell_lh),
    entry("FULLSS", "lecture hall series in q, x, u, z", "inversion-sequence statistics over prod (1 - x u^(n-i) q^(...))", "q=20,u=10,x=8,z=10", eu::fullss),
    entry("GF_14", "alternating ratio partitions (2,1)", "(x;x^2 y)(x^4 y;x^4 y^2)", "x=21,y=21", pa::gf_14),
    entry("GF_41", "alternating ratio partitions (1,2)", "(x;x^2 y^4)(x y;x y^2)", "x=21,y=21", pa::gf_41),
    finite("GOLLNITZ14", "Gollnitz partitions", "parts congruent to 1, 5, 6 mod 8", "", pa::gollnitz14),
    finite("GOLLNITZ41", "Gollnitz partitions without ones", "parts congruent to 2, 3, 7 mod 8", "", pa::gollnitz41),
    entry("GOR_EQUIV", "arithmetic Gorenstein condition", "parallelepiped symmetry and palindromic quotient", "", geo::gor_equiv),
    entry("HT_FULL", "lecture hall series in q, x = l_n, u, z", "inflated statistics over prod (1 - x^(s_n) u^(n-i) q^(...))", "q=20,u=10,x=8,z=10", eu::ht_full),
    entry("HT_GF", "lecture hall heights l_n", "Q_n / (1-x^(s_n))^n", "x=15", eu::ht_gf),
    entry("INVSEQ", "lecture hall ceil(l_n/s_n)", "E_n / (1-x)^n", "x=8", eu::invseq),
    entry("JOHNSON", "sum over S_n of u^maj q^siz", "prod [i]_(u q^(n+1-i))", "", pe::johnson),
    entry("KL", "(k,l)-partitions by alternating sums", "prod 1/(1 - x^(A_i) y^(B_(i-1)))", "x=15,y=15", pa::kl),
    entry("LA_RECIP", "L_n(q, u)", "A_n(1/q, u q^(n+1))", "q=20,u=8", pa::la_recip),
    entry("LHPDIST", "sum over S_n of q^((n+1) maj - binv)", "prod [i]_(q^(2(n-i)+1))", "", pe::lhpdist),
    entry("LHP_HT", "lecture hall heights l_n for s = (1..n)", "box counts and descent-last sum", "", eu::lhp_ht),
    entry("LHT", "lecture hall weights", "prod 1/(1-q^(2i-1))", "q=30", pa::lht),
    entry("LPTGF", "lecture hall cone lattice points", "parallelepiped numerator over prod (1-z^(v_i))", "", geo::lptgf),
    entry("MACMAHON", "sum_t [t+1]_u^n x^t", "sum x^des u^maj / prod (1-x u^i)", "", pe::macmahon),
    entry("MAJBINV", "sum over S_n of u^maj q^binv", "product with exact division", "", pe::majbinv),
    entry("MAJSQIN", "sum over S_n of u^maj q^sqin", "prod [i]_(u q^i)", "", pe::majsqin),
    entry("MULTI1", "E_n for s = (1,1,3,2,...)", "descents over words in 1,1,2,2,...,n,n", "", eu::multi1),
    finite("NEW14", "distinct partitions with even parts at even indices", "parts congruent to 1, 5, 6 mod 8", "", pa::new14),
    finite("NEW41", "distinct partitions with even parts at odd indices", "parts congruent to 2, 3, 7 mod 8", "", pa::new41),
    entry("ONE_K", "E_n for s = (1, k+1, 2k+1, ...)", "sum over S_n of x^exc k^(n-cyc)", "", eu::one_k),
    finite("ONLY_ELL_FINITE", "Gorenstein pattern of the recurrence", "expected pattern", "", geo::only_ell_finite),
    entry("PERMSGF", "lecture hall series in q, u, x, z for s = (1..n)", "permutation statistics over a product", "q=20,u=10,x=8,z=10", pe::permsgf),
    entry("PERMSTATS", "lecture hall ceil(l_n/n) and ceil sum", "sum x^des u^maj / prod (1-x u^i)", "x=8,u=12", pe::permstats),
    entry("PI_IDENTITIES", "parallelepiped points by search", "minimal bars construction and its gradings", "", geo::pi_identities),
    entry("QBOX", "ceil sums in the box", "prod [t+1]_u^(n-i) [t+2]_u^i", "", pa::qbox),
    entry("QCHU", "q-Chu-Vandermonde left side", "terminating sum", "", pa::qchu),
    entry("QCOR", "sum over S_n of q^lhp", "prod [k]_(q^(2(n-k)+1))", "", pe::qcor),
    entry("QDIVIDED", "Q_n / [s_n]", "sum over the primed parallelepiped", "", eu::qdivided),
    entry("REALROOT", "distinct real roots", "square-free degree", "", eu::realroot),
    entry("REFINED_A", "anti-lecture hall in q, u, v", "prod (1+u v q^i)/(1-u^2 q^(i+1))", "q=25,u=12,v=5", pa::refined_a),
    entry("REFINED_L", "lecture hall in q, u, v", "prod (1+u v q^i)/(1-u^2 q^(n+i))", "q=25,u=12,v=5", pa::refined_l),
    entry("REFINED_TRUNC", "truncated partitions in q, u, v", "refined product form", "q=20,u=12,v=5", pa::refined_trunc),
    entry("REVERSE", "lecture hall count for s up to t s_n", "count for reversed s up to t s_1", "", pa::reverse),
    entry("REV_E", "E_n of s", "h* of the reversed polytope", "", eu::rev_e),
    entry("SIGNED_MULTI", "E_n for s = (1,4,3,8,...)", "descents of signed multiset permutations", "", eu::signed_multi),
    finite("THETA", "theta images by weight", "partitions with ratios above c_l", "", geo::theta),
    entry("TRUNC", "truncated lecture hall weights", "partitions into odd parts in an interval", "q=20", pa::trunc),
    entry("TRUNC_GF", "truncated lecture hall weights", "q-binomial product form", "q=20", pa::trunc_gf),
    entry("TYPED_FACTOR", "des_D over all signed permutations", "2 des_D over D_n", "", eu::typed_factor),
    entry("UQCOR", "sum over S_n of q^lhp u^comaj", "product with exact division", "", pe::uqcor),
    entry("WREATH", "descents over the wreath product", "E_n for s = (k, 2k, ..., nk)", "", eu::wreath),
];

pub fn entries() -> &'static [Entry] {
    ENTRIES
}

pub fn lookup(id: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.id == id)
}

const TABLE_ROWS: &[&[u64]] = &[
    &[1, 2, 3, 4, 5, 6],
    &[6, 5, 4, 3, 2, 1],
    &[2, 4, 6, 8, 10],
    &[1, 3, 5, 7, 9, 11],
    &[1, 4, 3, 8, 5, 12],
    &[1, 1, 3, 2, 5, 3],
    &[7, 2, 3, 5, 4, 6],
];

fn case(id: &str, params: &[(&str, Value)]) -> TheoremCase {
    params.iter().fold(TheoremCase::new(id), |c, (k, v)| c.with(k, v.clone()))
}

fn seq_value(s: &[u64]) -> Value {
    Value::from(s.to_vec())
}

fn random_seq(rng: &mut ChaCha8Rng, max_n: usize, max_term: u64, max_product: u64) -> Vec<u64> {
    loop {
        let n = rng.gen_range(1..=max_n);
        let s: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_term)).collect();
        if s.iter().product::<u64>() <= max_product {
            return s;
        }
    }
}

fn random_cases(rng: &mut ChaCha8Rng, id: &str, count: usize, max_n: usize, max_term: u64, max_product: u64) -> Vec<TheoremCase> {
    (0..count).map(|_| case(id, &[("s", seq_value(&random_seq(rng, max_n, max_term, max_product)))])).collect()
}

/// The default suite. Sampled sequences depend only on `seed`.
pub fn default_cases(seed: u64) -> Vec<TheoremCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let v = |x: u64| Value::from(x);
    let vi = |x: i64| Value::from(x);
    let s = |x: &str| Value::from(x);

    for n in 1..=6 {
        out.push(case("LHT", &[("n", v(n))]));
        out.push(case("LHP_HT", &[("n", v(n))]));
        for id in ["MAJBINV", "LHPDIST", "MAJSQIN", "JOHNSON", "QCOR", "UQCOR", "PERMSTATS"] {
            out.push(case(id, &[("n", v(n))]));
        }
        for k in 1..=3 {
            out.push(case("ONE_K", &[("n", v(n)), ("k", v(k))]));
        }
        for k in 1..=n {
            out.push(case("TRUNC", &[("n", v(n)), ("k", v(k))]));
        }
        if n >= 2 {
            out.push(case("CHUNG_GRAHAM", &[("n", v(n))]));
        }
    }
    for n in 1..=5 {
        for id in ["ANTI", "REFINED_L", "REFINED_A", "BSANTI", "MACMAHON", "PERMSGF", "BN"] {
            out.push(case(id, &[("n", v(n))]));
        }
        for t in 0..=3 {
            for i in 0..n {
                out.push(case("BOX", &[("n", v(n)), ("t", v(t)), ("i", v(i))]));
                out.push(case("QBOX", &[("n", v(n)), ("t", v(t)), ("i", v(i))]));
            }
        }
        for k in 1..=n {
            for form in ["L", "A"] {
                out.push(case("TRUNC_GF", &[("n", v(n)), ("k", v(k)), ("form", s(form))]));
                if n <= 4 {
                    out.push(case("REFINED_TRUNC", &[("n", v(n)), ("k", v(k)), ("form", s(form))]));
                }
            }
        }
        for l in 2..=4 {
            out.push(case("ELL_LH", &[("l", v(l)), ("n", v(n))]));
        }
        if n >= 2 {
            out.push(case("TYPED_FACTOR", &[("n", v(n))]));
            out.push(case("REALROOT", &[("group", s("D")), ("n", v(n))]));
        }
    }
    for n in 1..=4 {
        out.push(case("LA_RECIP", &[("n", v(n))]));
        out.push(case("MULTI1", &[("n", v(n))]));
        for k in 1..=3 {
            out.push(case("WREATH", &[("n", v(n)), ("k", v(k))]));
        }
        for (k, l) in [(2, 2), (1, 4), (4, 1), (2, 3), (3, 2), (3, 3)] {
            out.push(case("KL", &[("k", v(k)), ("l", v(l)), ("n", v(n))]));
        }
        for (k, l) in [(2, 2), (1, 4), (4, 1)] {
            out.push(case("BME", &[("k", v(k)), ("l", v(l)), ("n", v(n)), ("N", v(15))]));
        }
    }
    for n in 1..=3 {
        out.push(case("SIGNED_MULTI", &[("n", v(n))]));
    }
    for t in 1..=3 {
        out.push(case("CHEN", &[("t", v(t))]));
    }
    for l in 2..=4 {
        out.push(case("ELL_EULER", &[("l", v(l)), ("N", v(30))]));
        out.push(case("THETA", &[("l", v(l)), ("N", v(20))]));
    }
    for id in ["GF_14", "GF_41", "NEW14", "NEW41", "GOLLNITZ14", "GOLLNITZ41"] {
        out.push(case(id, &[]));
    }
    for which in 1..=2 {
        out.push(case("CSS", &[("which", v(which))]));
        for n in 0..=5 {
            out.push(case("QCHU", &[("n", v(n)), ("which", v(which))]));
        }
    }
    for (l, m) in [(2, 1), (3, 1), (3, 2), (2, -1), (3, -1), (4, -1), (5, -1)] {
        out.push(case("ONLY_ELL_FINITE", &[("l", v(l)), ("m", vi(m)), ("N", v(10))]));
    }
    for sq in [&[2u64, 3][..], &[1, 2, 3], &[3, 1, 2], &[2, 2], &[1, 3, 2]] {
        out.push(case("LPTGF", &[("s", seq_value(sq))]));
    }
    for (sq, t) in [(&[2u64, 3, 5][..], 1u64), (&[2, 3, 5], 2), (&[1, 2, 3, 4], 2), (&[3, 1, 4], 3), (&[2, 5], 3)] {
        out.push(case("REVERSE", &[("s", seq_value(sq)), ("t", v(t))]));
    }
    for row in TABLE_ROWS {
        out.push(case("REALROOT", &[("s", seq_value(row))]));
        out.push(case("REV_E", &[("s", seq_value(row))]));
    }

    out.extend(random_cases(&mut rng, "INVSEQ", 30, 4, 5, u64::MAX));
    out.extend(random_cases(&mut rng, "FULLSS", 30, 4, 5, u64::MAX));
    out.extend(random_cases(&mut rng, "HT_FULL", 10, 4, 5, u64::MAX));
    out.extend(random_cases(&mut rng, "REALROOT", 200, 6, 8, u64::MAX));
    out.extend(random_cases(&mut rng, "REV_E", 20, 4, 5, u64::MAX));
    out.extend(random_cases(&mut rng, "EHRHART_HSTAR", 20, 4, 5, u64::MAX));
    out.extend(random_cases(&mut rng, "HT_GF", 20, 4, 5, u64::MAX));
    out.extend(random_cases(&mut rng, "QDIVIDED", 20, 5, 6, 100_000));
    out.extend(random_cases(&mut rng, "PI_IDENTITIES", 20, 4, 5, u64::MAX));
    out.extend(random_cases(&mut rng, "GOR_EQUIV", 100, 6, 12, 100_000));
    for _ in 0..20 {
        let mut sq = random_seq(&mut rng, 5, 6, 100_000);
        sq.sort_unstable();
        if sq.len() < 2 {
            sq.push(sq[0]);
        }
        out.push(case("AS_COINCIDE", &[("s", seq_value(&sq))]));
    }
    out.push(case("AS_COINCIDE", &[("s", seq_value(&[1, 2, 3, 4, 5, 6]))]));
    out.push(case("PI_IDENTITIES", &[("s", seq_value(&[2, 3]))]));

    let named: &[(&[u64], bool)] = &[
        (&[3, 5], true),
        (&[5, 2], false),
        (&[1, 1, 2, 3], true),
        (&[1, 1, 2, 3, 5], false),
        (&[1, 1, 2, 3, 5, 8], false),
        (&[1, 2, 3, 4, 5, 6, 7, 8], true),
        (&[1, 3, 8, 21, 55], true),
        (&[1, 4, 15, 56, 209], true),
        (&[1, 5, 24, 115], true),
    ];
    for (sq, expect) in named {
        out.push(case("GOR_EQUIV", &[("s", seq_value(sq)), ("expect", s(if *expect { "true" } else { "false" }))]));
    }
    out
}
