//! One line per acceptance criterion. Run with
//! `cargo test -p lecture-hall --test acceptance -- --nocapture`.

use std::collections::BTreeSet;

use lecture_hall::algebra::{Caps, Monomial, Tally, Var};
use lecture_hall::bijections::{
    bme, bme_bijectivity_check, gamma, theta, theta_bijectivity_check, theta_parts, PartMultiplicity,
};
use lecture_hall::enumeration::{partitions_in, weighted_gf, GPartition, PartitionClass, Stat};
use lecture_hall::eulerian::{is_real_rooted, s_eulerian};
use lecture_hall::geometry::{gorenstein_check, lattice_gf, pi_points};
use lecture_hall::harness::{default_cases, run_suite, verify, RunOptions, Status, TheoremCase, DEFAULT_SEED};
use lecture_hall::sequences::{make_family, Family, SSeq};
use lecture_hall::{Poly, Series};

type Outcome = Result<String, String>;

fn options() -> RunOptions {
    RunOptions::default()
}

fn seq(v: &[u64]) -> SSeq {
    SSeq::explicit(v.to_vec()).unwrap()
}

fn caps(text: &str) -> Caps {
    text.parse().unwrap()
}

/// Verifies every case, failing on the first report that is not a pass.
fn all_pass(cases: impl IntoIterator<Item = TheoremCase>) -> Outcome {
    let mut count = 0;
    for case in cases {
        let r = verify(&case, options()).map_err(|e| format!("{} {:?}: {e}", case.id, case.params))?;
        if r.status != Status::Pass {
            return Err(format!("{} {:?} is {:?}: {:?} {:?}", r.id, r.params, r.status, r.first_mismatch, r.notes));
        }
        count += 1;
    }
    Ok(format!("{count} cases"))
}

fn defaults(ids: &[&str]) -> Vec<TheoremCase> {
    default_cases(DEFAULT_SEED).into_iter().filter(|c| ids.contains(&c.id.as_str())).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lht() -> Outcome {
    all_pass((1..=6u64).map(|n| TheoremCase::new("LHT").with("n", n).with_caps(caps("q=31"))))
}

fn anti_refined() -> Outcome {
    let anti = (1..=5u64).map(|n| TheoremCase::new("ANTI").with("n", n).with_caps(caps("q=25")));
    let refined = (1..=5u64).map(|n| TheoremCase::new("REFINED_A").with("n", n).with_caps(caps("q=25,u=12,v=5")));
    all_pass(anti.chain(refined))
}

fn poly_x(coeffs: &[i64]) -> Poly {
    Poly::from_univariate(Var::X, &coeffs.iter().map(|&c| c.into()).collect::<Vec<_>>())
}

fn table_one() -> Outcome {
    let rows: [(&[u64], &[i64], u64); 7] = [
        (&[1, 2, 3, 4, 5, 6], &[1, 57, 302, 302, 57, 1], 720),
        (&[6, 5, 4, 3, 2, 1], &[1, 57, 302, 302, 57, 1], 720),
        (&[2, 4, 6, 8, 10], &[1, 237, 1682, 1682, 237, 1], 3840),
        (&[1, 3, 5, 7, 9, 11], &[1, 358, 3580, 5168, 1328, 32], 10395),
        (&[1, 4, 3, 8, 5, 12], &[1, 209, 1884, 2828, 811, 27], 11520),
        (&[1, 1, 3, 2, 5, 3], &[1, 20, 48, 20, 1], 90),
        (&[7, 2, 3, 5, 4, 6], &[1, 71, 948, 2450, 1411, 159], 5040),
    ];
    let mut problems = Vec::new();
    let mut polys = Vec::new();
    for (label, (s, coeffs, sum)) in ["i", "ii", "iii", "iv", "v", "vi", "vii"].iter().zip(rows) {
        let e = s_eulerian(&seq(s)).map_err(|e| e.to_string())?;
        let expected = poly_x(coeffs);
        if e != expected {
            problems.push(format!("row ({label}) computed {e}, table {expected}"));
        }
        let total = e.coeff_sum();
        if total != sum.into() {
            problems.push(format!("row ({label}) sums to {total}, listed {sum}"));
        }
        polys.push(e);
    }
    if polys[0] != polys[1] {
        problems.push("rows (i) and (ii) differ".into());
    }
    if problems.is_empty() {
        Ok("7 rows".into())
    } else {
        Err(problems.join("; "))
    }
}

fn worked_cone() -> Outcome {
    let s = seq(&[2, 3]);
    let pi = pi_points(&s, 1_000).map_err(|e| e.to_string())?;
    let expected: Vec<Vec<u64>> = vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 2], vec![1, 3], vec![1, 4]];
    ensure(pi.points == expected, || format!("points {:?}", pi.points))?;
    let gf = lattice_gf(&s, 1_000).map_err(|e| e.to_string())?;
    let numerator: Tally = [(0, 0), (0, 1), (0, 2), (1, 2), (1, 3), (1, 4)]
        .iter()
        .map(|&(a, b)| Monomial::from_pairs([(Var::z(1), a), (Var::z(2), b)]))
        .collect();
    ensure(gf.numerator == numerator.into_poly(), || format!("numerator {}", gf.numerator))?;
    let c = caps("q=26");
    let lhs = weighted_gf(&s, &c, &[(Stat::Weight, Var::Q)]).map_err(|e| e.to_string())?;
    let q = |e| Monomial::pow(Var::Q, e);
    let rhs = Series::new(Poly::one_plus(q(3)), c.clone())
        .div_one_minus(&q(1))
        .and_then(|r| r.div_one_minus(&q(5)))
        .map_err(|e| e.to_string())?;
    ensure(lhs.first_mismatch(&rhs).is_none(), || format!("L_2 series {:?}", lhs.first_mismatch(&rhs)))?;
    let specialized = gf.specialize(|_| q(1)).expand(&c).map_err(|e| e.to_string())?;
    ensure(specialized.first_mismatch(&rhs).is_none(), || "specialized cone series differs".into())?;
    Ok("points, numerator and series to q^25".into())
}

fn bme_regression() -> Outcome {
    let g = |p: &[u64]| GPartition::new(p.to_vec(), 1, 4).unwrap();
    let chain: [(&[u64], u64, &[u64]); 4] =
        [(&[0], 4, &[4, 0]), (&[4, 0], 1, &[4, 4, 1]), (&[4, 4, 1], 1, &[12, 4, 5, 1]), (&[12, 4, 5, 1], 1, &[9, 12, 4, 5, 0])];
    for (lam, s, mu) in chain {
        let got = gamma(&g(lam), s).map_err(|e| e.to_string())?;
        ensure(got.parts() == mu, || format!("gamma({lam:?}, {s}) = {:?}", got.parts()))?;
    }
    let images: [(&[u64], &str); 5] = [
        (&[0], "1^0"),
        (&[4, 0], "5^0 1^4"),
        (&[4, 4, 1], "7^0 2^4 1^1"),
        (&[12, 4, 5, 1], "11^0 4^4 5^1 1^1"),
        (&[9, 12, 4, 5, 0], "13^0 5^4 7^1 2^1 1^1"),
    ];
    for (mu, text) in images {
        let got = bme(&g(mu)).map_err(|e| e.to_string())?.to_string();
        ensure(got == text, || format!("BME({mu:?}) = {got}"))?;
    }
    let mut checked = 0;
    for (k, l) in [(2, 2), (1, 4), (4, 1)] {
        for n in 1..=4 {
            let r = bme_bijectivity_check(k, l, n, 15).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("({k},{l}) n={n}: {r:?}"))?;
            checked += r.members;
        }
    }
    Ok(format!("chain, 5 images, {checked} partitions"))
}

fn theta_check() -> Outcome {
    for l in 2..=4 {
        let r = theta_bijectivity_check(l, 20).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("l={l}: {r:?}"))?;
    }
    let inputs = partitions_in(&PartitionClass::PartsFrom(theta_parts(2, 20).unwrap()), 20);
    let images: BTreeSet<Vec<u64>> = inputs
        .iter()
        .map(|mu| theta(&PartMultiplicity::from_parts(mu).unwrap(), 2).unwrap())
        .collect();
    let distinct: BTreeSet<Vec<u64>> = partitions_in(&PartitionClass::Distinct, 20).into_iter().collect();
    ensure(images == distinct, || "l=2 images are not the distinct partitions".into())?;
    Ok(format!("l = 2, 3, 4; {} distinct partitions", distinct.len()))
}

fn quadratic() -> Outcome {
    let ids = ["MAJBINV", "LHPDIST", "MAJSQIN", "JOHNSON", "QCOR", "UQCOR"];
    all_pass(ids.iter().flat_map(|id| (1..=6u64).map(move |n| TheoremCase::new(id).with("n", n))))
}

fn boxes() -> Outcome {
    let mut cases = Vec::new();
    for n in 1..=5u64 {
        for t in 0..=3u64 {
            for i in 0..n {
                for id in ["BOX", "QBOX"] {
                    cases.push(TheoremCase::new(id).with("n", n).with("t", t).with("i", i));
                }
            }
        }
    }
    all_pass(cases)
}

fn inversion_sequences() -> Outcome {
    let cases = defaults(&["INVSEQ", "FULLSS"]);
    ensure(cases.len() == 60, || format!("{} sampled cases", cases.len()))?;
    for c in &cases {
        let n = c.params["s"].as_array().map_or(0, Vec::len);
        ensure((1..=4).contains(&n), || format!("sample {:?}", c.params))?;
    }
    all_pass(cases.into_iter().map(|c| {
        let fixed = if c.id == "FULLSS" { "q=20,u=10,x=8,z=10" } else { "x=8" };
        c.with_caps(caps(fixed))
    }))
}

fn heights() -> Outcome {
    let mut cases = defaults(&["HT_GF", "QDIVIDED", "AS_COINCIDE"]);
    cases.extend((1..=6u64).map(|n| TheoremCase::new("LHP_HT").with("n", n)));
    cases.extend((2..=6u64).map(|n| TheoremCase::new("CHUNG_GRAHAM").with("n", n)));
    all_pass(cases)
}

fn real_roots() -> Outcome {
    let cases = defaults(&["REALROOT"]);
    let sampled = cases.iter().filter(|c| c.params.contains_key("s")).count();
    ensure(sampled >= 207, || format!("only {sampled} sequences"))?;
    for row in [&[1u64, 2, 3, 4, 5, 6][..], &[2, 4, 6, 8, 10], &[1, 3, 5, 7, 9, 11], &[1, 4, 3, 8, 5, 12]] {
        let p = s_eulerian(&seq(row)).unwrap();
        ensure(is_real_rooted(&p).unwrap(), || format!("{row:?} not real-rooted"))?;
    }
    let group_d = (2..=5u64).filter(|n| cases.iter().any(|c| c.params.get("n").and_then(|v| v.as_u64()) == Some(*n)));
    ensure(group_d.count() == 4, || "missing D_n cases".into())?;
    all_pass(cases)
}

fn gorenstein() -> Outcome {
    let cases = defaults(&["GOR_EQUIV"]);
    ensure(cases.len() >= 109, || format!("{} cases", cases.len()))?;
    let fib = [1u64, 1, 2, 3, 5, 8, 13, 21];
    for n in 1..=fib.len() {
        let ok = gorenstein_check(&seq(&fib[..n])).is_gorenstein();
        ensure(ok == (n < 5), || format!("Fibonacci prefix of length {n}: {ok}"))?;
    }
    for l in 2..=5 {
        for n in 1..=8 {
            let s = make_family(Family::Ell { l }, n).unwrap();
            ensure(gorenstein_check(&s).is_gorenstein(), || format!("l-sequence {s} fails"))?;
        }
    }
    all_pass(cases)
}

fn q_series() -> Outcome {
    let mut cases: Vec<TheoremCase> =
        (1..=2u64).map(|w| TheoremCase::new("CSS").with("which", w).with_caps(caps("q=41"))).collect();
    for id in ["NEW14", "NEW41", "GOLLNITZ14", "GOLLNITZ41"] {
        cases.push(TheoremCase::new(id).with("N", 30u64));
    }
    for id in ["GF_14", "GF_41"] {
        cases.push(TheoremCase::new(id).with_caps(caps("x=21,y=21")));
    }
    all_pass(cases)
}

fn determinism() -> Outcome {
    let serial = run_suite(None, 1, DEFAULT_SEED, options()).map_err(|e| e.to_string())?;
    let parallel = run_suite(None, 8, DEFAULT_SEED, options()).map_err(|e| e.to_string())?;
    let (a, b) = (serial.to_json(), parallel.to_json());
    ensure(a == b, || "reports differ between parallelism 1 and 8".into())?;
    ensure(serial.count(Status::Fail) == 0, || format!("{} failing reports", serial.count(Status::Fail)))?;
    Ok(format!("{} reports, {} bytes", serial.reports.len(), a.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 14] = [
        ("lecture hall theorem, n = 1..6 to q^30", lht),
        ("anti-lecture hall and refined anti-lecture hall", anti_refined),
        ("table of s-Eulerian polynomials", table_one),
        ("parallelepiped of (2,3) and its series", worked_cone),
        ("BME chain, images and bijectivity", bme_regression),
        ("Theta bijectivity", theta_check),
        ("quadratic permutation statistics", quadratic),
        ("box counts and u-analogs", boxes),
        ("inversion-sequence series", inversion_sequences),
        ("height generating functions", heights),
        ("real-rootedness", real_roots),
        ("Gorenstein triple agreement", gorenstein),
        ("q-series identities", q_series),
        ("suite determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail})", i + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
