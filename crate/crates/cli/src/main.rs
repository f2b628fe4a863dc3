use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lecture_hall::algebra::{Caps, Var};
use lecture_hall::bijections::{bme, bme_inv, gamma, lhp_to_barred, theta, PartMultiplicity};
use lecture_hall::enumeration::{members, stats, Bound, GPartition, LHPartition, StatBundle};
use lecture_hall::eulerian::{compute, default_budget, is_palindromic, is_real_rooted, is_unimodal, Kind};
use lecture_hall::geometry::{
    ehrhart_poly_p, ehrhart_quasi_r, gorenstein_check, lattice_gf, pi_points, pi_prime_points,
    self_reciprocity_check,
};
use lecture_hall::harness::{self, RunOptions, Status, TheoremCase, EXIT_USAGE};
use lecture_hall::sequences::{make_family, Family, SSeq};
use lecture_hall::statistics::{invseq_stats, Flavor, InvSeq, MultisetWord, Perm, SignedPerm};
use lecture_hall::{Error, Result};

#[derive(Parser)]
#[command(name = "lhp", version, about = "Lecture hall partitions: enumeration, statistics and identity checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exclusive truncation orders, e.g. "q=30,u=20,x=10".
    #[arg(long, global = true)]
    caps: Option<String>,
    /// Largest number of objects a single enumeration may visit
    /// (default: LHP_BUDGET or 10^7).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for the randomized cases of the suite.
    #[arg(long, global = true, default_value_t = harness::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// List the members of L_n^(s) below a weight and/or last-part bound.
    Enumerate {
        #[arg(long)]
        s: String,
        #[arg(long)]
        max_weight: Option<u64>,
        #[arg(long)]
        max_last: Option<u64>,
        /// Include every statistic, not just ceilings and remainders.
        #[arg(long)]
        stats: bool,
    },
    /// Statistics of a single permutation, signed permutation, inversion
    /// sequence or word.
    Stats {
        #[arg(long, value_enum)]
        object: Object,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        /// Ambient sequence for inversion sequences (default 1..n).
        #[arg(long)]
        s: Option<String>,
        /// Descent flavor for signed permutations (default: both).
        #[arg(long)]
        flavor: Option<String>,
    },
    /// Apply one of the bijections.
    Bijection {
        #[arg(long, value_enum)]
        name: BijectionName,
        /// Comma-separated key=value pairs: k, l, n, s, inverse.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        input: String,
    },
    /// Ascent and inflated Eulerian polynomials.
    Eulerian {
        #[arg(long)]
        s: Option<String>,
        #[arg(long, default_value = "E")]
        kind: String,
        /// Step of the (1, k+1, 2k+1, ...) family for --kind onek.
        #[arg(long)]
        k: Option<u64>,
        /// Length for --kind onek when --s is absent.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        check_real_roots: bool,
    },
    /// Cone and polytope data.
    Geometry {
        #[arg(long)]
        s: String,
        #[arg(long, value_enum)]
        op: GeometryOp,
    },
    /// Check one registered identity.
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        l: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        i: Option<u64>,
        #[arg(long)]
        s: Option<String>,
        /// Further parameters as key=value; repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Run the default cases of every (or every matching) identity.
    Suite {
        /// Shell-style id pattern such as "GOR*".
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        /// Record per-case wall-clock times (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
        /// List the registered identities instead of running them.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    Perm,
    Signed,
    Invseq,
    Word,
}

#[derive(Clone, Copy, ValueEnum)]
enum BijectionName {
    Bme,
    Gamma,
    Theta,
    Barred,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryOp {
    Pi,
    Piprime,
    Gf,
    #[value(name = "ehrhartP")]
    EhrhartP,
    #[value(name = "ehrhartR")]
    EhrhartR,
    Gorenstein,
    Selfrecip,
}

/// What a command produced: a JSON value, its text rendering and an exit
/// status.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, text: impl Into<String>) -> Output {
        Output { json, text: text.into(), code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE as u8 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let body = match cli.global.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
                Format::Text => out.text.trim_end().to_owned(),
            };
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let budget = cli.global.budget.unwrap_or_else(default_budget);
    let caps: Caps = cli.global.caps.as_deref().unwrap_or("").parse()?;
    match &cli.command {
        Command::Enumerate { s, max_weight, max_last, stats } => {
            enumerate(&s.parse()?, Bound { max_weight: *max_weight, max_last: *max_last }, *stats, budget)
        }
        Command::Stats { object, value, s, flavor } => stats_of(*object, value, s.as_deref(), flavor.as_deref()),
        Command::Bijection { name, params, input } => bijection(*name, &parse_pairs(params)?, input),
        Command::Eulerian { s, kind, k, n, check_real_roots } => {
            eulerian(s.as_deref(), kind.parse()?, *k, *n, *check_real_roots, budget)
        }
        Command::Geometry { s, op } => geometry(&s.parse()?, *op, &caps, budget),
        Command::Verify { id, n, k, l, t, i, s, params } => {
            let mut case = TheoremCase::new(id).with_caps(caps);
            for (key, v) in [("n", n), ("k", k), ("l", l), ("t", t), ("i", i)] {
                if let Some(v) = v {
                    case = case.with(key, *v);
                }
            }
            if let Some(s) = s {
                case = case.with("s", s.as_str());
            }
            for (key, v) in parse_pairs(&params.join(","))? {
                case = case.with(&key, v);
            }
            let report = harness::verify(&case, RunOptions { budget, timings: false })?;
            let code = u8::from(report.status == Status::Fail);
            let text = report_line(&report);
            Ok(Output { json: serde_json::to_value(&report).expect("serializable"), text, code })
        }
        Command::Suite { filter, parallelism, timings, list } => {
            if *list {
                let json: Vec<Value> = harness::entries()
                    .iter()
                    .map(|e| json!({"id": e.id, "lhs": e.lhs, "rhs": e.rhs, "caps": e.default_caps, "finite": e.finite}))
                    .collect();
                let text: Vec<String> = harness::entries().iter().map(|e| format!("{}: {} = {}", e.id, e.lhs, e.rhs)).collect();
                return Ok(Output::ok(Value::Array(json), text.join("\n")));
            }
            let result = harness::run_suite(
                filter.as_deref(),
                *parallelism,
                cli.global.seed,
                RunOptions { budget, timings: *timings },
            )?;
            let mut text: Vec<String> = result.reports.iter().map(report_line).collect();
            text.push(format!(
                "{} passed, {} failed, {} skipped",
                result.count(Status::Pass),
                result.count(Status::Fail),
                result.count(Status::Skipped)
            ));
            let json = serde_json::to_value(&result.reports).expect("serializable");
            Ok(Output { json, text: text.join("\n"), code: result.exit_code() as u8 })
        }
    }
}

fn report_line(r: &harness::VerificationReport) -> String {
    let status = match r.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIPPED",
    };
    let params = serde_json::to_string(&r.params).expect("serializable");
    let mut line = format!("{status} {} {params}\n  lhs {}\n  rhs {}", r.id, r.lhs, r.rhs);
    if let Some(m) = &r.first_mismatch {
        line.push_str(&format!("\n  first mismatch at {:?}: {} vs {}", m.monomial, m.lhs, m.rhs));
    }
    for note in &r.notes {
        line.push_str(&format!("\n  note: {note}"));
    }
    line
}

/// `"k=2,l=3"` into typed JSON values; numbers stay numbers.
fn parse_pairs(text: &str) -> Result<BTreeMap<String, Value>> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) =
            item.split_once('=').ok_or_else(|| Error::Parse(format!("'{item}' is not of the form key=value")))?;
        let value = value.trim();
        let value = match value.parse::<i64>() {
            Ok(n) => Value::from(n),
            Err(_) => Value::from(value),
        };
        out.insert(key.trim().to_string(), value);
    }
    Ok(out)
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("'{t}' is not a nonnegative integer"))))
        .collect()
}

fn param_u64(params: &BTreeMap<String, Value>, key: &str, default: u64) -> Result<u64> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v.as_u64().ok_or_else(|| Error::InvalidParameter(format!("{key} must be a nonnegative integer"))),
    }
}

fn bundle_json(parts: &[u64], b: &StatBundle, full: bool) -> Value {
    let mut row = json!({"parts": parts, "weight": b.weight, "ceil": b.ceil, "eps_plus": b.eps_plus});
    if full {
        let extra = json!({
            "ceil_sum": b.ceil_sum, "ceil_odd": b.ceil_odd, "floor": b.floor, "floor_sum": b.floor_sum,
            "floor_odd": b.floor_odd, "eps_sum": b.eps_sum, "last": b.last, "last_ceil": b.last_ceil,
            "odd_index_sum": b.odd_index_sum, "even_index_sum": b.even_index_sum,
        });
        if let (Value::Object(row), Value::Object(extra)) = (&mut row, extra) {
            row.extend(extra);
        }
    }
    row
}

fn enumerate(s: &SSeq, bound: Bound, full: bool, budget: u64) -> Result<Output> {
    let found = members(s, bound)?;
    if found.len() as u64 > budget {
        return Err(Error::BudgetExceeded { size: found.len() as u128, budget });
    }
    let mut rows = Vec::with_capacity(found.len());
    let mut text = Vec::with_capacity(found.len());
    for parts in &found {
        let b = stats(parts, s)?;
        rows.push(bundle_json(parts, &b, full));
        let mut line = format!("{parts:?} weight {} ceil {:?} eps {:?}", b.weight, b.ceil, b.eps_plus);
        if full {
            line.push_str(&format!(" ceil_sum {} floor_sum {} last_ceil {}", b.ceil_sum, b.floor_sum, b.last_ceil));
        }
        text.push(line);
    }
    text.push(format!("{} partitions", found.len()));
    Ok(Output::ok(Value::Array(rows), text.join("\n")))
}

fn stats_of(object: Object, value: &str, s: Option<&str>, flavor: Option<&str>) -> Result<Output> {
    let json = match object {
        Object::Perm => serde_json::to_value(value.parse::<Perm>()?.stats()).expect("serializable"),
        Object::Signed => {
            let p: SignedPerm = value.parse()?;
            let flavors = match flavor {
                Some(f) => vec![f.parse::<Flavor>()?],
                None if p.values().len() >= 2 => vec![Flavor::B, Flavor::D],
                None => vec![Flavor::B],
            };
            let mut out = json!({"values": p.values(), "negatives": p.negatives(), "type_d": p.is_type_d()});
            for f in flavors {
                let key = if f == Flavor::B { "des_b" } else { "des_d" };
                out[key] = json!(p.des(f)?);
            }
            out
        }
        Object::Invseq => {
            let e = parse_list(value)?;
            let s: SSeq = match s {
                Some(s) => s.parse()?,
                None => SSeq::explicit((1..=e.len() as u64).collect())?,
            };
            InvSeq::new(e.clone(), s.clone())?;
            let mut out = serde_json::to_value(invseq_stats(&e, s.values())).expect("serializable");
            out["e"] = json!(e);
            out["s"] = json!(s.values());
            out
        }
        Object::Word => {
            let w = MultisetWord::new(parse_list(value)?)?;
            json!({"letters": w.letters(), "des": w.des()})
        }
    };
    let text = match &json {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n"),
        other => other.to_string(),
    };
    Ok(Output::ok(json, text))
}

fn bijection(name: BijectionName, params: &BTreeMap<String, Value>, input: &str) -> Result<Output> {
    let k = param_u64(params, "k", 1)?;
    let l = param_u64(params, "l", 4)?;
    let inverse = params.get("inverse").is_some_and(|v| v.as_i64() == Some(1) || v.as_str() == Some("true"));
    match name {
        BijectionName::Bme if inverse => {
            let m: PartMultiplicity = input.parse()?;
            let n = params
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::InvalidParameter("the inverse needs n".into()))?;
            let g = bme_inv(&m, n as usize, k, l)?;
            Ok(Output::ok(json!({"parts": g.parts()}), format!("{:?}", g.parts())))
        }
        BijectionName::Bme => {
            let image = bme(&GPartition::new(parse_list(input)?, k, l)?)?;
            let json = json!({
                "image": image.compact(),
                "full": image.to_string(),
                "parts": image.parts,
                "mults": image.mults,
                "weight": image.weight(),
            });
            Ok(Output::ok(json, image.compact()))
        }
        BijectionName::Gamma => {
            let s = param_u64(params, "s", 0)?;
            let mu = gamma(&GPartition::new(parse_list(input)?, k, l)?, s)?;
            Ok(Output::ok(json!({"parts": mu.parts()}), format!("{:?}", mu.parts())))
        }
        BijectionName::Theta => {
            let l = param_u64(params, "l", 2)?;
            let lam = theta(&input.parse::<PartMultiplicity>()?, l)?;
            Ok(Output::ok(json!({"parts": lam}), format!("{lam:?}")))
        }
        BijectionName::Barred => {
            let parts = parse_list(input)?;
            let s: SSeq = match params.get("s") {
                Some(Value::String(spec)) => spec.replace(';', ",").parse()?,
                Some(_) => return Err(Error::InvalidParameter("s must be a sequence like 1;2;3".into())),
                None => SSeq::explicit((1..=parts.len() as u64).collect())?,
            };
            let b = lhp_to_barred(&LHPartition::new(parts, s)?);
            let text = format!("e {:?} bars {:?}", b.e, b.bars);
            Ok(Output::ok(json!({"e": b.e, "bars": b.bars}), text))
        }
    }
}

fn eulerian(s: Option<&str>, kind: Kind, k: Option<u64>, n: Option<usize>, roots: bool, budget: u64) -> Result<Output> {
    let s: SSeq = match (s, kind) {
        (Some(s), _) => s.parse()?,
        (None, Kind::OneK) => {
            let k = k.ok_or_else(|| Error::InvalidParameter("--kind onek needs --k".into()))?;
            let n = n.ok_or_else(|| Error::InvalidParameter("--kind onek needs --n or --s".into()))?;
            make_family(Family::OneModK { k }, n)?
        }
        (None, _) => return Err(Error::InvalidParameter("--s is required".into())),
    };
    let result = compute(kind, &s, budget)?;
    let poly = &result.poly;
    let coeffs: Vec<String> = poly.univariate_coeffs(Var::X)?.iter().map(ToString::to_string).collect();
    let mut json = json!({
        "sequence": s.values(),
        "kind": kind.to_string(),
        "poly": poly.to_string(),
        "coefficients": coeffs,
        "sum": poly.coeff_sum().to_string(),
    });
    let mut text = poly.to_string();
    if roots {
        let (real, palin, uni) = (is_real_rooted(poly)?, is_palindromic(poly)?, is_unimodal(poly)?);
        json["real_rooted"] = json!(real);
        json["palindromic"] = json!(palin);
        json["unimodal"] = json!(uni);
        text.push_str(&format!("\nreal-rooted: {real}\npalindromic: {palin}\nunimodal: {uni}"));
    }
    Ok(Output::ok(json, text))
}

fn points_text(points: &[Vec<u64>]) -> String {
    points.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join("\n")
}

fn geometry(s: &SSeq, op: GeometryOp, caps: &Caps, budget: u64) -> Result<Output> {
    match op {
        GeometryOp::Pi | GeometryOp::Piprime => {
            let set = if matches!(op, GeometryOp::Pi) { pi_points(s, budget)? } else { pi_prime_points(s, budget)? };
            Ok(Output::ok(json!(set.points), points_text(&set.points)))
        }
        GeometryOp::Gf => {
            let gf = lattice_gf(s, budget)?;
            let dens: Vec<String> = gf.denominators.iter().map(|m| format!("(1 - {m})")).collect();
            let mut json = json!({"numerator": gf.numerator.to_string(), "denominators": dens});
            let mut text = format!("({}) / ({})", gf.numerator, dens.join(" "));
            if !caps.is_empty() {
                let series = gf.expand(caps)?;
                json["series"] = json!(series.poly().to_string());
                text.push_str(&format!("\n= {} below {caps}", series.poly()));
            }
            Ok(Output::ok(json, text))
        }
        GeometryOp::EhrhartP => {
            let p = ehrhart_poly_p(s)?;
            Ok(Output::ok(json!({"polynomial": p.to_string()}), p.to_string()))
        }
        GeometryOp::EhrhartR => {
            let qp = ehrhart_quasi_r(s)?;
            let constituents: Vec<String> = qp.constituents.iter().map(ToString::to_string).collect();
            let text = constituents
                .iter()
                .enumerate()
                .map(|(r, c)| format!("t = {r} mod {}: {c}", qp.period))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::ok(json!({"period": qp.period, "constituents": constituents}), text))
        }
        GeometryOp::Gorenstein => {
            let g = gorenstein_check(s);
            let text = match (&g.c, g.failing_index) {
                (Some(c), _) => format!("Gorenstein, c = {c:?}"),
                (None, Some(i)) => format!("not Gorenstein, fails at index {i}"),
                (None, None) => "not Gorenstein".to_string(),
            };
            Ok(Output::ok(serde_json::to_value(&g).expect("serializable"), text))
        }
        GeometryOp::Selfrecip => {
            let ok = self_reciprocity_check(s, budget)?;
            Ok(Output::ok(json!({"self_reciprocal": ok}), ok.to_string()))
        }
    }
}
