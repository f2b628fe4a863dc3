//! Theorem registry, verification driver and deterministic JSON reports.

mod checks;
mod evidence;
mod params;
mod registry;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::algebra::Caps;
use crate::{Error, Result};

pub use evidence::MismatchReport;
pub use registry::{default_cases, entries, lookup, Entry, DEFAULT_SEED};

use evidence::Evidence;
use params::Ctx;

/// Exit status of a run with no failures.
pub const EXIT_PASS: i32 = 0;
/// Exit status when at least one report failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for malformed invocations.
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One instance of a registered identity.
#[derive(Clone, PartialEq, Debug)]
pub struct TheoremCase {
    pub id: String,
    pub params: BTreeMap<String, Value>,
    pub caps: Caps,
}

impl TheoremCase {
    pub fn new(id: &str) -> TheoremCase {
        TheoremCase { id: id.to_string(), params: BTreeMap::new(), caps: Caps::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> TheoremCase {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_caps(mut self, caps: Caps) -> TheoremCase {
        self.caps = caps;
        self
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub first_mismatch: Option<MismatchReport>,
    pub elapsed_ms: Option<u64>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn sort_key(&self) -> (String, String) {
        (self.id.clone(), serde_json::to_string(&self.params).unwrap_or_default())
    }
}

/// Knobs shared by every case in a run.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub budget: u64,
    /// Record wall-clock time per case. Off by default so reports stay
    /// byte-reproducible.
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { budget: crate::eulerian::default_budget(), timings: false }
    }
}

/// Checks one case. Unknown ids and malformed parameters are errors; budget
/// overruns become `SKIPPED` reports.
pub fn verify(case: &TheoremCase, options: RunOptions) -> Result<VerificationReport> {
    let entry = lookup(&case.id).ok_or_else(|| Error::InvalidParameter(format!("unknown theorem id '{}'", case.id)))?;
    let mut caps: Caps = entry.default_caps.parse()?;
    for (v, c) in case.caps.iter() {
        caps = caps.with(v, c);
    }
    let mut params = case.params.clone();
    if !caps.is_empty() {
        params.insert("caps".into(), Value::String(caps.to_string()));
    }
    let ctx = Ctx::new(&case.params, &caps, options.budget);
    let start = Instant::now();
    let outcome = (entry.check)(&ctx);
    let elapsed_ms = options.timings.then(|| start.elapsed().as_millis() as u64);
    let mut report = VerificationReport {
        id: entry.id.to_string(),
        params,
        status: Status::Pass,
        lhs: entry.lhs.to_string(),
        rhs: entry.rhs.to_string(),
        first_mismatch: None,
        elapsed_ms,
        notes: entry.finite.then(|| "finite-evidence check at the stated scale".to_string()).into_iter().collect(),
    };
    match outcome {
        Ok(ev) => apply(&mut report, ev),
        Err(Error::BudgetExceeded { size, budget }) => {
            report.status = Status::Skipped;
            report.notes.push(format!("{size} objects exceed the enumeration budget of {budget}"));
        }
        Err(e @ (Error::Consistency(_) | Error::InexactDivision)) => {
            report.status = Status::Fail;
            report.first_mismatch =
                Some(MismatchReport { monomial: BTreeMap::new(), lhs: e.to_string(), rhs: "consistent".into() });
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn apply(report: &mut VerificationReport, ev: Evidence) {
    if !ev.lhs.is_empty() {
        report.lhs = format!("{}: {}", report.lhs, ev.lhs);
    }
    if !ev.rhs.is_empty() {
        report.rhs = format!("{}: {}", report.rhs, ev.rhs);
    }
    report.notes.extend(ev.notes);
    report.status = match (&ev.mismatch, ev.skipped) {
        (Some(_), _) => Status::Fail,
        (None, true) => Status::Skipped,
        (None, false) => Status::Pass,
    };
    report.first_mismatch = ev.mismatch;
}

/// Outcome of a suite run.
#[derive(Clone, PartialEq, Debug)]
pub struct SuiteResult {
    pub reports: Vec<VerificationReport>,
}

impl SuiteResult {
    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(|r| r.status == Status::Fail) {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.reports.iter().filter(|r| r.status == status).count()
    }

    pub fn to_json(&self) -> String {
        reports_json(&self.reports)
    }
}

pub fn reports_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

/// Whether `id` matches a shell-style pattern such as `GOR*`.
pub fn id_matches(pattern: &str, id: &str) -> Result<bool> {
    let p = glob::Pattern::new(pattern).map_err(|e| Error::Parse(format!("bad filter '{pattern}': {e}")))?;
    Ok(p.matches(id))
}

/// Runs the default cases whose id matches `filter` on `parallelism` threads.
/// Reports come back ordered by id and then by parameters, whatever the
/// execution order.
pub fn run_suite(filter: Option<&str>, parallelism: usize, seed: u64, options: RunOptions) -> Result<SuiteResult> {
    let mut cases = Vec::new();
    for case in default_cases(seed) {
        if filter.map_or(Ok(true), |f| id_matches(f, &case.id))? {
            cases.push(case);
        }
    }
    run_cases(&cases, parallelism, options)
}

pub fn run_cases(cases: &[TheoremCase], parallelism: usize, options: RunOptions) -> Result<SuiteResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let mut reports = pool.install(|| cases.par_iter().map(|c| verify(c, options)).collect::<Result<Vec<_>>>())?;
    reports.sort_by_key(VerificationReport::sort_key);
    Ok(SuiteResult { reports })
}
