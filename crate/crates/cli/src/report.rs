//! One JSON report per scenario, and the suite driver.

use std::time::Instant;

use nonsolv_core::Result;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cases::{self, CaseResult, Outcome};
use crate::scenario::{self, Body, Scenario};

pub const SPEC_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub spec_version: u32,
    pub toolkit_version: String,
    pub scenario: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u32>,
    pub seed: u64,
    /// `pass`, `fail` or `skipped`.
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub inputs: Value,
    pub results: Vec<CaseResult>,
    /// Wall-clock time; only filled in on request so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcome == "pass"
    }

    pub fn failed(&self) -> bool {
        self.outcome == "fail"
    }
}

fn run_cases(body: &Body, seed: u64) -> Result<Vec<CaseResult>> {
    match body {
        Body::Witness(cs) => cs.iter().map(|c| cases::witness(c, seed)).collect(),
        Body::ExceptionSweep(cs) => cs.iter().map(cases::sweep).collect(),
        Body::BoundCheck(cs) => cs.iter().map(|c| cases::bound(c, seed)).collect(),
        Body::PpartCheck(cs) => cs.iter().map(cases::ppart).collect(),
        Body::ThompsonCheck(cs) => cs.iter().map(cases::thompson).collect(),
        Body::InvariantFactorSweep(cs) => cs.iter().map(|c| cases::lemma(c, seed)).collect(),
        Body::OracleCheck(cs) => cs.iter().map(cases::oracle).collect(),
    }
}

/// Runs every case; an error inside a case is reported as a failure rather than aborting.
pub fn run_scenario(s: &Scenario, seed: u64, timing: bool) -> Report {
    let start = Instant::now();
    let (results, error) = match run_cases(&s.body, seed) {
        Ok(r) => (r, None),
        Err(e) => (vec![], Some(e.to_string())),
    };
    let elapsed = start.elapsed().as_millis() as u64;
    let fails: Vec<String> = results
        .iter()
        .enumerate()
        .filter_map(|(i, r)| match &r.outcome {
            Outcome::Fail(why) => Some(format!("case {i}: {why}")),
            _ => None,
        })
        .collect();
    let all_skipped = !results.is_empty() && results.iter().all(|r| matches!(r.outcome, Outcome::Skipped(_)));
    let (outcome, reason) = if let Some(e) = error {
        ("fail", Some(e))
    } else if !fails.is_empty() {
        ("fail", Some(fails.join("; ")))
    } else if all_skipped {
        let why = results.iter().filter_map(|r| if let Outcome::Skipped(w) = &r.outcome { Some(w.clone()) } else { None }).next();
        ("skipped", why)
    } else {
        ("pass", None)
    };
    let inputs = serde_json::to_value(&s.body).map(|v| v["cases"].clone()).unwrap_or(json!(null));
    Report {
        spec_version: SPEC_VERSION,
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        scenario: s.id.clone(),
        kind: s.body.kind().to_string(),
        criterion: s.criterion,
        seed,
        outcome: outcome.to_string(),
        reason,
        inputs,
        results,
        timing_ms: timing.then_some(elapsed),
    }
}

/// Matching scenarios from the default catalog, run on `workers` threads; reports sorted by id.
pub fn run_suite(filter: &str, seed: u64, workers: usize, timing: bool) -> Result<Vec<Report>> {
    let selected: Vec<Scenario> = scenario::load_default()?.into_iter().filter(|s| scenario::matches(filter, &s.id)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| nonsolv_core::Error::Task(e.to_string()))?;
    let mut reports: Vec<Report> = pool.install(|| selected.par_iter().map(|s| run_scenario(s, seed, timing)).collect());
    reports.sort_by(|a, b| a.scenario.cmp(&b.scenario));
    Ok(reports)
}

/// Exit status for a batch: success iff every non-skipped report passed.
pub fn all_ok(reports: &[Report]) -> bool {
    reports.iter().all(|r| !r.failed())
}
