//! The ten acceptance criteria, each one catalog scenario run at the default
//! seed under its own wall-clock limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nonsolv_cli::report::run_scenario;
use nonsolv_cli::scenario::load_default;
use nonsolv_core::search::DEFAULT_SEED;

const CRITERIA: u32 = 10;

fn main() -> ExitCode {
    let scenarios = load_default().expect("scenario catalog");
    let mut failed = 0;
    for n in 1..=CRITERIA {
        let matching: Vec<_> = scenarios.iter().filter(|s| s.criterion == Some(n)).collect();
        if matching.len() != 1 {
            println!("FAIL criterion {n:2}: {} scenarios claim it", matching.len());
            failed += 1;
            continue;
        }
        let s = matching[0];
        let limit = Duration::from_secs(s.time_limit_s.expect("criterion scenarios carry a time limit"));
        let start = Instant::now();
        let r = run_scenario(s, DEFAULT_SEED, false);
        let took = start.elapsed();
        let ok = r.passed() && took <= limit;
        let why = match (&r.reason, took > limit) {
            (_, true) => format!(" (over the {}s limit)", limit.as_secs()),
            (Some(reason), _) => format!(" ({reason})"),
            _ => String::new(),
        };
        println!("{} criterion {n:2} {:34} {:>9.3}s / {}s{why}", if ok { "PASS" } else { "FAIL" }, s.id, took.as_secs_f64(), limit.as_secs());
        if !ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of {CRITERIA} criteria passed", CRITERIA - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
