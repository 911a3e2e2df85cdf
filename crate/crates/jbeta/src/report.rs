//! Per-check verdicts and their JSON report.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::checks::{run_check, Counts};
use crate::error::CliResult;
use crate::scenario::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The check does not apply to the scenario.
    Skip,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    pub witness: Option<Value>,
    pub note: Option<String>,
}

impl Outcome {
    pub fn pass() -> Outcome {
        Outcome { verdict: Verdict::Pass, witness: None, note: None }
    }

    pub fn fail(witness: Value) -> Outcome {
        Outcome { verdict: Verdict::Fail, witness: Some(witness), note: None }
    }

    pub fn skip(why: &str) -> Outcome {
        Outcome { verdict: Verdict::Skip, witness: None, note: Some(why.into()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub millis: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    /// The report with every timing set to zero, which is a function of
    /// the scenario and seed alone.
    pub fn without_timing(&self) -> Report {
        let checks = self.checks.iter().map(|c| CheckRecord { millis: 0, ..c.clone() }).collect();
        Report { checks, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Runs the named checks, or every check listed by the scenario.
pub fn run_scenario(sc: &Scenario, names: &[String], seed: u64, counts: &Counts) -> CliResult<Report> {
    let names = if names.is_empty() { &sc.file.checks } else { names };
    let mut checks = Vec::new();
    for name in names {
        let start = Instant::now();
        let o = run_check(name, sc, seed, counts)?;
        let millis = start.elapsed().as_millis() as u64;
        checks.push(CheckRecord { name: name.clone(), verdict: o.verdict, witness: o.witness, note: o.note, millis });
    }
    Ok(Report { scenario: sc.name().into(), seed, checks })
}
