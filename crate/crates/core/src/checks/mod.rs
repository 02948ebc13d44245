//! The verification battery: one named check per computational claim about
//! the modules, plus a randomized simplicity probe.

mod algebraic;
mod lemmas;
mod probe;
pub mod random;

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Virasoro;
use crate::coeff::Rational;

pub use algebraic::{check_bracket_table, check_character, check_classification, check_closure_battery, check_jacobi};
pub use lemmas::{
    check_contribution, check_eigen, contribution_table, ContributionTable, check_lem95, check_lem97, check_restriction, lem97_elements, p1_contribution,
    stated_p1_contribution, y2, y3,
};
pub use probe::{check_descent, check_order, probe_simplicity, ProbeConfig, ProbeError, ProbeSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    #[serde(rename = "check")]
    pub id: String,
    pub status: Status,
    pub details: Value,
    pub elapsed_ms: u64,
}

impl CheckReport {
    /// A failing report without an explicit `counterexample` gets the first
    /// entry of its `failures` or `mismatches` list.
    pub fn new(id: &str, passed: bool, mut details: Value) -> Self {
        if !passed && details.get("counterexample").is_none() {
            let first = ["failures", "mismatches"]
                .iter()
                .find_map(|k| details.get(*k).and_then(|v| v.get(0)).cloned());
            if let (Some(c), Some(obj)) = (first, details.as_object_mut()) {
                obj.insert("counterexample".into(), c);
            }
        }
        CheckReport {
            id: id.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            details,
            elapsed_ms: 0,
        }
    }

    pub fn error(id: &str, message: impl fmt::Display) -> Self {
        CheckReport {
            id: id.to_string(),
            status: Status::Error,
            details: json!({ "error": message.to_string() }),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One JSON object on a single line.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialise")
    }

    pub fn text_line(&self) -> String {
        format!("{:<14} {:<5} {:>7} ms", self.id, self.status, self.elapsed_ms)
    }
}

/// Settings shared by every check, including the deliberate mutations used
/// to confirm that the battery detects broken structure.
#[derive(Clone, Debug, PartialEq)]
pub struct BatteryConfig {
    pub seed: u64,
    pub trials: usize,
    pub algebra: Virasoro,
    /// Adds a constant to one character value `m_k`.
    pub perturbation: Option<(u32, Rational)>,
    /// Record wall-clock timings; off gives byte-stable reports.
    pub timings: bool,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            seed: 0,
            trials: 100,
            algebra: Virasoro::STANDARD,
            perturbation: None,
            timings: true,
        }
    }
}

/// Identifiers accepted by [`run_check`], in battery order.
pub const CHECK_IDS: [&str; 13] = [
    "bracket",
    "jacobi",
    "closure",
    "character",
    "classify",
    "eigen",
    "restriction",
    "lem95",
    "lem97",
    "contribution",
    "order",
    "descent",
    "probe",
];

pub fn run_check(id: &str, cfg: &BatteryConfig) -> Option<CheckReport> {
    let start = Instant::now();
    let mut report = match id {
        "bracket" => check_bracket_table(cfg),
        "jacobi" => check_jacobi(cfg),
        "closure" => check_closure_battery(cfg),
        "character" => check_character(cfg),
        "classify" => check_classification(cfg),
        "eigen" => check_eigen(cfg),
        "restriction" => check_restriction(cfg),
        "lem95" => check_lem95(cfg),
        "lem97" => check_lem97(cfg),
        "contribution" => check_contribution(cfg),
        "order" => check_order(cfg),
        "descent" => check_descent(cfg),
        "probe" => probe::check_probe(cfg),
        _ => return None,
    };
    if cfg.timings {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    Some(report)
}

pub fn run_all(cfg: &BatteryConfig) -> Vec<CheckReport> {
    CHECK_IDS
        .iter()
        .map(|id| run_check(id, cfg).expect("known id"))
        .collect()
}

pub(crate) fn q(x: &impl fmt::Display) -> Value {
    Value::String(x.to_string())
}
