//! Solvers for the three problem representations, with uniform trial logs.

pub mod sat;
pub mod subset_sum;

use serde::{Deserialize, Serialize};

pub use sat::{ppsz_solve, ppsz_trial, sat_enumerate, unit_propagate, Propagation};
pub use subset_sum::{brute_force_subset_sum, mitm_subset_sum, planted_instance};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Found,
    Exhausted,
}

/// One solver run, serialized as a single JSON line.
///
/// `millis` stays `None` unless the caller explicitly measures wall time,
/// so logs are byte-stable across reruns by default.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialLog {
    pub representation: String,
    pub n: Option<u64>,
    pub d: u64,
    pub seed: Option<u64>,
    pub trials: u64,
    pub outcome: Outcome,
    pub table_entries: u64,
    pub millis: Option<u64>,
}

impl TrialLog {
    pub fn to_jsonl_line(&self) -> String {
        serde_json::to_string(self).expect("trial log serializes")
    }

    pub fn from_jsonl_line(line: &str) -> crate::Result<Self> {
        serde_json::from_str(line).map_err(|e| crate::Error::Parse(format!("trial log: {e}")))
    }
}
