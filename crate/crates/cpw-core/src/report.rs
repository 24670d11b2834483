//! Sweep reports: JSON serialization, CSV summaries, and the
//! identical-modulo-timing comparison the determinism contract relies on.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub group: String,
    #[serde(rename = "S")]
    pub s: String,
    #[serde(rename = "T")]
    pub t: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub group: String,
    pub hypothesis_count: u64,
    pub verified_count: u64,
    pub counterexample_count: u64,
}

/// Snapshot of the semantically relevant sweep configuration. The worker
/// count is deliberately absent: reports must be byte-identical for any
/// worker count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub order_cap: u64,
    pub automorphism_reduction: bool,
    pub fragment_cap: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub theorem: String,
    pub groups: Vec<String>,
    pub hypothesis_count: u64,
    pub verified_count: u64,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u64,
    pub config: ConfigSnapshot,
    pub per_group: Vec<GroupSummary>,
    /// Report-only observations (never counted as counterexamples).
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(s: &str) -> crate::Result<VerificationReport> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(format!("bad report JSON: {e}")))
    }

    /// One CSV row per (theorem, group), plus a header.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("theorem,group,hypothesis_count,verified_count,counterexamples\n");
        for g in &self.per_group {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.theorem,
                g.group,
                g.hypothesis_count,
                g.verified_count,
                g.counterexample_count
            ));
        }
        out
    }

    /// Equality with the timing field ignored.
    pub fn eq_modulo_timing(&self, other: &VerificationReport) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        a == b
    }
}
