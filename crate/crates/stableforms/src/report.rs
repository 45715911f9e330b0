//! Machine-readable verification reports.
//!
//! Reports are plain serde structs with deterministic field order and sorted
//! maps, so a fixed seed yields byte-identical JSON. Wall-clock timing is
//! carried out of band (`wall_ms` is skipped unless explicitly requested)
//! to keep the determinism contract on the serialised stream.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Upper bound on serialised failure witnesses per report; the full count
/// stays in `counts`.
pub const MAX_WITNESSES: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct RankSummary {
    pub name: String,
    pub computed_rank: usize,
    pub expected_rank: usize,
    pub fd_rel_dev: f64,
    pub pass: bool,
}

/// Structured result of one verification suite run.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    /// Identifier of the mathematical claim the suite exercises.
    pub claim: String,
    pub seed: u64,
    pub samples: u64,
    pub pass: bool,
    pub counts: BTreeMap<String, u64>,
    pub tolerances: BTreeMap<String, f64>,
    pub failures: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ranks: Vec<RankSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl VerifyReport {
    pub fn new(suite: &str, claim: &str, seed: u64, samples: u64) -> Self {
        VerifyReport {
            suite: suite.to_string(),
            claim: claim.to_string(),
            seed,
            samples,
            pass: true,
            counts: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            failures: Vec::new(),
            ranks: Vec::new(),
            notes: Vec::new(),
            wall_ms: None,
        }
    }

    pub fn bump(&mut self, key: &str) {
        self.bump_by(key, 1);
    }

    pub fn bump_by(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_insert(0) += by;
    }

    pub fn set_count(&mut self, key: &str, value: u64) {
        self.counts.insert(key.to_string(), value);
    }

    pub fn tolerance(&mut self, key: &str, value: f64) {
        self.tolerances.insert(key.to_string(), value);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Record a failure with its witness; keeps the report bounded.
    pub fn fail(&mut self, witness: Value) {
        self.pass = false;
        self.bump("failures");
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(witness);
        }
    }

    pub fn push_rank(&mut self, rank: RankSummary) {
        if !rank.pass {
            self.pass = false;
            self.bump("failures");
        }
        self.ranks.push(rank);
    }

    /// Merge a sub-report, prefixing its counters.
    pub fn absorb(&mut self, prefix: &str, sub: &VerifyReport) {
        if !sub.pass {
            self.pass = false;
        }
        for (k, v) in &sub.counts {
            self.bump_by(&format!("{prefix}.{k}"), *v);
        }
        for w in &sub.failures {
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(w.clone());
            }
        }
        for r in &sub.ranks {
            self.ranks.push(r.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn failure_capping_keeps_counts() {
        let mut r = VerifyReport::new("demo", "demo-claim", 1, 100);
        for i in 0..20 {
            r.fail(json!({ "i": i }));
        }
        assert!(!r.pass);
        assert_eq!(r.failures.len(), MAX_WITNESSES);
        assert_eq!(r.counts["failures"], 20);
    }

    #[test]
    fn wall_time_is_not_serialised_by_default() {
        let mut r = VerifyReport::new("demo", "demo-claim", 1, 0);
        r.wall_ms = None;
        let s = serde_json::to_string(&r).unwrap();
        assert!(!s.contains("wall_ms"));
        r.wall_ms = Some(12);
        let s2 = serde_json::to_string(&r).unwrap();
        assert!(s2.contains("wall_ms"));
    }
}
