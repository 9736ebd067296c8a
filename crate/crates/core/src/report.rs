//! Check reports: the uniform result format for every empirical checker.
//!
//! All asymptotic hypotheses in this crate are checked on finite prefixes,
//! so every verdict is an estimate. A report therefore always carries the
//! thresholds that produced it, and a failing report always names a witness
//! index. Verdicts are three-valued: a check that is "still growing, but
//! slowly" at the end of the prefix refuses to commit either way.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Three-valued outcome of an empirical check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The evidence at this prefix length does not support either verdict.
    Inconclusive,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

/// Result of a single hypothesis or conclusion check.
///
/// Invariants (enforced by the constructors):
/// * a `Fail` report carries `first_violation`,
/// * a `Pass` report of a boundedness/O(.) check carries `constant`,
/// * `thresholds` echoes every knob that influenced the verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    /// Stable machine-readable identifier, e.g. `"weights_cumulative_ratio"`.
    pub id: String,
    pub verdict: Verdict,
    /// Empirical bounding constant (the observed sup) for O(.) style checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
    /// Logical index witnessing a failure: the first violating index for
    /// pointwise checks, the index attaining the final sup for growth checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<usize>,
    /// Every threshold the verdict depended on, keyed by knob name.
    pub thresholds: BTreeMap<String, f64>,
    /// Free-form human-readable remarks (proxy caveats, witness details).
    pub notes: Vec<String>,
}

impl CheckReport {
    /// A passing report. `constant` is the observed bounding constant where
    /// the check estimates an O(.) statement (accepts a bare `f64`).
    pub fn pass(id: impl Into<String>, constant: impl Into<Option<f64>>) -> Self {
        CheckReport {
            id: id.into(),
            verdict: Verdict::Pass,
            constant: constant.into(),
            first_violation: None,
            thresholds: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// Flip this report to `Pass` with the given constant, keeping its id,
    /// thresholds, and notes (used when a verdict is decided after the
    /// report skeleton has been assembled).
    pub fn passed_with(mut self, constant: f64) -> Self {
        self.verdict = Verdict::Pass;
        self.constant = Some(constant);
        self.first_violation = None;
        self
    }

    /// A failing report; `first_violation` is mandatory by construction.
    pub fn fail(id: impl Into<String>, first_violation: usize) -> Self {
        CheckReport {
            id: id.into(),
            verdict: Verdict::Fail,
            constant: None,
            first_violation: Some(first_violation),
            thresholds: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn inconclusive(id: impl Into<String>) -> Self {
        CheckReport {
            id: id.into(),
            verdict: Verdict::Inconclusive,
            constant: None,
            first_violation: None,
            thresholds: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_threshold(mut self, key: &str, value: f64) -> Self {
        self.thresholds.insert(key.to_string(), value);
        self
    }

    pub fn with_constant(mut self, value: f64) -> Self {
        self.constant = Some(value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Return the same report under a different id (used when a generic
    /// checker is embedded in a larger suite).
    pub fn renamed(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fail_reports_carry_a_witness() {
        let r = CheckReport::fail("demo", 17);
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.first_violation, Some(17));
    }

    #[test]
    fn report_serializes_without_absent_fields() {
        let r = CheckReport::pass("demo", None).with_threshold("slack", 0.05);
        let json = serde_json::to_string(&r).unwrap();
        assert!(!json.contains("constant"));
        assert!(!json.contains("first_violation"));
        assert!(json.contains("\"slack\":0.05"));
    }

    #[test]
    fn verdict_roundtrips_through_json() {
        for v in [Verdict::Pass, Verdict::Fail, Verdict::Inconclusive] {
            let s = serde_json::to_string(&v).unwrap();
            let back: Verdict = serde_json::from_str(&s).unwrap();
            assert_eq!(v, back);
        }
    }
}
