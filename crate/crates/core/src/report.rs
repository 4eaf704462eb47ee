//! Serializable verification reports.
//!
//! Schema (see `docs/schemas/verification_report.schema.json`):
//! `{claims: [{id, source, convention, expected, verdict, lhs, rhs,
//! lhs_value, rhs_value, detail}], summary: {total, holds, fails,
//! unexpected_failures}}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

/// What the registry expects before computing anything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    /// The printed statement is believed to contain a typo; its failure is
    /// reported with the computed value and does not fail a run.
    TypoSuspected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: String,
    pub source: String,
    pub convention: String,
    pub expected: Expectation,
    pub verdict: Verdict,
    pub lhs: String,
    pub rhs: String,
    pub lhs_value: Value,
    pub rhs_value: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl ReportEntry {
    /// A failure of a claim expected to hold.
    pub fn is_unexpected_failure(&self) -> bool {
        self.verdict == Verdict::Fails && self.expected == Expectation::Holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub holds: usize,
    pub fails: usize,
    pub unexpected_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claims: Vec<ReportEntry>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Sorts entries by id and recomputes the summary.
    pub fn new(mut claims: Vec<ReportEntry>) -> Self {
        claims.sort_by(|a, b| a.id.cmp(&b.id));
        let holds = claims
            .iter()
            .filter(|c| c.verdict == Verdict::Holds)
            .count();
        let unexpected_failures = claims.iter().filter(|c| c.is_unexpected_failure()).count();
        let summary = Summary {
            total: claims.len(),
            holds,
            fails: claims.len() - holds,
            unexpected_failures,
        };
        VerificationReport { claims, summary }
    }

    pub fn entry(&self, id: &str) -> Option<&ReportEntry> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// True when every claim not tagged as a suspected typo holds.
    pub fn passed(&self) -> bool {
        self.summary.unexpected_failures == 0
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
