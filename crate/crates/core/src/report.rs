//! Structured pass/fail reports shared by all axiom checkers.
//!
//! Checkers never return bare booleans: each verified axiom contributes one
//! [`CheckRecord`] carrying the axiom identifier and, on failure, the first
//! violating witness tuple (lexicographically smallest) together with both
//! sides rendered in canonical element syntax.

use serde::Serialize;
use std::fmt;

/// Outcome of a single axiom check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One axiom verification record.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    /// Stable identifier of the axiom, e.g. `"jacobi"` or `"yd"`.
    pub check_id: String,
    pub status: Status,
    /// First violating basis tuple in lexicographic order, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Left-hand side of the failed identity, rendered canonically.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    /// Right-hand side of the failed identity, rendered canonically.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl CheckRecord {
    pub fn pass(check_id: impl Into<String>) -> Self {
        CheckRecord {
            check_id: check_id.into(),
            status: Status::Pass,
            witness: None,
            lhs: None,
            rhs: None,
        }
    }

    pub fn fail(
        check_id: impl Into<String>,
        witness: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        CheckRecord {
            check_id: check_id.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            lhs: Some(lhs.into()),
            rhs: Some(rhs.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// An ordered collection of check records; order is deterministic.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// True iff every record passed.
    pub fn passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    /// The failing records, in order.
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    /// Look up a record by its check id.
    pub fn get(&self, check_id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.check_id == check_id)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            match r.status {
                Status::Pass => writeln!(f, "PASS {}", r.check_id)?,
                Status::Fail => {
                    writeln!(
                        f,
                        "FAIL {} witness={} lhs={} rhs={}",
                        r.check_id,
                        r.witness.as_deref().unwrap_or("-"),
                        r.lhs.as_deref().unwrap_or("-"),
                        r.rhs.as_deref().unwrap_or("-"),
                    )?;
                }
            }
        }
        Ok(())
    }
}
