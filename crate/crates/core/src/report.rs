//! Structured pass/fail records written as JSON lines.

use std::fmt::Display;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One verified relation: `{relation, input, lhs, rhs, pass}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckRecord {
    pub relation: String,
    pub input: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn compare<T: PartialEq + Display>(
        relation: impl Into<String>,
        input: impl Into<String>,
        lhs: &T,
        rhs: &T,
    ) -> Self {
        CheckRecord {
            relation: relation.into(),
            input: input.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
        }
    }

    pub fn numeric(relation: impl Into<String>, input: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let pass = (lhs - rhs).abs() <= tol;
        CheckRecord {
            relation: relation.into(),
            input: input.into(),
            lhs: format!("{lhs:e}"),
            rhs: format!("{rhs:e}"),
            pass,
        }
    }

    pub fn flag(relation: impl Into<String>, input: impl Into<String>, detail: impl Into<String>, pass: bool) -> Self {
        CheckRecord { relation: relation.into(), input: input.into(), lhs: detail.into(), rhs: String::new(), pass }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub name: String,
    pub records: Vec<CheckRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Summary {
    pub name: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), records: Vec::new() }
    }

    pub fn push(&mut self, rec: CheckRecord) {
        self.records.push(rec);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn summary(&self) -> Summary {
        let passed = self.records.iter().filter(|r| r.pass).count();
        Summary {
            name: self.name.clone(),
            total: self.records.len(),
            passed,
            failed: self.records.len() - passed,
            pass: passed == self.records.len(),
        }
    }

    /// Appends one JSON object per record to `path`.
    pub fn append_jsonl(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
        for r in &self.records {
            serde_json::to_writer(&mut f, r)?;
            writeln!(f)?;
        }
        Ok(())
    }
}
