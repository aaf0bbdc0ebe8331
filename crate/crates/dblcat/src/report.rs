//! Line-oriented check reports.
//!
//! Every axiom instance a checker visits becomes one entry; reports render as
//! machine-greppable `PASS`/`FAIL`/`UNKNOWN` lines.

use crate::error::{DblError, Eq3};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct ReportEntry {
    pub check: String,
    pub witness: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: impl Into<String>, witness: impl Into<String>, verdict: Verdict, detail: impl Into<String>) {
        self.entries.push(ReportEntry {
            check: check.into(),
            witness: witness.into(),
            verdict,
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.push(check, witness, Verdict::Pass, "");
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>, detail: impl Into<String>) {
        self.push(check, witness, Verdict::Fail, detail);
    }

    /// Record an equality outcome under the given check name.
    pub fn eq3(&mut self, check: impl Into<String>, witness: impl Into<String>, eq: Eq3) {
        let verdict = match eq {
            Eq3::Equal => Verdict::Pass,
            Eq3::NotEqual => Verdict::Fail,
            Eq3::Unknown => Verdict::Unknown,
        };
        self.push(check, witness, verdict, "");
    }

    /// Record the outcome of a fallible equality evaluation; errors while
    /// building or evaluating a pasting count as failures, not panics.
    pub fn eq_result(&mut self, check: impl Into<String>, witness: impl Into<String>, res: Result<Eq3, DblError>) {
        match res {
            Ok(eq) => self.eq3(check, witness, eq),
            Err(e) => self.fail(check, witness, e.to_string()),
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == Verdict::Pass)
    }

    pub fn has_unknown(&self) -> bool {
        self.entries.iter().any(|e| e.verdict == Verdict::Unknown)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.verdict == Verdict::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        for e in &self.entries {
            let tag = match e.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Unknown => "UNKNOWN",
            };
            if e.detail.is_empty() {
                writeln!(f, "{} {} {}", tag, e.check, e.witness)?;
            } else {
                writeln!(f, "{} {} {} ({})", tag, e.check, e.witness, e.detail)?;
            }
        }
        Ok(())
    }
}
