//! Pass/fail reports shared by the checkers and the command line.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn pass(&mut self, id: impl Into<String>) {
        self.checks.push(Check { id: id.into(), status: Status::Pass, witness: None, timing_ms: None });
    }

    pub fn fail(&mut self, id: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            timing_ms: None,
        });
    }

    /// Records a check from an optional witness of failure.
    pub fn record(&mut self, id: impl Into<String>, witness: Option<String>) {
        match witness {
            None => self.pass(id),
            Some(w) => self.fail(id, w),
        }
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.id = format!("{prefix}{}", c.id);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Sorts by id so that merged reports are deterministic.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            let mut line = format!("{status}  {:width$}", c.id, width = width);
            if let Some(t) = c.timing_ms {
                let _ = write!(line, "  {t} ms");
            }
            if let Some(w) = &c.witness {
                let _ = write!(line, "  {w}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let failed = self.failures().count();
        let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), failed);
        out
    }
}
