//! Row-by-row verification reports and their JSON encoding.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Fail,
    /// The checks succeed but a displayed formula disagrees with the computation.
    Discrepancy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RowReport {
    pub table: String,
    pub row: String,
    pub status: RowStatus,
    pub details: Vec<String>,
    pub assumptions_used: Vec<String>,
    pub witnesses: Vec<String>,
}

impl RowReport {
    pub fn new(table: &str, row: &str) -> RowReport {
        RowReport {
            table: table.to_string(),
            row: row.to_string(),
            status: RowStatus::Pass,
            details: Vec::new(),
            assumptions_used: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn detail(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }

    /// Record a failed check; a failure overrides a discrepancy.
    pub fn fail(&mut self, s: impl Into<String>) {
        self.status = RowStatus::Fail;
        self.details.push(format!("FAILED: {}", s.into()));
    }

    pub fn discrepancy(&mut self, s: impl Into<String>) {
        if self.status == RowStatus::Pass {
            self.status = RowStatus::Discrepancy;
        }
        self.details.push(format!("DISCREPANCY: {}", s.into()));
    }

    /// Record `ok` as a pass detail or a failure.
    pub fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.detail(format!("ok: {what}"));
        } else {
            self.fail(what);
        }
    }

    pub fn assume(&mut self, s: impl Into<String>) {
        let s = s.into();
        if !self.assumptions_used.contains(&s) {
            self.assumptions_used.push(s);
        }
    }

    pub fn witness(&mut self, s: impl Into<String>) {
        self.witnesses.push(s.into());
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub table: String,
    pub rows: Vec<RowReport>,
}

impl VerificationReport {
    pub fn count(&self, s: RowStatus) -> usize {
        self.rows.iter().filter(|r| r.status == s).count()
    }

    /// No row failed. Discrepancies do not count as failures.
    pub fn ok(&self) -> bool {
        self.count(RowStatus::Fail) == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_field_names() {
        let mut r = RowReport::new("2", "S'");
        r.assume("alpha != 0");
        r.discrepancy("sign");
        let rep = VerificationReport {
            table: "2".into(),
            rows: vec![r],
        };
        let js = rep.to_json();
        assert!(js.contains("\"assumptionsUsed\""));
        assert!(js.contains("\"status\": \"discrepancy\""));
        let back: VerificationReport = serde_json::from_str(&js).unwrap();
        assert_eq!(back, rep);
        assert!(rep.ok());
    }
}
