//! Verification reports in markdown and JSON.

use std::fmt::Write;

use serde::Serialize;

/// Bumped whenever a field is added, removed or renamed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    pub counterexample: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub checks: Vec<CheckRecord>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>, mut checks: Vec<CheckRecord>, elapsed_ms: u64) -> Self {
        checks.sort_by(|a, b| (&a.anchor, &a.id).cmp(&(&b.anchor, &b.id)));
        Report { schema_version: SCHEMA_VERSION, command: command.into(), checks, elapsed_ms }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON with every timing field zeroed, for byte-exact comparison.
    pub fn to_scrubbed_json(&self) -> String {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        for c in &mut r.checks {
            c.elapsed_ms = 0;
        }
        r.to_json()
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# Verification report").unwrap();
        writeln!(s).unwrap();
        writeln!(s, "Command: `{}`", self.command).unwrap();
        writeln!(s).unwrap();
        writeln!(
            s,
            "{} passed, {} failed, {} inconclusive ({} ms)",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive),
            self.elapsed_ms
        )
        .unwrap();
        writeln!(s).unwrap();
        writeln!(s, "| status | anchor | check | detail |").unwrap();
        writeln!(s, "|---|---|---|---|").unwrap();
        for c in &self.checks {
            writeln!(s, "| {} | {} | `{}` | {} |", c.status.label(), c.anchor, c.id, escape(&c.detail)).unwrap();
        }
        let failures: Vec<&CheckRecord> = self.checks.iter().filter(|c| c.counterexample.is_some()).collect();
        if !failures.is_empty() {
            writeln!(s).unwrap();
            writeln!(s, "## Counterexamples").unwrap();
            for c in failures {
                writeln!(s).unwrap();
                writeln!(s, "- `{}`: {}", c.id, c.counterexample.as_deref().unwrap_or_default()).unwrap();
            }
        }
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, anchor: &str, status: Status) -> CheckRecord {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            status,
            detail: "d|e".into(),
            counterexample: None,
            elapsed_ms: 7,
        }
    }

    #[test]
    fn ordering_and_verdict() {
        let r = Report::new("verify", vec![record("b", "Z", Status::Pass), record("a", "A", Status::Inconclusive)], 3);
        assert_eq!(r.checks[0].id, "a");
        assert!(r.passed());
        let r = Report::new("verify", vec![record("b", "Z", Status::Fail)], 3);
        assert!(!r.passed());
    }

    #[test]
    fn scrubbing_zeroes_timings() {
        let r = Report::new("verify", vec![record("a", "A", Status::Pass)], 11);
        let v: serde_json::Value = serde_json::from_str(&r.to_scrubbed_json()).unwrap();
        assert_eq!(v["elapsed_ms"], 0);
        assert_eq!(v["checks"][0]["elapsed_ms"], 0);
        assert_eq!(v["checks"][0]["status"], "PASS");
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
    }

    #[test]
    fn markdown_escapes_pipes() {
        let r = Report::new("verify", vec![record("a", "A", Status::Pass)], 0);
        assert!(r.to_markdown().contains("d\\|e"));
    }
}
