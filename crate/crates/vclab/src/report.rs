//! Structured run reports: one entry per check, deterministic for a
//! fixed seed, rendered as text or JSON. Exit code 0 means no FAIL.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Absent,
    Unknown,
    Finding,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Absent => "ABSENT",
            Status::Unknown => "UNKNOWN",
            Status::Finding => "FINDING",
        }
    }

    pub fn from_flag(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// wall-clock milliseconds per labeled phase; not part of the
    /// deterministic content
    pub timings_ms: Vec<(String, u128)>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, seed: u64) -> RunReport {
        RunReport { command: command.into(), seed, checks: Vec::new(), timings_ms: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, details: impl Into<String>) {
        let name = name.into();
        debug_assert!(
            self.checks.iter().all(|c| c.name != name),
            "duplicate check name {name}"
        );
        self.checks.push(Check { name, status, details: details.into() });
    }

    pub fn pass(&mut self, name: impl Into<String>, ok: bool, details: impl Into<String>) {
        self.push(name, Status::from_flag(ok), details);
    }

    pub fn time(&mut self, label: impl Into<String>, ms: u128) {
        self.timings_ms.push((label.into(), ms));
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            1
        } else {
            0
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.command));
        out.push_str(&format!("seed: {}\n", self.seed));
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:<8} {}\n",
                c.name,
                c.status.label(),
                c.details,
                width = width
            ));
        }
        for (label, ms) in &self.timings_ms {
            out.push_str(&format!("time {label}: {ms} ms\n"));
        }
        let verdict = if self.failed() { "FAIL" } else { "ok" };
        out.push_str(&format!("result: {verdict}\n"));
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_contract() {
        let mut r = RunReport::new("demo", 0);
        r.push("a", Status::Pass, "");
        r.push("b", Status::Absent, "complete search");
        assert_eq!(r.exit_code(), 0);
        r.push("c", Status::Fail, "broken");
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_roundtrips_schema() {
        let mut r = RunReport::new("demo", 7);
        r.push("x", Status::Finding, "interesting");
        r.time("total", 12);
        let json = r.render_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["command"], "demo");
        assert_eq!(v["seed"], 7);
        assert_eq!(v["checks"][0]["status"], "FINDING");
    }
}
