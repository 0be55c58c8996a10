//! Verification report assembly: one record per executed check, rendered
//! identically as JSON and as human-readable text. Wall times are kept off
//! both renderings so reports stay byte-deterministic across runs.

use serde_json::{json, Value};

/// Pretty-printed JSON with a trailing newline, the on-disk report format.
pub fn json_text(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

pub struct CheckRecord {
    pub id: String,
    pub n: usize,
    /// Stable slug naming the claim the check verifies.
    pub source: &'static str,
    pub expected: String,
    pub measured: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "n": self.n,
            "source": self.source,
            "expected": self.expected,
            "measured": self.measured,
            "pass": self.pass,
        })
    }
}

pub struct VerificationReport {
    pub n_lo: usize,
    pub n_hi: usize,
    pub targets: Vec<String>,
    pub checks: Vec<CheckRecord>,
    /// Set when a resource limit aborted the run; the records gathered so
    /// far are preserved.
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0 && self.error.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": "verify",
            "n_range": [self.n_lo, self.n_hi],
            "targets": self.targets,
            "checks": self.checks.iter().map(CheckRecord::to_json).collect::<Vec<_>>(),
            "total": self.checks.len(),
            "failed": self.failed(),
            "error": self.error,
        })
    }

    /// Text rendering with exactly the same records as the JSON.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            let verdict = if check.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "[{}] {}: expected {}, measured {} ({})\n",
                verdict, check.id, check.expected, check.measured, check.source
            ));
        }
        out.push_str(&format!(
            "{} checks, {} failed\n",
            self.checks.len(),
            self.failed()
        ));
        if let Some(err) = &self.error {
            out.push_str(&format!("aborted: {err}\n"));
        }
        out
    }
}
