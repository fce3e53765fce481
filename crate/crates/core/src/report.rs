//! Verification reports and their JSON / Markdown renderings.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::oracle::ZeroVerdict;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleFlags {
    pub pbw: Option<bool>,
    pub pairing: Option<bool>,
    pub numeric: Option<bool>,
}

impl From<&ZeroVerdict> for OracleFlags {
    fn from(v: &ZeroVerdict) -> Self {
        OracleFlags { pbw: v.pbw, pairing: v.pairing, numeric: v.numeric }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub paper_anchor: String,
    pub status: Status,
    pub witness: Option<String>,
    pub oracles: OracleFlags,
    pub elapsed_ms: u64,
}

impl CheckResult {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, status: Status, witness: Option<String>) -> Self {
        CheckResult { id: id.into(), paper_anchor: anchor.into(), status, witness, oracles: OracleFlags::default(), elapsed_ms: 0 }
    }

    pub fn pass(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        CheckResult::new(id, anchor, Status::Pass, None)
    }

    pub fn fail(id: impl Into<String>, anchor: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult::new(id, anchor, Status::Fail, Some(witness.into()))
    }

    pub fn from_bool(id: impl Into<String>, anchor: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            CheckResult::pass(id, anchor)
        } else {
            CheckResult::fail(id, anchor, witness())
        }
    }

    pub fn with_oracles(mut self, v: &ZeroVerdict) -> Self {
        self.oracles = v.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Run a check, turning errors into `unsupported` or `fail` entries and
/// recording the elapsed time.
pub fn timed(id: &str, anchor: &str, f: impl FnOnce() -> Result<CheckResult>) -> CheckResult {
    let t = Instant::now();
    let mut r = match f() {
        Ok(r) => r,
        Err(e @ (Error::Unsupported(_) | Error::Config(_))) => CheckResult::new(id, anchor, Status::Unsupported, Some(e.to_string())),
        Err(e) => CheckResult::fail(id, anchor, e.to_string()),
    };
    r.elapsed_ms = t.elapsed().as_millis() as u64;
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub n: usize,
    pub q: String,
    pub calculus: String,
    pub zn: Option<String>,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {} (n = {}), calculus {}\n\n", self.group, self.n, self.calculus);
        if let Some(z) = &self.zn {
            s.push_str(&format!("Z = `{z}`\n\n"));
        }
        s.push_str("| check | status | oracles | witness | ms |\n|---|---|---|---|---|\n");
        for c in &self.checks {
            let o = [("pbw", c.oracles.pbw), ("pairing", c.oracles.pairing), ("numeric", c.oracles.numeric)]
                .iter()
                .filter_map(|(k, v)| v.map(|b| format!("{k}:{}", if b { "ok" } else { "x" })))
                .collect::<Vec<_>>()
                .join(" ");
            let st = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Unsupported => "unsupported",
            };
            let w = c.witness.as_deref().unwrap_or("").replace('|', "\\|");
            s.push_str(&format!("| {} | {} | {} | {} | {} |\n", c.id, st, o, w, c.elapsed_ms));
        }
        s
    }
}
