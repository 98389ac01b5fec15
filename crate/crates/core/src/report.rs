//! Deterministic plain-text run reports.

use std::fmt::Write as _;
use std::time::Duration;

use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Pass,
    Unsupported,
    /// A theorem instance was violated.
    Fail,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Unsupported => "unsupported",
        }
    }

    /// Process exit code: 0 pass, 1 theorem failure, 3 unsupported.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Unsupported => 3,
        }
    }
}

/// SHA-256 over length-prefixed parts, hex encoded.
pub fn digest<I, B>(parts: I) -> String
where
    I: IntoIterator<Item = B>,
    B: AsRef<[u8]>,
{
    let mut h = Sha256::new();
    for p in parts {
        let p = p.as_ref();
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub items: Vec<String>,
    pub warnings: Vec<String>,
    pub outcome: Outcome,
    /// Printed in the footer only; never part of the body.
    pub wall_time: Option<Duration>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs_digest: String) -> Self {
        RunReport { command: command.into(), inputs_digest, items: Vec::new(), warnings: Vec::new(), outcome: Outcome::Pass, wall_time: None }
    }

    pub fn item(&mut self, line: impl Into<String>) {
        self.items.push(line.into());
    }

    pub fn warn(&mut self, line: impl Into<String>) {
        self.warnings.push(line.into());
    }

    /// Keeps the worst outcome seen so far.
    pub fn record(&mut self, o: Outcome) {
        self.outcome = self.outcome.max(o);
    }

    /// Everything except the timing footer; identical inputs give identical bodies.
    pub fn body(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "inputs: sha256:{}", self.inputs_digest);
        for i in &self.items {
            let _ = writeln!(s, "{i}");
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        let _ = writeln!(s, "verdict: {}", self.outcome.as_str());
        s
    }

    pub fn render(&self) -> String {
        let mut s = self.body();
        if let Some(t) = self.wall_time {
            let _ = writeln!(s, "--\nwall-time: {:.3}s", t.as_secs_f64());
        }
        s
    }

    /// `key=value` records, one per line.
    pub fn to_records(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command={}", self.command);
        let _ = writeln!(s, "inputs_digest={}", self.inputs_digest);
        for (i, item) in self.items.iter().enumerate() {
            let _ = writeln!(s, "item.{i}={item}");
        }
        for (i, w) in self.warnings.iter().enumerate() {
            let _ = writeln!(s, "warning.{i}={w}");
        }
        let _ = writeln!(s, "verdict={}", self.outcome.as_str());
        s
    }
}
