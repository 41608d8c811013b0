//! Verification report model: a versioned list of tasks, each with an
//! opaque check id, replayable parameters, a four-valued status, and a
//! structured witness.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

/// Outcome of one verification task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The property was checked and holds.
    Pass,
    /// The property was checked and does not hold.
    Fail,
    /// The task ran but produced no verdict (sampling exhausted, gated
    /// work, or a precondition makes the check inapplicable).
    Inconclusive,
    /// The task could not run (bad parameters, unsupported input).
    Error,
}

impl Status {
    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Error => "error",
        }
    }
}

/// One executed check with everything needed to replay it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TaskReport {
    pub check: String,
    /// Replay parameters, including the derived per-task seed.
    pub params: Value,
    pub status: Status,
    /// Structured evidence: counts, dimensions, failure locations.
    pub witness: Value,
}

/// Top-level report. The `timestamp` field (seconds since the Unix
/// epoch) is the only field allowed to differ between two runs with the
/// same seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub timestamp: u64,
    pub tasks: Vec<TaskReport>,
}

impl Report {
    #[must_use]
    pub fn new(tasks: Vec<TaskReport>) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Report {
            version: 1,
            timestamp,
            tasks,
        }
    }

    /// Process exit code: zero exactly when no task failed or errored.
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        let bad = self
            .tasks
            .iter()
            .any(|t| matches!(t.status, Status::Fail | Status::Error));
        i32::from(bad)
    }

    /// One line per task, for terminal consumption.
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tasks {
            out.push_str(&format!(
                "{:<10} {:<13} {}\n",
                t.check,
                t.status.as_str(),
                compact(&t.params)
            ));
            if !matches!(t.status, Status::Pass) {
                out.push_str(&format!("           witness: {}\n", compact(&t.witness)));
            }
        }
        out.push_str(&format!(
            "{} task(s), {} pass, {} fail, {} inconclusive, {} error\n",
            self.tasks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive),
            self.count(Status::Error),
        ));
        out
    }

    fn count(&self, s: Status) -> usize {
        self.tasks.iter().filter(|t| t.status == s).count()
    }

    /// Serializes in the requested format and writes to `out` (a path)
    /// or stdout.
    pub fn write(&self, out: Option<&std::path::Path>, format: Format) -> anyhow::Result<()> {
        let body = match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                s
            }
            Format::Text => self.to_text(),
        };
        match out {
            Some(path) => {
                let mut f = std::fs::File::create(path)?;
                f.write_all(body.as_bytes())?;
            }
            None => {
                std::io::stdout().write_all(body.as_bytes())?;
            }
        }
        Ok(())
    }
}

/// Output format for reports and root-system dumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_else(|_| "<unserializable>".into())
}
