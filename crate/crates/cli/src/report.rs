use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub millis: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    pub identity: String,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(identity: &str) -> Self {
        RunReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            identity: identity.to_string(),
            checks: Vec::new(),
        }
    }

    /// Runs `f`, timing it, and records the outcome.
    pub fn run(&mut self, name: &str, f: impl FnOnce() -> (Status, String)) {
        let t = Instant::now();
        let (status, detail) = f();
        self.checks.push(Check {
            name: name.to_string(),
            status,
            detail,
            millis: t.elapsed().as_millis() as u64,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Folds several reports into one, prefixing check names with the
    /// identity they came from.
    pub fn merge(identity: &str, parts: Vec<RunReport>) -> RunReport {
        let mut out = RunReport::new(identity);
        for p in parts {
            for mut c in p.checks {
                c.name = format!("{}/{}", p.identity, c.name);
                out.checks.push(c);
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut s = format!("{}\n", self.identity);
        for c in &self.checks {
            s += &format!(
                "  {:<4}  {:<width$}  {} ({} ms)\n",
                c.status.label(),
                c.name,
                c.detail,
                c.millis
            );
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
