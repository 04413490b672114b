use std::io::Write;

use serde::Serialize;

use crate::params::{Format, Params};
use crate::Failure;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
}

impl Check {
    /// lhs ≤ rhs, slack = rhs − lhs.
    pub fn le(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Check { name: name.into(), lhs, rhs, slack: rhs - lhs, pass: lhs <= rhs }
    }

    /// |value − expected| ≤ tol, reported as lhs = value, rhs = expected.
    pub fn close(name: impl Into<String>, value: f64, expected: f64, tol: f64) -> Self {
        let err = (value - expected).abs();
        Check { name: name.into(), lhs: value, rhs: expected, slack: tol - err, pass: err <= tol }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format, header: &str) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => {
                let mut s = format!("# {header}\n");
                for c in &self.checks {
                    s += &format!(
                        "{} {} lhs={:e} rhs={:e} slack={:e}\n",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name,
                        c.lhs,
                        c.rhs,
                        c.slack
                    );
                }
                let failed = self.checks.iter().filter(|c| !c.pass).count();
                s += &format!("# {}: {} checks, {failed} failed\n", self.suite, self.checks.len());
                s
            }
        }
    }
}

/// Write to --output, or stdout without one.
pub fn emit(params: &Params, text: &str) -> Result<(), Failure> {
    match &params.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(format!("stdout: {e}"))),
    }
}
