//! Outcome of a single check.

use std::fmt;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `detail` is the canonical quotient for symbolic checks, the relative error
/// for numeric ones, or the error message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Runs `f`, timing it. `Ok((true, detail))` is a pass, `Ok((false, detail))`
    /// a failure and `Err(msg)` an error.
    pub fn run<E: fmt::Display>(name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String), E>) -> Self {
        let start = Instant::now();
        let (status, detail) = match f() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Error, e.to_string()),
        };
        CheckReport {
            name: name.into(),
            status,
            detail,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.status, self.name, self.detail)
    }
}
