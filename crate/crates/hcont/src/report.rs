//! Structured pass/fail verdicts with witnesses.

use serde::Serialize;

/// One witness of a failed check: where it failed and how.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    /// Point index the witness refers to, when the failure is pointwise.
    pub point: Option<usize>,
    pub message: String,
}

impl Witness {
    pub fn at(point: usize, message: impl Into<String>) -> Witness {
        Witness {
            point: Some(point),
            message: message.into(),
        }
    }

    pub fn global(message: impl Into<String>) -> Witness {
        Witness {
            point: None,
            message: message.into(),
        }
    }
}

/// Verdict of a predicate together with every witness of failure found.
/// `passed` holds exactly when `failures` is empty.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    /// Which predicate was checked, e.g. `"topology"` or `"lsc"`.
    pub check: String,
    pub passed: bool,
    pub failures: Vec<Witness>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, failures: Vec<Witness>) -> CheckReport {
        CheckReport {
            check: check.into(),
            passed: failures.is_empty(),
            failures,
        }
    }
}
