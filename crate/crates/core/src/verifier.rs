//! Consistency suites tying the computational modules to transcribed table
//! data: module tables, level tables, named Weyl elements, the H¹ ledger,
//! socle series and maximal-rank subsystems.

pub mod appendix;
pub mod data;
pub mod ledger;
pub mod levels;
pub mod props;
pub mod subsystems;
pub mod tables;
pub mod weyl;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::branching::BranchError;
use crate::characters::CharError;
use crate::chevgroup::ChevError;
use crate::parabolics::ParabolicError;
use crate::rootdata::RootError;

pub use appendix::check_appendix;
pub use ledger::check_h1_ledger;
pub use levels::check_levels;
pub use props::check_props;
pub use subsystems::{check_subsystems, subsystems_maximal};
pub use tables::check_tables;
pub use weyl::check_weyl_claims;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("{file} line {line}: {msg}")]
    Data {
        file: &'static str,
        line: usize,
        msg: String,
    },
    #[error("missing entry {0}")]
    Missing(String),
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Parabolic(#[from] ParabolicError),
    #[error(transparent)]
    Chev(#[from] ChevError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// Checked at the character level only; the module structure rests on
    /// computations outside this crate.
    Partial,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Partial => "partially verified",
            Status::Fail => "FAIL",
        })
    }
}

/// Outcome of one row, claim or entry.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(id: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn failed(id: impl Into<String>, detail: impl Into<String>) -> Check {
        Check::new(id, false, detail)
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<Check>) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} checks, {} pass, {} partial, {} fail",
            self.suite,
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Partial),
            self.count(Status::Fail)
        )?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}: {}", c.status, c.id, c.detail)?;
        }
        Ok(())
    }
}

/// Suite names in report order.
pub const SUITES: &[&str] = &[
    "levels",
    "weyl",
    "h1",
    "tables",
    "appendix",
    "subsystems",
    "props",
];

/// Runs one suite by name.
pub fn run_suite(name: &str, data: &data::DataSet) -> Option<SuiteReport> {
    Some(match name {
        "levels" => check_levels(data),
        "weyl" => check_weyl_claims(data),
        "h1" => check_h1_ledger(data),
        "tables" => check_tables(data),
        "appendix" => check_appendix(data),
        "subsystems" => check_subsystems(data),
        "props" => check_props(data),
        _ => return None,
    })
}
