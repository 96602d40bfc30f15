//! Library half of the `equising` command-line tool: problem and sweep
//! files, report envelopes, table rendering and exit codes.

pub mod output;
pub mod problem;
pub mod sweep;
pub mod table;

use equising_core::{Error, KernelError, Verdict};

pub use output::{InvariantsEnvelope, Meta, ReportEnvelope};
pub use problem::{ProblemFile, ProblemOptions};
pub use sweep::{SweepError, SweepRow, SweepSpec};

pub mod exit {
    pub const OK: u8 = 0;
    pub const INCONCLUSIVE: u8 = 1;
    pub const INVALID: u8 = 2;
    pub const NOT_FINITE: u8 = 3;
}

/// Exit code of `check` for a verdict.
pub fn verdict_exit_code(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::TsmoothOrEmpty => exit::OK,
        Verdict::Inconclusive => exit::INCONCLUSIVE,
        Verdict::HypothesesFail => exit::INVALID,
    }
}

/// Exit code of `invariants` for a failure: 3 when a colength is not
/// finite (non-reduced germ, or escalation exhausted), 2 otherwise.
pub fn invariants_error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NonReduced) | Some(Error::Kernel(KernelError::NotFinite { .. })) => exit::NOT_FINITE,
        _ => exit::INVALID,
    }
}
