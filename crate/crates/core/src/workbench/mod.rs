//! Input documents, batch analyses and self-contained reports.
//!
//! Inputs are TOML; reports are JSON (or plain text for reading). A JSON
//! report carries the resolved algebra, so [`reverify`] can re-check every
//! certificate in it without running any solver.

mod input;
mod report;
mod reverify;

pub use input::{
    format_vector, parse_field, parse_input, parse_vector, structure_spec, AlgebraData, Analysis,
    BuildFailure, ConjugateSpec, Doubling, MetagroupFile, MetagroupSpec, ModuleKind, StructureSpec,
    WorkbenchInput,
};
pub use report::{
    digest_of, emit_report, run_analysis, sha256_hex, CohomologyGroup, CohomologyOutcome,
    ConjugateOutcome, DecomposeOutcome, Entry, Format, IdempotentOutcome, InputEcho, Report,
    Residual, Results, Severity, Timing, VerifyOutcome, REPORT_VERSION,
};
pub use reverify::{reverify, Reverification};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WorkbenchError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(String),
}

impl Severity {
    pub fn exit_code(self) -> i32 {
        match self {
            Severity::Ok => EXIT_OK,
            Severity::Negative => EXIT_NEGATIVE,
            Severity::Error => EXIT_USAGE,
            Severity::Violation => EXIT_VIOLATION,
        }
    }
}
