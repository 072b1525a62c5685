//! Library half of the batch verifier: spec parsing, command dispatch and
//! report assembly. The binary in `main.rs` is a thin argv wrapper so
//! integration tests can drive everything in-process.

pub mod report;
pub mod run;
pub mod spec;

use thiserror::Error;

/// Process-level failure classes; each maps to a distinct exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed spec file (exit 2). serde_json messages carry the line
    /// and column of the problem.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed but inconsistent spec, or an unusable flag (exit 2).
    #[error("validation error: {0}")]
    Validation(String),
    /// The run would exceed its evaluation budget (exit 3).
    #[error("budget overflow: {0}")]
    Budget(String),
    /// An evaluation-level invariant broke mid-run (exit 4).
    #[error("internal invariant violation: {0}")]
    Internal(String),
}

/// Exit codes: 0 pass, 1 fail-with-witness, 2 parse/validation error,
/// 3 budget overflow, 4 internal invariant violation.
impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

/// Hex-encoded SHA-256 of the raw spec file bytes, recorded in reports as
/// provenance.
pub fn spec_hash(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}
