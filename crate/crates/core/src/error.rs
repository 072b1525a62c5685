//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by evaluations, checks and constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoarseError {
    /// A pseudometric was evaluated on points of the wrong ground set.
    #[error("pseudometric `{metric}` cannot evaluate {point} points")]
    KindMismatch {
        metric: &'static str,
        point: &'static str,
    },

    /// Composition membership needs a window to search for middle points.
    #[error("composed entourage membership requires a search window")]
    MissingWindow,

    /// The enumeration required by a check exceeds the configured budget.
    #[error("enumeration budget exceeded: check requires {required} evaluations, limit is {limit}")]
    BudgetExceeded { required: u64, limit: u64 },

    /// A bound that must be nonnegative was negative.
    #[error("negative bound {value} for index {index}")]
    NegativeBound { index: String, value: String },

    /// A parameter violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two members of a pseudometric family share an index.
    #[error("duplicate pseudometric index `{0}` in family")]
    DuplicateIndex(String),

    /// A certificate handed to a defeat or generation procedure does not
    /// actually verify on the window.
    #[error("candidate {index} failed certificate verification: {detail}")]
    CandidateNotCertified { index: usize, detail: String },

    /// A probe handed to the generation checker does not verify.
    #[error("probe {index} failed certificate verification: {detail}")]
    ProbeNotCertified { index: usize, detail: String },

    /// A quantity does not fit the integer range the operation needs.
    #[error("numeric overflow: {0}")]
    NumericOverflow(String),
}
