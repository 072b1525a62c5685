//! Enumeration budgets and execution options for the brute-force checks.

use crate::error::CoarseError;

/// Default limit: 10^7 pair evaluations.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Cap on the number of tuple evaluations a single check may enumerate.
///
/// Checks charge a conservative worst-case cost up front and refuse to run
/// when it exceeds the limit, so a typo'd window errors out instead of
/// running for hours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Checks a precomputed cost against the limit.
    pub fn charge(&self, required: u64) -> Result<u64, CoarseError> {
        if required > self.limit {
            Err(CoarseError::BudgetExceeded {
                required,
                limit: self.limit,
            })
        } else {
            Ok(required)
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            limit: DEFAULT_BUDGET,
        }
    }
}

/// How enumeration loops are driven.
///
/// `Parallel` uses rayon when the crate is built with the `parallel`
/// feature (the default) and silently degrades to sequential otherwise.
/// Both paths produce identical reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

/// Options shared by every window-enumeration check.
#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    pub budget: Budget,
    pub strategy: Strategy,
}

impl CheckOptions {
    pub fn with_budget(limit: u64) -> Self {
        CheckOptions {
            budget: Budget::new(limit),
            ..Default::default()
        }
    }

    pub fn sequential(mut self) -> Self {
        self.strategy = Strategy::Sequential;
        self
    }
}
