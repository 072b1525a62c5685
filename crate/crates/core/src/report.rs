//! Structured verification evidence.

use serde::{Deserialize, Serialize};

use crate::metric::MetricIndex;
use crate::point::Point;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Which pseudometric axiom a violation witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum AxiomKind {
    Nonnegativity,
    Identity,
    Symmetry,
    Triangle,
}

/// One concrete piece of failure evidence. A failing report always carries
/// at least one of these; every variant names the offending tuple and the
/// exact values involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Violation {
    /// A pseudometric axiom failed on the listed points.
    Axiom {
        axiom: AxiomKind,
        points: Vec<Point>,
        values: Vec<Rational>,
    },
    /// A pair of the entourage exceeds the certified bound of one family
    /// member.
    BoundExceeded {
        index: MetricIndex,
        pair: (Point, Point),
        value: Rational,
        bound: Rational,
    },
    /// A pair of the left relation is missing from the right one.
    NotContained { pair: (Point, Point) },
    /// A section member escapes the box-or-stripe region properness allows.
    SectionEscape { base: Point, member: Point },
    /// A section is larger than its closed-form cardinality bound.
    SectionTooLarge { base: Point, count: u64, bound: u64 },
    /// No candidate contains the probe; one counterexample pair per
    /// candidate.
    ProbeNotCovered {
        probe: usize,
        failures: Vec<CandidateFailure>,
    },
}

/// A pair witnessing that a candidate does not contain some probe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CandidateFailure {
    pub candidate: usize,
    pub pair: (Point, Point),
}

/// Enumeration cost accounting: what the check charged against the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BudgetUsage {
    pub charged: u64,
    pub limit: u64,
}

/// Outcome of a brute-force check: verdict, every violation found (in
/// enumeration order), and the budget accounting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    pub budget: BudgetUsage,
}

impl CheckReport {
    pub(crate) fn from_violations(violations: Vec<Violation>, budget: BudgetUsage) -> Self {
        let verdict = if violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CheckReport {
            verdict,
            violations,
            budget,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict.is_pass()
    }

    /// Short human-readable summary of the first violation, for error
    /// messages that must name a witness.
    pub fn first_violation_summary(&self) -> String {
        match self.violations.first() {
            None => "no violations".to_string(),
            Some(Violation::BoundExceeded {
                index,
                pair,
                value,
                bound,
            }) => format!(
                "d[{index}]({}, {}) = {value} > {bound}",
                pair.0, pair.1
            ),
            Some(Violation::Axiom { axiom, points, .. }) => {
                let pts: Vec<String> = points.iter().map(|p| p.to_string()).collect();
                format!("{axiom:?} fails at ({})", pts.join(", "))
            }
            Some(other) => format!("{other:?}"),
        }
    }
}

