//! Bounded coarse structures attached to families of pseudometrics.
//!
//! A family D of pseudometrics on a set X induces a coarse structure whose
//! controlled sets are the relations E ⊆ X × X that are uniformly bounded
//! in every member of D. This crate makes that structure executable at
//! desk scale, with exact rational arithmetic throughout:
//!
//! * [`Pseudometric`] / [`PseudometricFamily`] — the built-in distance
//!   functions (coordinate distances on vectors, the exponential and
//!   stripe maps on the lattice of natural pairs, the discrete metric and
//!   metrized sums), an exhaustive axiom checker, and metrization.
//! * [`Entourage`] — symbolic relations (explicit pair sets, metric balls,
//!   product boxes, the lattice box-plus-stripes shape) closed under
//!   union, inverse and composition, with decidable membership and
//!   window-restricted containment and sections.
//! * [`BoundCertificate`] — per-index bounds witnessing that a relation is
//!   controlled, exhaustive verification, the bound algebra for the
//!   coarse-structure closure operations, the [`envelope`]
//!   over-approximation and its soundness oracle, properness of sections,
//!   and the strong-generation test.
//! * [`defeat_lattice`] / [`defeat_product`] — diagonalization procedures
//!   that, given any finite certified candidate list, construct a
//!   controlled escapee plus explicit per-candidate witness pairs.
//!
//! Brute-force checks run over a finite [`Window`] under a configurable
//! evaluation [`Budget`]; enumeration parallelizes through rayon when the
//! `parallel` feature (default) is enabled, with identical reports either
//! way.

mod budget;
mod certificate;
mod defeat;
mod entourage;
mod error;
mod exec;
mod metric;
mod point;
mod rational;
mod report;

pub use budget::{Budget, CheckOptions, Strategy, DEFAULT_BUDGET};
pub use certificate::{
    cert_compose, cert_diagonal, cert_inverse, cert_union, certify_ball, certify_box,
    certify_lattice_envelope, envelope, envelope_soundness_check, properness_check,
    strongly_generates_check, verify_certificate, BoundCertificate, Envelope,
};
pub use defeat::{defeat_lattice, defeat_product, DefeatReport, DefeatWitness};
pub use entourage::{
    compose, invert, section, subset_on_window, unite, BoundProfile, Containment, Entourage,
    SectionResult,
};
pub use error::CoarseError;
pub use metric::{
    check_pseudometric_axioms, Distance, MetricIndex, Pseudometric, PseudometricFamily,
};
pub use point::{Point, Window};
pub use rational::Rational;
pub use report::{AxiomKind, BudgetUsage, CandidateFailure, CheckReport, Verdict, Violation};
