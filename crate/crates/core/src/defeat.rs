//! Diagonalization engines.
//!
//! Given any finite list of certified entourages proposed as a strongly
//! generating family, these procedures construct a controlled set that no
//! candidate contains, together with one explicit witness pair per
//! candidate, verified by direct membership evaluation on both sides.
//! Everything is exact and deterministic: identical inputs produce
//! identical reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::CheckOptions;
use crate::certificate::{
    certify_box, certify_lattice_envelope, envelope, verify_certificate, BoundCertificate,
    Envelope,
};
use crate::entourage::{BoundProfile, Entourage};
use crate::error::CoarseError;
use crate::metric::{MetricIndex, Pseudometric, PseudometricFamily};
use crate::point::{Point, Window};
use crate::rational::Rational;

/// Evidence that one candidate fails to contain the escapee.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DefeatWitness {
    /// 1-based candidate number.
    pub candidate: usize,
    pub pair: (Point, Point),
    /// The pair is in the escapee (checked by membership evaluation).
    pub in_escapee: bool,
    /// The pair is outside the candidate's envelope (lattice case) or
    /// violates the candidate's certificate at its own coordinate
    /// (product case).
    pub not_in_candidate: bool,
}

/// The escapee, its own certificate, and per-candidate witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DefeatReport {
    pub escapee: Entourage,
    pub escapee_certificate: BoundCertificate,
    pub witnesses: Vec<DefeatWitness>,
    /// True iff every witness is in the escapee and outside its candidate.
    pub all_verified: bool,
}

impl DefeatReport {
    fn new(
        escapee: Entourage,
        escapee_certificate: BoundCertificate,
        witnesses: Vec<DefeatWitness>,
    ) -> Self {
        let all_verified = witnesses
            .iter()
            .all(|w| w.in_escapee && w.not_in_candidate);
        DefeatReport {
            escapee,
            escapee_certificate,
            witnesses,
            all_verified,
        }
    }
}

/// Largest first coordinate appearing in the window; the lattice family is
/// materialized up to this index (higher stripe maps vanish on the window).
fn lattice_family_for(window: &Window) -> Result<PseudometricFamily, CoarseError> {
    if let Window::LatticeBox { a_max, .. } = window {
        return Ok(PseudometricFamily::lattice(*a_max));
    }
    let mut max_a = 0;
    for p in window.points()? {
        let (a, _) = p.as_lattice()?;
        max_a = max_a.max(a);
    }
    Ok(PseudometricFamily::lattice(max_a))
}

/// The envelope used for the "not in the candidate" half of a witness: a
/// candidate that already is a box-plus-stripes entourage is its own
/// envelope; anything else is over-approximated from its certificate.
fn candidate_envelope(
    e: &Entourage,
    certificate: &BoundCertificate,
) -> Result<Envelope, CoarseError> {
    match e {
        Entourage::LatticeEnvelope { m, stripes } => Ok(Envelope {
            m: *m,
            stripes: stripes.clone(),
        }),
        _ => envelope(certificate),
    }
}

/// Defeats a finite candidate list on the lattice.
///
/// Each candidate is first verified against its certificate over the
/// lattice family on the window (a failure is a precondition error naming
/// the candidate). The escapee is the box-plus-stripes entourage with box
/// size 1 whose stripe at index m exceeds candidate m's own stripe bound
/// there; witness m sits on stripe m, inside the escapee and outside
/// candidate m's envelope.
pub fn defeat_lattice(
    candidates: &[(Entourage, BoundCertificate)],
    window: &Window,
    options: &CheckOptions,
) -> Result<DefeatReport, CoarseError> {
    let family = lattice_family_for(window)?;
    for (i, (e, c)) in candidates.iter().enumerate() {
        let report = verify_certificate(e, c, &family, window, options)?;
        if !report.is_pass() {
            return Err(CoarseError::CandidateNotCertified {
                index: i + 1,
                detail: report.first_violation_summary(),
            });
        }
    }

    let envelopes = candidates
        .iter()
        .map(|(e, c)| candidate_envelope(e, c))
        .collect::<Result<Vec<_>, _>>()?;

    // stripe m = ceil(R^m_m) + 1, kept integral so witnesses stay on the
    // lattice; equals the raw bound + 1 whenever the bound is integral
    let mut stripe_entries = BTreeMap::new();
    let mut diag_ceilings = Vec::with_capacity(envelopes.len());
    for (i, env) in envelopes.iter().enumerate() {
        let m = (i + 1) as u64;
        let ceiling = env.stripes.bound(m).ceil_nat()?;
        diag_ceilings.push(ceiling);
        stripe_entries.insert(m, Rational::from(ceiling + 1));
    }
    let stripes = BoundProfile::new(stripe_entries, Rational::one())?;
    let escapee = Entourage::lattice_envelope(1, stripes.clone())?;
    let escapee_certificate = certify_lattice_envelope(1, &stripes)?;

    let mut witnesses = Vec::with_capacity(envelopes.len());
    for (i, env) in envelopes.iter().enumerate() {
        let m = (i + 1) as u64;
        let ceiling = diag_ceilings[i];
        let far = env
            .m
            .checked_add(ceiling)
            .and_then(|v| v.checked_add(2))
            .ok_or_else(|| CoarseError::NumericOverflow("witness coordinate".into()))?;
        let pair = (Point::lattice(m, far), Point::lattice(m, env.m + 1));
        let in_escapee = escapee.contains((&pair.0, &pair.1), None)?;
        let not_in_candidate = !env.entourage().contains((&pair.0, &pair.1), None)?;
        witnesses.push(DefeatWitness {
            candidate: i + 1,
            pair,
            in_escapee,
            not_in_candidate,
        });
    }

    Ok(DefeatReport::new(escapee, escapee_certificate, witnesses))
}

/// Defeats candidate certificates over the coordinate family.
///
/// The escapee is the product box doubling each candidate's bound at its
/// own coordinate; the single witness pair goes from the origin to the
/// vector of doubled diagonal bounds, which escapes candidate m at
/// coordinate m because 2R > R for positive R.
pub fn defeat_product(
    candidates: &[BoundCertificate],
    dimension: u64,
) -> Result<DefeatReport, CoarseError> {
    let count = candidates.len() as u64;
    if dimension < count {
        return Err(CoarseError::InvalidParameter(format!(
            "dimension {dimension} is smaller than the candidate count {count}"
        )));
    }

    let mut diagonal = Vec::with_capacity(candidates.len());
    for (i, c) in candidates.iter().enumerate() {
        let m = (i + 1) as u64;
        let bound = c.bound(&MetricIndex::Num(m)).clone();
        if !bound.is_positive() {
            return Err(CoarseError::NegativeBound {
                index: m.to_string(),
                value: bound.to_string(),
            });
        }
        diagonal.push(bound);
    }

    let two = Rational::from(2u64);
    let default = candidates
        .iter()
        .map(|c| c.default_bound().clone())
        .max()
        .map(|d| &d * &two)
        .unwrap_or_else(Rational::one);
    let bounds = BoundProfile::new(
        diagonal
            .iter()
            .enumerate()
            .map(|(i, r)| ((i + 1) as u64, r * &two))
            .collect(),
        default,
    )?;
    let escapee = Entourage::product_box(dimension, bounds.clone())?;
    let escapee_certificate = certify_box(dimension, &bounds)?;

    let origin = Point::vector(vec![Rational::zero(); dimension as usize]);
    let mut far_coords: Vec<Rational> = diagonal.iter().map(|r| r * &two).collect();
    far_coords.resize(dimension as usize, Rational::zero());
    let far = Point::vector(far_coords);

    let mut witnesses = Vec::with_capacity(candidates.len());
    for (i, c) in candidates.iter().enumerate() {
        let m = (i + 1) as u64;
        let in_escapee = escapee.contains((&origin, &far), None)?;
        let d = Pseudometric::CoordinateAbs(m);
        let not_in_candidate = d.eval(&origin, &far)? > *c.bound(&MetricIndex::Num(m));
        witnesses.push(DefeatWitness {
            candidate: i + 1,
            pair: (origin.clone(), far.clone()),
            in_escapee,
            not_in_candidate,
        });
    }

    Ok(DefeatReport::new(escapee, escapee_certificate, witnesses))
}
