//! Bound certificates: evidence that a relation is controlled.
//!
//! A relation E belongs to the bounded coarse structure of a pseudometric
//! family D exactly when every d in D is uniformly bounded on E. A
//! [`BoundCertificate`] records such bounds, one per family index plus a
//! default; [`verify_certificate`] checks it exhaustively on a window.
//!
//! On top of that sit the certificate algebra (how bounds transform under
//! union, composition and inversion), the derived certificates of the
//! built-in parametric entourages, the envelope construction that
//! over-approximates any certified lattice relation by a box-plus-stripes
//! entourage, the properness check for sections, and the strong-generation
//! test.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::CheckOptions;
use crate::entourage::{subset_on_window, BoundProfile, Containment, Entourage};
use crate::error::CoarseError;
use crate::exec::try_collect_indexed;
use crate::metric::{MetricIndex, Pseudometric, PseudometricFamily};
use crate::point::{Point, Window};
use crate::rational::Rational;
use crate::report::{BudgetUsage, CandidateFailure, CheckReport, Violation};

/// Positive per-index bounds with a positive default: the witness that a
/// relation is uniformly bounded in every member of a family.
///
/// Bounds are strictly positive; a requested 0 is lifted to 1 (d <= 0
/// implies d <= 1, so membership is unchanged) and negative bounds are
/// rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", try_from = "RawCertificate")]
pub struct BoundCertificate {
    explicit: BTreeMap<MetricIndex, Rational>,
    default: Rational,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct RawCertificate {
    #[serde(default)]
    explicit: BTreeMap<MetricIndex, Rational>,
    default: Rational,
}

impl TryFrom<RawCertificate> for BoundCertificate {
    type Error = CoarseError;

    fn try_from(raw: RawCertificate) -> Result<Self, CoarseError> {
        BoundCertificate::new(raw.explicit, raw.default)
    }
}

fn lift_positive(index: &MetricIndex, value: Rational) -> Result<Rational, CoarseError> {
    if value.is_negative() {
        return Err(CoarseError::NegativeBound {
            index: index.to_string(),
            value: value.to_string(),
        });
    }
    Ok(if value.is_zero() {
        Rational::one()
    } else {
        value
    })
}

impl BoundCertificate {
    pub fn new(
        explicit: BTreeMap<MetricIndex, Rational>,
        default: Rational,
    ) -> Result<Self, CoarseError> {
        let default = lift_positive(&MetricIndex::Name("default".into()), default)?;
        let explicit = explicit
            .into_iter()
            .map(|(k, v)| lift_positive(&k, v).map(|v| (k, v)))
            .collect::<Result<_, _>>()?;
        Ok(BoundCertificate { explicit, default })
    }

    pub fn uniform(default: Rational) -> Result<Self, CoarseError> {
        BoundCertificate::new(BTreeMap::new(), default)
    }

    pub fn bound(&self, index: &MetricIndex) -> &Rational {
        self.explicit.get(index).unwrap_or(&self.default)
    }

    pub fn default_bound(&self) -> &Rational {
        &self.default
    }

    pub fn explicit_entries(&self) -> impl Iterator<Item = (&MetricIndex, &Rational)> {
        self.explicit.iter()
    }

    /// Adds one to every bound (explicit entries and default). This is how
    /// a certificate transfers to the metrized family.
    pub fn plus_one(&self) -> BoundCertificate {
        let one = Rational::one();
        BoundCertificate {
            explicit: self
                .explicit
                .iter()
                .map(|(k, v)| (k.clone(), v + &one))
                .collect(),
            default: &self.default + &one,
        }
    }
}

/// Pointwise maximum: if E and F satisfy c1 and c2, their union satisfies
/// this.
pub fn cert_union(c1: &BoundCertificate, c2: &BoundCertificate) -> BoundCertificate {
    merge_pointwise(c1, c2, |a, b| a.clone().max(b.clone()))
}

/// Pointwise sum: by the triangle inequality, the composition of relations
/// satisfying c1 and c2 satisfies this.
pub fn cert_compose(c1: &BoundCertificate, c2: &BoundCertificate) -> BoundCertificate {
    merge_pointwise(c1, c2, |a, b| a + b)
}

/// Pseudometrics are symmetric, so the inverse relation keeps the same
/// certificate.
pub fn cert_inverse(c: &BoundCertificate) -> BoundCertificate {
    c.clone()
}

/// The diagonal satisfies d(x,x) = 0 <= 1 for every pseudometric.
pub fn cert_diagonal() -> BoundCertificate {
    BoundCertificate {
        explicit: BTreeMap::new(),
        default: Rational::one(),
    }
}

fn merge_pointwise(
    c1: &BoundCertificate,
    c2: &BoundCertificate,
    f: impl Fn(&Rational, &Rational) -> Rational,
) -> BoundCertificate {
    let keys: std::collections::BTreeSet<&MetricIndex> =
        c1.explicit.keys().chain(c2.explicit.keys()).collect();
    BoundCertificate {
        explicit: keys
            .into_iter()
            .map(|k| (k.clone(), f(c1.bound(k), c2.bound(k))))
            .collect(),
        default: f(&c1.default, &c2.default),
    }
}

/// Certificate for a metric ball: the single bound max(radius, 1).
pub fn certify_ball(
    metric: &Pseudometric,
    radius: &Rational,
) -> Result<BoundCertificate, CoarseError> {
    if radius.is_negative() {
        return Err(CoarseError::NegativeBound {
            index: metric.index().to_string(),
            value: radius.to_string(),
        });
    }
    let lifted = radius.clone().max(Rational::one());
    BoundCertificate::new(
        [(metric.index(), lifted.clone())].into_iter().collect(),
        lifted,
    )
}

/// Certificate for a product box: per-coordinate bounds, each lifted to at
/// least 1.
pub fn certify_box(
    dimension: u64,
    bounds: &BoundProfile,
) -> Result<BoundCertificate, CoarseError> {
    let mut explicit = BTreeMap::new();
    for n in 1..=dimension {
        explicit.insert(
            MetricIndex::Num(n),
            bounds.bound(n).clone().max(Rational::one()),
        );
    }
    BoundCertificate::new(
        explicit,
        bounds.default_bound().clone().max(Rational::one()),
    )
}

/// Certificate for a lattice envelope with box size `m` and the given
/// stripe profile: 2^{m+1} for the exponential map and stripes(n) + 2m for
/// every stripe map.
pub fn certify_lattice_envelope(
    m: u64,
    stripes: &BoundProfile,
) -> Result<BoundCertificate, CoarseError> {
    if m == 0 {
        return Err(CoarseError::InvalidParameter(
            "lattice envelope box size must be >= 1".into(),
        ));
    }
    let two_m = Rational::from(2 * m);
    let mut explicit = BTreeMap::new();
    explicit.insert(MetricIndex::Num(0), Rational::pow2(m + 1));
    for (n, bound) in stripes.explicit_entries() {
        explicit.insert(MetricIndex::Num(n), bound + &two_m);
    }
    BoundCertificate::new(explicit, stripes.default_bound() + &two_m)
}

/// Exhaustively checks that every pair of `e` within the window satisfies
/// every bound of the certificate. Violations carry the family index, the
/// pair, the exact value and the exceeded bound, in enumeration order.
pub fn verify_certificate(
    e: &Entourage,
    certificate: &BoundCertificate,
    family: &PseudometricFamily,
    window: &Window,
    options: &CheckOptions,
) -> Result<CheckReport, CoarseError> {
    let n = window.len()?;
    let pairs = n
        .checked_mul(n)
        .ok_or_else(|| CoarseError::NumericOverflow("pair count".into()))?;
    let per_pair = e
        .membership_cost(n)
        .saturating_add(family.len() as u64);
    let charged = options.budget.charge(pairs.saturating_mul(per_pair))?;
    let points = window.points()?;

    let nested = try_collect_indexed(pairs, options.strategy, |idx| {
        let (x, y) = (&points[(idx / n) as usize], &points[(idx % n) as usize]);
        if !e.contains((x, y), Some(window))? {
            return Ok(None);
        }
        let mut found: Vec<Violation> = Vec::new();
        for d in family.members() {
            let value = d.eval(x, y)?;
            let bound = certificate.bound(&d.index());
            if value > *bound {
                found.push(Violation::BoundExceeded {
                    index: d.index(),
                    pair: (x.clone(), y.clone()),
                    value,
                    bound: bound.clone(),
                });
            }
        }
        Ok((!found.is_empty()).then_some(found))
    })?;

    Ok(CheckReport::from_violations(
        nested.into_iter().flatten().collect(),
        BudgetUsage {
            charged,
            limit: options.budget.limit(),
        },
    ))
}

/// Parameters of the box-plus-stripes entourage that contains every
/// lattice pair satisfying some certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Envelope {
    pub m: u64,
    pub stripes: BoundProfile,
}

impl Envelope {
    pub fn entourage(&self) -> Entourage {
        Entourage::LatticeEnvelope {
            m: self.m,
            stripes: self.stripes.clone(),
        }
    }
}

/// Computes the envelope of a lattice certificate: with M_0 the smallest
/// natural >= the exponential-map bound, M is the larger of M_0 and every
/// ceiling of a stripe bound with index <= M_0; the stripes are the
/// certificate's own bounds.
///
/// Every lattice pair satisfying the certificate lies in the resulting
/// envelope: equal first coordinates land in the matching stripe, and
/// distinct first coordinates force all four coordinates below M because
/// the exponential map separates distinct exponents by at least their
/// value.
pub fn envelope(certificate: &BoundCertificate) -> Result<Envelope, CoarseError> {
    let mut stripe_entries = BTreeMap::new();
    for (index, bound) in certificate.explicit_entries() {
        match index {
            MetricIndex::Num(0) => {}
            MetricIndex::Num(n) => {
                stripe_entries.insert(*n, bound.clone());
            }
            MetricIndex::Name(name) => {
                return Err(CoarseError::InvalidParameter(format!(
                    "envelope needs a certificate over natural indices, found `{name}`"
                )));
            }
        }
    }
    let stripes = BoundProfile::new(stripe_entries, certificate.default_bound().clone())?;

    let m0 = certificate.bound(&MetricIndex::Num(0)).ceil_nat()?;
    let mut m = m0;
    let mut covered = 0u64;
    for (n, bound) in stripes.explicit_entries() {
        if n <= m0 {
            covered += 1;
            m = m.max(bound.ceil_nat()?);
        }
    }
    if covered < m0 {
        // some index in 1..=M_0 falls back to the default bound
        m = m.max(stripes.default_bound().ceil_nat()?);
    }
    Ok(Envelope { m, stripes })
}

/// Brute-force soundness oracle for [`envelope`]: every window pair that
/// satisfies the certificate must lie in the envelope entourage.
pub fn envelope_soundness_check(
    certificate: &BoundCertificate,
    env: &Envelope,
    family: &PseudometricFamily,
    window: &Window,
    options: &CheckOptions,
) -> Result<CheckReport, CoarseError> {
    let n = window.len()?;
    let pairs = n
        .checked_mul(n)
        .ok_or_else(|| CoarseError::NumericOverflow("pair count".into()))?;
    let charged = options
        .budget
        .charge(pairs.saturating_mul(family.len() as u64 + 1))?;
    let points = window.points()?;
    let shape = env.entourage();

    let violations = try_collect_indexed(pairs, options.strategy, |idx| {
        let (x, y) = (&points[(idx / n) as usize], &points[(idx % n) as usize]);
        for d in family.members() {
            if d.eval(x, y)? > *certificate.bound(&d.index()) {
                return Ok(None);
            }
        }
        if shape.contains((x, y), Some(window))? {
            Ok(None)
        } else {
            Ok(Some(Violation::NotContained {
                pair: (x.clone(), y.clone()),
            }))
        }
    })?;

    Ok(CheckReport::from_violations(
        violations,
        BudgetUsage {
            charged,
            limit: options.budget.limit(),
        },
    ))
}

/// Properness evidence for an envelope at one base point: the brute-force
/// section must stay inside box-part ∪ stripe-part and its cardinality
/// below the closed-form bound M^2 + 2*floor(stripe bound) + 1.
pub fn properness_check(
    env: &Envelope,
    base: &Point,
    window: &Window,
    options: &CheckOptions,
) -> Result<CheckReport, CoarseError> {
    let (base_a, base_b) = base.as_lattice()?;
    let sec = crate::entourage::section(&env.entourage(), base, window, options)?;
    let n = window.len()?;
    let charged = n; // one membership test per window point

    let stripe_bound = env.stripes.bound(base_a);
    let mut violations = Vec::new();
    for member in &sec.members {
        let (a, b) = member.as_lattice()?;
        let in_box = a <= env.m && b <= env.m && base_a <= env.m && base_b <= env.m;
        let in_stripe = a == base_a && Rational::from(b.abs_diff(base_b)) <= *stripe_bound;
        if !(in_box || in_stripe) {
            violations.push(Violation::SectionEscape {
                base: base.clone(),
                member: member.clone(),
            });
        }
    }

    let cardinality_bound = (env.m as u128) * (env.m as u128)
        + 2 * (stripe_bound.floor_u64()? as u128)
        + 1;
    let count = sec.members.len() as u64;
    if (count as u128) > cardinality_bound {
        violations.push(Violation::SectionTooLarge {
            base: base.clone(),
            count,
            bound: cardinality_bound.min(u64::MAX as u128) as u64,
        });
    }

    Ok(CheckReport::from_violations(
        violations,
        BudgetUsage {
            charged,
            limit: options.budget.limit(),
        },
    ))
}

/// Tests whether a candidate list strongly generates at the window scale:
/// every certified probe must be contained in at least one candidate.
///
/// Probes are verified against their certificates first; a probe that is
/// not actually controlled is a precondition error, not a failure verdict.
pub fn strongly_generates_check(
    candidates: &[Entourage],
    probes: &[(Entourage, BoundCertificate)],
    family: &PseudometricFamily,
    window: &Window,
    options: &CheckOptions,
) -> Result<CheckReport, CoarseError> {
    let mut charged = 0u64;
    for (i, (probe, certificate)) in probes.iter().enumerate() {
        let report = verify_certificate(probe, certificate, family, window, options)?;
        charged = charged.saturating_add(report.budget.charged);
        if !report.is_pass() {
            return Err(CoarseError::ProbeNotCertified {
                index: i,
                detail: report.first_violation_summary(),
            });
        }
    }

    let mut violations = Vec::new();
    for (i, (probe, _)) in probes.iter().enumerate() {
        let mut failures = Vec::new();
        let mut covered = false;
        for (j, candidate) in candidates.iter().enumerate() {
            match subset_on_window(probe, candidate, window, options)? {
                Containment::Holds => {
                    covered = true;
                    break;
                }
                Containment::CounterexampleAt(pair) => {
                    failures.push(CandidateFailure { candidate: j, pair });
                }
            }
        }
        let n = window.len()?;
        charged = charged.saturating_add(
            n.saturating_mul(n)
                .saturating_mul((failures.len().max(1)) as u64),
        );
        if !covered {
            violations.push(Violation::ProbeNotCovered { probe: i, failures });
        }
    }

    Ok(CheckReport::from_violations(
        violations,
        BudgetUsage {
            charged,
            limit: options.budget.limit(),
        },
    ))
}
