//! Symbolic relations on X × X with decidable pointwise membership.
//!
//! An [`Entourage`] is a predicate on point pairs: explicit pair sets,
//! metric balls, per-coordinate boxes, the lattice box-plus-stripes shape,
//! and the algebra closing them under union, inverse and composition.
//! Composition is the one existential node; its membership is decided
//! relative to a finite search window.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::CheckOptions;
use crate::error::CoarseError;
use crate::exec::{try_collect_indexed, try_find_first};
use crate::metric::Pseudometric;
use crate::point::{Point, Window};
use crate::rational::Rational;

/// Total map from stripe/coordinate indices (n >= 1) to nonnegative
/// bounds: finitely many explicit entries plus a default for the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", try_from = "RawBoundProfile")]
pub struct BoundProfile {
    explicit: BTreeMap<u64, Rational>,
    default: Rational,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct RawBoundProfile {
    #[serde(default)]
    explicit: BTreeMap<u64, Rational>,
    default: Rational,
}

impl TryFrom<RawBoundProfile> for BoundProfile {
    type Error = CoarseError;

    fn try_from(raw: RawBoundProfile) -> Result<Self, CoarseError> {
        BoundProfile::new(raw.explicit, raw.default)
    }
}

impl BoundProfile {
    pub fn new(
        explicit: BTreeMap<u64, Rational>,
        default: Rational,
    ) -> Result<Self, CoarseError> {
        if default.is_negative() {
            return Err(CoarseError::NegativeBound {
                index: "default".into(),
                value: default.to_string(),
            });
        }
        for (n, v) in &explicit {
            if *n == 0 {
                return Err(CoarseError::InvalidParameter(
                    "bound profile indices start at 1".into(),
                ));
            }
            if v.is_negative() {
                return Err(CoarseError::NegativeBound {
                    index: n.to_string(),
                    value: v.to_string(),
                });
            }
        }
        Ok(BoundProfile { explicit, default })
    }

    /// Profile with no explicit entries.
    pub fn uniform(default: Rational) -> Result<Self, CoarseError> {
        BoundProfile::new(BTreeMap::new(), default)
    }

    pub fn bound(&self, n: u64) -> &Rational {
        self.explicit.get(&n).unwrap_or(&self.default)
    }

    pub fn default_bound(&self) -> &Rational {
        &self.default
    }

    pub fn explicit_entries(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.explicit.iter().map(|(n, v)| (*n, v))
    }

    /// Pointwise comparison against another profile over all indices.
    pub fn le(&self, other: &BoundProfile) -> bool {
        if self.default > other.default {
            return false;
        }
        self.explicit
            .keys()
            .chain(other.explicit.keys())
            .all(|n| self.bound(*n) <= other.bound(*n))
    }
}

/// A symbolic relation on pairs of points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Entourage {
    /// A finite, explicitly listed set of ordered pairs.
    Explicit(Vec<(Point, Point)>),
    /// {(x,y) : d(x,y) <= radius}.
    MetricBall {
        metric: Pseudometric,
        radius: Rational,
    },
    /// {(x,y) : |x_n - y_n| <= bounds(n) for all 1 <= n <= dimension}.
    ProductBox {
        dimension: u64,
        bounds: BoundProfile,
    },
    /// On the lattice: all coordinates <= m, or same first coordinate and
    /// second coordinates within stripes(a) of each other.
    LatticeEnvelope { m: u64, stripes: BoundProfile },
    /// Set union of the parts.
    Union(Vec<Entourage>),
    /// Pair-order swap of the inner relation.
    Inverse(Box<Entourage>),
    /// {(x,y) : exists z with (x,z) in left and (z,y) in right}.
    Compose(Box<Entourage>, Box<Entourage>),
}

/// Builds the inverse relation node.
pub fn invert(e: Entourage) -> Entourage {
    Entourage::Inverse(Box::new(e))
}

/// Builds the union node.
pub fn unite(parts: Vec<Entourage>) -> Entourage {
    Entourage::Union(parts)
}

/// Builds the composition node.
pub fn compose(left: Entourage, right: Entourage) -> Entourage {
    Entourage::Compose(Box::new(left), Box::new(right))
}

impl Entourage {
    pub fn explicit(pairs: Vec<(Point, Point)>) -> Self {
        Entourage::Explicit(pairs)
    }

    pub fn metric_ball(metric: Pseudometric, radius: Rational) -> Self {
        Entourage::MetricBall { metric, radius }
    }

    pub fn product_box(dimension: u64, bounds: BoundProfile) -> Result<Self, CoarseError> {
        if dimension == 0 {
            return Err(CoarseError::InvalidParameter(
                "product box dimension must be >= 1".into(),
            ));
        }
        Ok(Entourage::ProductBox { dimension, bounds })
    }

    pub fn lattice_envelope(m: u64, stripes: BoundProfile) -> Result<Self, CoarseError> {
        if m == 0 {
            return Err(CoarseError::InvalidParameter(
                "lattice envelope box size must be >= 1".into(),
            ));
        }
        Ok(Entourage::LatticeEnvelope { m, stripes })
    }

    /// The diagonal {(p,p)} of a window, as an explicit relation.
    pub fn diagonal_on(window: &Window) -> Result<Self, CoarseError> {
        let pairs = window
            .points()?
            .into_iter()
            .map(|p| (p.clone(), p))
            .collect();
        Ok(Entourage::Explicit(pairs))
    }

    /// Exact membership test. `window` is the middle-point search space for
    /// composition nodes and is required whenever one occurs.
    pub fn contains(
        &self,
        pair: (&Point, &Point),
        window: Option<&Window>,
    ) -> Result<bool, CoarseError> {
        let (x, y) = pair;
        match self {
            Entourage::Explicit(pairs) => Ok(pairs.iter().any(|(a, b)| a == x && b == y)),
            Entourage::MetricBall { metric, radius } => Ok(metric.eval(x, y)? <= *radius),
            Entourage::ProductBox { dimension, bounds } => {
                for n in 1..=*dimension {
                    let diff = (&x.coordinate(n)? - &y.coordinate(n)?).abs();
                    if diff > *bounds.bound(n) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Entourage::LatticeEnvelope { m, stripes } => {
                let (a, b) = x.as_lattice()?;
                let (a2, b2) = y.as_lattice()?;
                if a <= *m && b <= *m && a2 <= *m && b2 <= *m {
                    return Ok(true);
                }
                Ok(a == a2 && Rational::from(b.abs_diff(b2)) <= *stripes.bound(a))
            }
            Entourage::Union(parts) => {
                for part in parts {
                    if part.contains(pair, window)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Entourage::Inverse(inner) => inner.contains((y, x), window),
            Entourage::Compose(left, right) => {
                let w = window.ok_or(CoarseError::MissingWindow)?;
                for z in w.points()? {
                    if left.contains((x, &z), window)? && right.contains((&z, y), window)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Worst-case membership evaluations for one `contains` call on a
    /// window of `n` points; used for budget charging.
    pub(crate) fn membership_cost(&self, n: u64) -> u64 {
        match self {
            Entourage::Explicit(_)
            | Entourage::MetricBall { .. }
            | Entourage::ProductBox { .. }
            | Entourage::LatticeEnvelope { .. } => 1,
            Entourage::Union(parts) => parts
                .iter()
                .map(|p| p.membership_cost(n))
                .fold(1u64, |a, b| a.saturating_add(b)),
            Entourage::Inverse(inner) => inner.membership_cost(n),
            Entourage::Compose(left, right) => left
                .membership_cost(n)
                .saturating_add(right.membership_cost(n))
                .saturating_mul(n.max(1)),
        }
    }
}

/// Outcome of a window-restricted containment check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Containment {
    Holds,
    /// First pair (in enumeration order) inside the left relation but
    /// outside the right one.
    CounterexampleAt((Point, Point)),
}

impl Containment {
    pub fn holds(&self) -> bool {
        matches!(self, Containment::Holds)
    }
}

/// Checks E ⊆ F over all pairs of `window` × `window`; on failure returns
/// the first violating pair in enumeration order.
pub fn subset_on_window(
    e: &Entourage,
    f: &Entourage,
    window: &Window,
    options: &CheckOptions,
) -> Result<Containment, CoarseError> {
    let n = window.len()?;
    let pairs = n
        .checked_mul(n)
        .ok_or_else(|| CoarseError::NumericOverflow("pair count".into()))?;
    let per_pair = e.membership_cost(n).saturating_add(f.membership_cost(n));
    options
        .budget
        .charge(pairs.saturating_mul(per_pair))?;
    let points = window.points()?;

    let witness = try_find_first(pairs, options.strategy, |idx| {
        let (x, y) = (&points[(idx / n) as usize], &points[(idx % n) as usize]);
        if e.contains((x, y), Some(window))? && !f.contains((x, y), Some(window))? {
            Ok(Some((x.clone(), y.clone())))
        } else {
            Ok(None)
        }
    })?;
    Ok(match witness {
        None => Containment::Holds,
        Some(pair) => Containment::CounterexampleAt(pair),
    })
}

/// All window points related to a fixed base point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SectionResult {
    pub base: Point,
    /// {y in window : (y, base) in E}, in enumeration order.
    pub members: Vec<Point>,
    /// Set when a member touches the window boundary, i.e. the window may
    /// clip the true section.
    pub truncated: bool,
}

/// Computes the section of `e` at `base` over `window`. For symmetric
/// relations this is the set of points the base is related to.
pub fn section(
    e: &Entourage,
    base: &Point,
    window: &Window,
    options: &CheckOptions,
) -> Result<SectionResult, CoarseError> {
    let n = window.len()?;
    options
        .budget
        .charge(n.saturating_mul(e.membership_cost(n)))?;
    let points = window.points()?;

    let members = try_collect_indexed(n, options.strategy, |idx| {
        let y = &points[idx as usize];
        Ok(e.contains((y, base), Some(window))?.then(|| y.clone()))
    })?;
    let truncated = members.iter().any(|p| window.on_boundary(p));
    Ok(SectionResult {
        base: base.clone(),
        members,
        truncated,
    })
}
