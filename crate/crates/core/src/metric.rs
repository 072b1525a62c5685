//! Pseudometrics, indexed families, the axiom checker and metrization.
//!
//! The built-in kinds are exactly the distance functions the rest of the
//! crate reasons about:
//!
//! * `CoordinateAbs(n)` — |x_n - y_n| on vector points,
//! * `LatticeF0` — |2^a - 2^{a'}| on lattice points,
//! * `LatticeFn(n)` — |f_n(x) - f_n(y)| with f_n(a,b) = b if a = n else 0,
//! * `Discrete` — 0 iff equal, else 1 (a metric on any ground set),
//! * `SumWithDiscrete(d)` — d + Discrete, the metrization of d.
//!
//! All evaluation is exact rational arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::CheckOptions;
use crate::error::CoarseError;
use crate::exec::try_collect_indexed;
use crate::point::{Point, Window};
use crate::rational::Rational;
use crate::report::{AxiomKind, BudgetUsage, CheckReport, Violation};

/// Index of a pseudometric within a family: a natural number (0 allowed)
/// or a name. Certificates key their bounds by this.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetricIndex {
    Num(u64),
    Name(String),
}

impl fmt::Display for MetricIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricIndex::Num(n) => write!(f, "{n}"),
            MetricIndex::Name(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for MetricIndex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err("empty pseudometric index".into());
        }
        if s.bytes().all(|b| b.is_ascii_digit()) {
            s.parse::<u64>()
                .map(MetricIndex::Num)
                .map_err(|_| format!("index `{s}` out of range"))
        } else {
            Ok(MetricIndex::Name(s.to_string()))
        }
    }
}

impl From<u64> for MetricIndex {
    fn from(n: u64) -> Self {
        MetricIndex::Num(n)
    }
}

impl Serialize for MetricIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MetricIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Anything that measures an exact distance between two points.
///
/// [`Pseudometric`] implements this; tests inject broken doubles through it
/// to exercise the axiom checker's failure paths.
pub trait Distance: Sync {
    fn distance(&self, x: &Point, y: &Point) -> Result<Rational, CoarseError>;
}

/// A built-in exact pseudometric.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", try_from = "RawPseudometric")]
pub enum Pseudometric {
    /// |x_n - y_n| on vector points (n >= 1).
    CoordinateAbs(u64),
    /// |2^a - 2^{a'}| on lattice points.
    LatticeF0,
    /// |f_n(x) - f_n(y)| with f_n(a,b) = b if a = n else 0 (n >= 1).
    LatticeFn(u64),
    /// 0 iff the points are equal, else 1.
    Discrete,
    /// base + Discrete; separates points whenever base is a pseudometric.
    SumWithDiscrete(Box<Pseudometric>),
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
enum RawPseudometric {
    CoordinateAbs(u64),
    LatticeF0,
    LatticeFn(u64),
    Discrete,
    SumWithDiscrete(Box<Pseudometric>),
}

impl TryFrom<RawPseudometric> for Pseudometric {
    type Error = CoarseError;

    fn try_from(raw: RawPseudometric) -> Result<Self, CoarseError> {
        match raw {
            RawPseudometric::CoordinateAbs(n) => Pseudometric::coordinate_abs(n),
            RawPseudometric::LatticeF0 => Ok(Pseudometric::LatticeF0),
            RawPseudometric::LatticeFn(n) => Pseudometric::lattice_fn(n),
            RawPseudometric::Discrete => Ok(Pseudometric::Discrete),
            RawPseudometric::SumWithDiscrete(base) => Ok(Pseudometric::SumWithDiscrete(base)),
        }
    }
}

impl Pseudometric {
    pub fn coordinate_abs(n: u64) -> Result<Self, CoarseError> {
        if n == 0 {
            return Err(CoarseError::InvalidParameter(
                "coordinate indices start at 1".into(),
            ));
        }
        Ok(Pseudometric::CoordinateAbs(n))
    }

    pub fn lattice_fn(n: u64) -> Result<Self, CoarseError> {
        if n == 0 {
            return Err(CoarseError::InvalidParameter(
                "lattice index 0 belongs to the exponential map; stripe maps start at 1".into(),
            ));
        }
        Ok(Pseudometric::LatticeFn(n))
    }

    /// The index this pseudometric carries within a family. Metrization
    /// keeps indices, so certificates transfer between a family and its
    /// metrized version unchanged.
    pub fn index(&self) -> MetricIndex {
        match self {
            Pseudometric::CoordinateAbs(n) => MetricIndex::Num(*n),
            Pseudometric::LatticeF0 => MetricIndex::Num(0),
            Pseudometric::LatticeFn(n) => MetricIndex::Num(*n),
            Pseudometric::Discrete => MetricIndex::Name("discrete".into()),
            Pseudometric::SumWithDiscrete(base) => base.index(),
        }
    }

    fn kind_name(&self) -> &'static str {
        match self {
            Pseudometric::CoordinateAbs(_) => "coordinateAbs",
            Pseudometric::LatticeF0 => "latticeF0",
            Pseudometric::LatticeFn(_) => "latticeFn",
            Pseudometric::Discrete => "discrete",
            Pseudometric::SumWithDiscrete(_) => "sumWithDiscrete",
        }
    }

    /// Exact evaluation. Symmetric by construction; errors if the points
    /// come from the wrong ground set.
    pub fn eval(&self, x: &Point, y: &Point) -> Result<Rational, CoarseError> {
        match self {
            Pseudometric::CoordinateAbs(n) => {
                let (cx, cy) = (x.coordinate(*n)?, y.coordinate(*n)?);
                Ok((&cx - &cy).abs())
            }
            Pseudometric::LatticeF0 => {
                let (a, _) = self.lattice_coords(x)?;
                let (a2, _) = self.lattice_coords(y)?;
                let diff: BigInt = (BigInt::one() << a) - (BigInt::one() << a2);
                Ok(Rational::from(diff.abs()))
            }
            Pseudometric::LatticeFn(n) => {
                let (a, b) = self.lattice_coords(x)?;
                let (a2, b2) = self.lattice_coords(y)?;
                let fx = if a == *n { b } else { 0 };
                let fy = if a2 == *n { b2 } else { 0 };
                Ok(Rational::from(fx.abs_diff(fy)))
            }
            Pseudometric::Discrete => Ok(if x == y {
                Rational::zero()
            } else {
                Rational::one()
            }),
            Pseudometric::SumWithDiscrete(base) => {
                let d = base.eval(x, y)?;
                Ok(if x == y { d } else { &d + &Rational::one() })
            }
        }
    }

    fn lattice_coords(&self, p: &Point) -> Result<(u64, u64), CoarseError> {
        match p {
            Point::Lattice(a, b) => Ok((*a, *b)),
            other => Err(CoarseError::KindMismatch {
                metric: self.kind_name(),
                point: other.kind_name(),
            }),
        }
    }
}

impl Distance for Pseudometric {
    fn distance(&self, x: &Point, y: &Point) -> Result<Rational, CoarseError> {
        self.eval(x, y)
    }
}

/// A finite indexed family of pseudometrics with unique indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PseudometricFamily {
    members: Vec<Pseudometric>,
}

impl PseudometricFamily {
    pub fn new(members: Vec<Pseudometric>) -> Result<Self, CoarseError> {
        let mut seen = std::collections::BTreeSet::new();
        for m in &members {
            if !seen.insert(m.index()) {
                return Err(CoarseError::DuplicateIndex(m.index().to_string()));
            }
        }
        Ok(PseudometricFamily { members })
    }

    /// {LatticeF0} ∪ {LatticeFn(n) : 1 <= n <= max_index}.
    pub fn lattice(max_index: u64) -> Self {
        let mut members = vec![Pseudometric::LatticeF0];
        members.extend((1..=max_index).map(Pseudometric::LatticeFn));
        PseudometricFamily { members }
    }

    /// {CoordinateAbs(n) : 1 <= n <= dimension}.
    pub fn coordinate(dimension: u64) -> Self {
        PseudometricFamily {
            members: (1..=dimension).map(Pseudometric::CoordinateAbs).collect(),
        }
    }

    pub fn single(d: Pseudometric) -> Self {
        PseudometricFamily { members: vec![d] }
    }

    pub fn members(&self) -> &[Pseudometric] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Replaces every member d by d + Discrete. The result is a family of
    /// genuine metrics generating the same bounded structure; indices are
    /// preserved.
    pub fn metrize(&self) -> PseudometricFamily {
        PseudometricFamily {
            members: self
                .members
                .iter()
                .cloned()
                .map(|d| Pseudometric::SumWithDiscrete(Box::new(d)))
                .collect(),
        }
    }
}

/// Exhaustively checks the four pseudometric axioms on a window:
/// nonnegativity, d(x,x) = 0, symmetry, and the triangle inequality over
/// every point triple. Every violation is reported with its witness tuple.
pub fn check_pseudometric_axioms<D: Distance + ?Sized>(
    d: &D,
    window: &Window,
    options: &CheckOptions,
) -> Result<CheckReport, CoarseError> {
    let n = window.len()?;
    let cost = n
        .checked_mul(n)
        .and_then(|p| n.checked_mul(n).and_then(|q| q.checked_mul(n)).map(|c| p + c))
        .ok_or_else(|| CoarseError::NumericOverflow("axiom check cost".into()))?;
    let charged = options.budget.charge(cost)?;
    let usage = BudgetUsage {
        charged,
        limit: options.budget.limit(),
    };
    let points = window.points()?;

    // Pairwise distance matrix first; the cubic triangle sweep then runs on
    // integer numerators over a common denominator, which is exact.
    let matrix = try_collect_indexed(n * n, options.strategy, |idx| {
        let (i, j) = ((idx / n) as usize, (idx % n) as usize);
        d.distance(&points[i], &points[j]).map(Some)
    })?;

    let mut violations = Vec::new();
    let nn = n as usize;
    for i in 0..nn {
        for j in 0..nn {
            let v = &matrix[i * nn + j];
            if v.is_negative() {
                violations.push(Violation::Axiom {
                    axiom: AxiomKind::Nonnegativity,
                    points: vec![points[i].clone(), points[j].clone()],
                    values: vec![v.clone()],
                });
            }
            if i == j && !v.is_zero() {
                violations.push(Violation::Axiom {
                    axiom: AxiomKind::Identity,
                    points: vec![points[i].clone()],
                    values: vec![v.clone()],
                });
            }
            if i < j && *v != matrix[j * nn + i] {
                violations.push(Violation::Axiom {
                    axiom: AxiomKind::Symmetry,
                    points: vec![points[i].clone(), points[j].clone()],
                    values: vec![v.clone(), matrix[j * nn + i].clone()],
                });
            }
        }
    }

    violations.extend(triangle_sweep(&points, &matrix, options)?);
    Ok(CheckReport::from_violations(violations, usage))
}

/// Checks d(x,z) <= d(x,y) + d(y,z) for all (x,y,z). Scales the matrix to a
/// common denominator so the inner loop compares integers, with an i64 fast
/// path when everything fits.
fn triangle_sweep(
    points: &[Point],
    matrix: &[Rational],
    options: &CheckOptions,
) -> Result<Vec<Violation>, CoarseError> {
    let n = points.len();
    let mut lcm = BigInt::one();
    for v in matrix {
        lcm = lcm.lcm(v.denom());
    }
    let scaled: Vec<BigInt> = matrix
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();

    let small: Option<Vec<i64>> = scaled
        .iter()
        .map(|v| v.to_i64().filter(|x| x.abs() < i64::MAX / 4))
        .collect();

    let violation = |i: usize, j: usize, k: usize| Violation::Axiom {
        axiom: AxiomKind::Triangle,
        points: vec![points[i].clone(), points[j].clone(), points[k].clone()],
        values: vec![
            matrix[i * n + k].clone(),
            matrix[i * n + j].clone(),
            matrix[j * n + k].clone(),
        ],
    };

    let total = (n as u64) * (n as u64) * (n as u64);
    match small {
        Some(ints) => try_collect_indexed(total, options.strategy, |idx| {
            let i = (idx / (n as u64 * n as u64)) as usize;
            let j = ((idx / n as u64) % n as u64) as usize;
            let k = (idx % n as u64) as usize;
            Ok((ints[i * n + k] > ints[i * n + j] + ints[j * n + k]).then(|| violation(i, j, k)))
        }),
        None => try_collect_indexed(total, options.strategy, |idx| {
            let i = (idx / (n as u64 * n as u64)) as usize;
            let j = ((idx / n as u64) % n as u64) as usize;
            let k = (idx % n as u64) as usize;
            Ok(
                (scaled[i * n + k] > &scaled[i * n + j] + &scaled[j * n + k])
                    .then(|| violation(i, j, k)),
            )
        }),
    }
}
