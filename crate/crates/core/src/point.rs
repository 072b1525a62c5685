//! Ground-set elements and the finite windows used for brute-force checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CoarseError;
use crate::rational::Rational;

/// An element of a ground set.
///
/// Three ground sets cover everything this crate works with: the lattice
/// of pairs of naturals, truncated rational vectors, and explicit finite
/// sets of named atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", try_from = "RawPoint")]
pub enum Point {
    /// A pair (a, b) of naturals, both >= 1.
    Lattice(u64, u64),
    /// A vector with finitely many stored coordinates; any coordinate
    /// beyond the stored ones reads exactly 0.
    Vector(Vec<Rational>),
    /// A named element of an explicit finite set.
    Atom(String),
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
enum RawPoint {
    Lattice(u64, u64),
    Vector(Vec<Rational>),
    Atom(String),
}

impl TryFrom<RawPoint> for Point {
    type Error = CoarseError;

    fn try_from(raw: RawPoint) -> Result<Self, CoarseError> {
        match raw {
            RawPoint::Lattice(a, b) => {
                if a == 0 || b == 0 {
                    return Err(CoarseError::InvalidParameter(format!(
                        "lattice coordinates start at 1, got ({a},{b})"
                    )));
                }
                Ok(Point::Lattice(a, b))
            }
            RawPoint::Vector(coords) => Ok(Point::Vector(coords)),
            RawPoint::Atom(id) => Ok(Point::Atom(id)),
        }
    }
}

impl Point {
    pub fn lattice(a: u64, b: u64) -> Self {
        assert!(a >= 1 && b >= 1, "lattice coordinates start at 1");
        Point::Lattice(a, b)
    }

    pub fn vector(coords: Vec<Rational>) -> Self {
        Point::Vector(coords)
    }

    pub fn atom(id: impl Into<String>) -> Self {
        Point::Atom(id.into())
    }

    /// Coordinate n (1-based) of a vector point; 0 beyond the stored ones.
    pub fn coordinate(&self, n: u64) -> Result<Rational, CoarseError> {
        match self {
            Point::Vector(coords) => Ok(coords
                .get((n - 1) as usize)
                .cloned()
                .unwrap_or_else(Rational::zero)),
            other => Err(CoarseError::KindMismatch {
                metric: "coordinate",
                point: other.kind_name(),
            }),
        }
    }

    pub fn as_lattice(&self) -> Result<(u64, u64), CoarseError> {
        match self {
            Point::Lattice(a, b) => Ok((*a, *b)),
            other => Err(CoarseError::KindMismatch {
                metric: "lattice",
                point: other.kind_name(),
            }),
        }
    }

    pub(crate) fn kind_name(&self) -> &'static str {
        match self {
            Point::Lattice(..) => "lattice",
            Point::Vector(..) => "vector",
            Point::Atom(..) => "atom",
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Lattice(a, b) => write!(f, "({a},{b})"),
            Point::Vector(coords) => {
                write!(f, "[")?;
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
            Point::Atom(id) => write!(f, "{id}"),
        }
    }
}

/// A finite, deterministically enumerable region of a ground set.
///
/// Windows stand in for the (typically infinite) ground set in every
/// brute-force check; enumeration order is lexicographic and stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", try_from = "RawWindow")]
pub enum Window {
    /// {1..aMax} x {1..bMax} on the lattice.
    #[serde(rename_all = "camelCase")]
    LatticeBox { a_max: u64, b_max: u64 },
    /// The k-fold product of a finite value list, one copy per coordinate.
    VectorGrid {
        dimension: u64,
        values: Vec<Rational>,
    },
    /// An explicit finite point list (sorted, deduplicated).
    Explicit(Vec<Point>),
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
enum RawWindow {
    #[serde(rename_all = "camelCase")]
    LatticeBox { a_max: u64, b_max: u64 },
    VectorGrid {
        dimension: u64,
        values: Vec<Rational>,
    },
    Explicit(Vec<Point>),
}

impl TryFrom<RawWindow> for Window {
    type Error = CoarseError;

    fn try_from(raw: RawWindow) -> Result<Self, CoarseError> {
        match raw {
            RawWindow::LatticeBox { a_max, b_max } => {
                if a_max == 0 || b_max == 0 {
                    return Err(CoarseError::InvalidParameter(
                        "lattice box bounds start at 1".into(),
                    ));
                }
                Ok(Window::LatticeBox { a_max, b_max })
            }
            RawWindow::VectorGrid { dimension, values } => Window::vector_grid(dimension, values),
            RawWindow::Explicit(points) => Window::explicit(points),
        }
    }
}

impl Window {
    pub fn lattice_box(a_max: u64, b_max: u64) -> Self {
        assert!(a_max >= 1 && b_max >= 1, "lattice box bounds start at 1");
        Window::LatticeBox { a_max, b_max }
    }

    /// Grid of `values`^`dimension`; values are sorted and deduplicated so
    /// enumeration is lexicographic.
    pub fn vector_grid(dimension: u64, mut values: Vec<Rational>) -> Result<Self, CoarseError> {
        if dimension == 0 {
            return Err(CoarseError::InvalidParameter(
                "vector grid dimension must be >= 1".into(),
            ));
        }
        if values.is_empty() {
            return Err(CoarseError::InvalidParameter(
                "vector grid needs at least one value".into(),
            ));
        }
        values.sort();
        values.dedup();
        Ok(Window::VectorGrid { dimension, values })
    }

    /// Explicit window; points are sorted and deduplicated and must all
    /// belong to one ground set (same variant, same vector dimension).
    pub fn explicit(mut points: Vec<Point>) -> Result<Self, CoarseError> {
        points.sort();
        points.dedup();
        if let Some(first) = points.first() {
            for p in &points[1..] {
                let compatible = match (first, p) {
                    (Point::Lattice(..), Point::Lattice(..)) => true,
                    (Point::Atom(..), Point::Atom(..)) => true,
                    (Point::Vector(a), Point::Vector(b)) => a.len() == b.len(),
                    _ => false,
                };
                if !compatible {
                    return Err(CoarseError::InvalidParameter(format!(
                        "explicit window mixes ground sets: {first} vs {p}"
                    )));
                }
            }
        }
        Ok(Window::Explicit(points))
    }

    /// Number of points, or an overflow error for absurdly large grids.
    pub fn len(&self) -> Result<u64, CoarseError> {
        match self {
            Window::LatticeBox { a_max, b_max } => a_max
                .checked_mul(*b_max)
                .ok_or_else(|| CoarseError::NumericOverflow("lattice box size".into())),
            Window::VectorGrid { dimension, values } => {
                let base = values.len() as u64;
                let mut size: u64 = 1;
                for _ in 0..*dimension {
                    size = size
                        .checked_mul(base)
                        .ok_or_else(|| CoarseError::NumericOverflow("vector grid size".into()))?;
                }
                Ok(size)
            }
            Window::Explicit(points) => Ok(points.len() as u64),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Window::Explicit(points) if points.is_empty())
    }

    /// Materializes the window in enumeration order.
    pub fn points(&self) -> Result<Vec<Point>, CoarseError> {
        match self {
            Window::LatticeBox { a_max, b_max } => {
                let mut out = Vec::with_capacity(self.len()? as usize);
                for a in 1..=*a_max {
                    for b in 1..=*b_max {
                        out.push(Point::Lattice(a, b));
                    }
                }
                Ok(out)
            }
            Window::VectorGrid { dimension, values } => {
                let size = self.len()?;
                if size > u32::MAX as u64 {
                    return Err(CoarseError::NumericOverflow(
                        "vector grid too large to materialize".into(),
                    ));
                }
                let k = *dimension as usize;
                let base = values.len();
                let mut out = Vec::with_capacity(size as usize);
                let mut idx = vec![0usize; k];
                loop {
                    out.push(Point::Vector(
                        idx.iter().map(|&i| values[i].clone()).collect(),
                    ));
                    // odometer increment, last coordinate fastest
                    let mut pos = k;
                    loop {
                        if pos == 0 {
                            return Ok(out);
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < base {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            }
            Window::Explicit(points) => Ok(points.clone()),
        }
    }

    /// Whether a point sits on the enumeration boundary of the window;
    /// used to flag possibly clipped sections.
    pub(crate) fn on_boundary(&self, p: &Point) -> bool {
        match (self, p) {
            (Window::LatticeBox { a_max, b_max }, Point::Lattice(a, b)) => {
                *a == *a_max || *b == *b_max
            }
            (Window::VectorGrid { values, .. }, Point::Vector(coords)) => {
                let lo = values.first();
                let hi = values.last();
                coords
                    .iter()
                    .any(|c| Some(c) == lo || Some(c) == hi)
            }
            _ => false,
        }
    }
}
