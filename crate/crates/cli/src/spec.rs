//! The declarative spec document: one JSON object per file describing a
//! ground set, a pseudometric family, a window, named entourages and
//! certificates, and per-command parameters.
//!
//! All numeric literals are exact rational strings ("7", "3/2"); there is
//! no floating point anywhere in the interchange format. Parsing is strict
//! (unknown fields rejected) and `serialize(parse(s))` parses back to an
//! equal document.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use coarse_core::{
    BoundCertificate, BoundProfile, CoarseError, Entourage, Envelope, Point, Pseudometric,
    PseudometricFamily, Rational, Window,
};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SpecDocument {
    pub ground_set: GroundSetSpec,
    pub family: FamilySpec,
    pub window: Window,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub entourages: BTreeMap<String, EntourageSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub certificates: BTreeMap<String, BoundCertificate>,
    /// Name pairs asserting "this entourage is certified by this
    /// certificate"; consumed by the axioms closure suite and reusable
    /// from command parameter blocks.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certified: Vec<Binding>,
    #[serde(default)]
    pub commands: Commands,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum GroundSetSpec {
    Lattice,
    Vector { dimension: u64 },
    Atoms { ids: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum FamilySpec {
    /// The exponential map plus stripe maps 1..=maxIndex.
    #[serde(rename_all = "camelCase")]
    Lattice {
        max_index: u64,
        #[serde(default)]
        metrized: bool,
    },
    /// Coordinate distances 1..=dimension.
    Coordinate {
        dimension: u64,
        #[serde(default)]
        metrized: bool,
    },
    /// An explicit member list.
    Explicit {
        members: Vec<Pseudometric>,
        #[serde(default)]
        metrized: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Binding {
    pub entourage: String,
    pub certificate: String,
}

/// A named, possibly reference-linked entourage. Union, inverse and
/// composition refer to other entries by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EntourageSpec {
    Explicit { pairs: Vec<(Point, Point)> },
    MetricBall { metric: Pseudometric, radius: Rational },
    ProductBox { dimension: u64, bounds: BoundProfile },
    LatticeEnvelope { m: u64, stripes: BoundProfile },
    Union { parts: Vec<String> },
    Inverse { inner: String },
    Compose { left: String, right: String },
    /// The diagonal of the spec's window.
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Commands {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomsParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub envelope: Option<EnvelopeParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proper: Option<ProperParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defeat: Option<DefeatParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generates: Option<GeneratesParams>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VerifyParams {
    pub entourage: String,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AxiomsParams {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct EnvelopeParams {
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ProperParams {
    pub envelope: Envelope,
    pub bases: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "mode")]
pub enum DefeatParams {
    /// Candidates are (entourage, certificate) bindings on the lattice.
    Lattice { candidates: Vec<Binding> },
    /// Candidates are certificate names over coordinate indices.
    Product {
        candidates: Vec<String>,
        dimension: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GeneratesParams {
    pub candidates: Vec<String>,
    pub probes: Vec<Binding>,
}

/// A spec document with every name resolved into core values.
#[derive(Debug)]
pub struct Resolved {
    pub family: PseudometricFamily,
    pub window: Window,
    pub entourages: BTreeMap<String, Entourage>,
    pub certificates: BTreeMap<String, BoundCertificate>,
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<SpecDocument, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("spec documents serialize");
        out.push('\n');
        out
    }

    /// Validates the document and resolves every name. `window_override`
    /// replaces the document's window before validation.
    pub fn resolve(&self, window_override: Option<Window>) -> Result<Resolved, CliError> {
        let window = window_override.unwrap_or_else(|| self.window.clone());
        self.check_window_matches_ground_set(&window)?;

        let family = self.build_family()?;
        for d in family.members() {
            self.check_metric_matches_ground_set(d)?;
        }

        let mut entourages = BTreeMap::new();
        for name in self.entourages.keys() {
            let mut trail = Vec::new();
            let value = self.resolve_entourage(name, &window, &mut trail)?;
            entourages.insert(name.clone(), value);
        }

        for binding in &self.certified {
            self.lookup_entourage_name(&binding.entourage)?;
            self.lookup_certificate_name(&binding.certificate)?;
        }

        Ok(Resolved {
            family,
            window,
            entourages,
            certificates: self.certificates.clone(),
        })
    }

    fn build_family(&self) -> Result<PseudometricFamily, CliError> {
        let (family, metrized) = match &self.family {
            FamilySpec::Lattice {
                max_index,
                metrized,
            } => (PseudometricFamily::lattice(*max_index), *metrized),
            FamilySpec::Coordinate {
                dimension,
                metrized,
            } => (PseudometricFamily::coordinate(*dimension), *metrized),
            FamilySpec::Explicit { members, metrized } => (
                PseudometricFamily::new(members.clone()).map_err(validation)?,
                *metrized,
            ),
        };
        Ok(if metrized { family.metrize() } else { family })
    }

    fn check_window_matches_ground_set(&self, window: &Window) -> Result<(), CliError> {
        let ok = match (&self.ground_set, window) {
            (GroundSetSpec::Lattice, Window::LatticeBox { .. }) => true,
            (GroundSetSpec::Vector { dimension }, Window::VectorGrid { dimension: d, .. }) => {
                dimension == d
            }
            (ground, Window::Explicit(points)) => {
                return points
                    .iter()
                    .try_for_each(|p| check_point_in_ground_set(ground, p));
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(CliError::Validation(format!(
                "window {window:?} does not match the declared ground set"
            )))
        }
    }

    fn check_metric_matches_ground_set(&self, d: &Pseudometric) -> Result<(), CliError> {
        let ok = matches!(
            (&self.ground_set, base_kind(d)),
            (_, BaseKind::AnyGroundSet)
                | (GroundSetSpec::Lattice, BaseKind::Lattice)
                | (GroundSetSpec::Vector { .. }, BaseKind::Vector)
        );
        if ok {
            Ok(())
        } else {
            Err(CliError::Validation(format!(
                "pseudometric {d:?} does not match the declared ground set"
            )))
        }
    }

    fn lookup_entourage_name(&self, name: &str) -> Result<&EntourageSpec, CliError> {
        self.entourages.get(name).ok_or_else(|| {
            CliError::Validation(format!("entourage name `{name}` does not resolve"))
        })
    }

    fn lookup_certificate_name(&self, name: &str) -> Result<&BoundCertificate, CliError> {
        self.certificates.get(name).ok_or_else(|| {
            CliError::Validation(format!("certificate name `{name}` does not resolve"))
        })
    }

    fn resolve_entourage(
        &self,
        name: &str,
        window: &Window,
        trail: &mut Vec<String>,
    ) -> Result<Entourage, CliError> {
        if trail.iter().any(|t| t == name) {
            return Err(CliError::Validation(format!(
                "entourage reference cycle through `{name}`"
            )));
        }
        trail.push(name.to_string());
        let spec = self.lookup_entourage_name(name)?;
        let resolved = match spec {
            EntourageSpec::Explicit { pairs } => {
                for (x, y) in pairs {
                    check_point_in_ground_set(&self.ground_set, x)?;
                    check_point_in_ground_set(&self.ground_set, y)?;
                }
                Entourage::explicit(pairs.clone())
            }
            EntourageSpec::MetricBall { metric, radius } => {
                self.check_metric_matches_ground_set(metric)?;
                Entourage::metric_ball(metric.clone(), radius.clone())
            }
            EntourageSpec::ProductBox { dimension, bounds } => {
                if !matches!(self.ground_set, GroundSetSpec::Vector { .. }) {
                    return Err(CliError::Validation(format!(
                        "product box `{name}` needs a vector ground set"
                    )));
                }
                Entourage::product_box(*dimension, bounds.clone()).map_err(validation)?
            }
            EntourageSpec::LatticeEnvelope { m, stripes } => {
                if !matches!(self.ground_set, GroundSetSpec::Lattice) {
                    return Err(CliError::Validation(format!(
                        "lattice envelope `{name}` needs the lattice ground set"
                    )));
                }
                Entourage::lattice_envelope(*m, stripes.clone()).map_err(validation)?
            }
            EntourageSpec::Union { parts } => Entourage::Union(
                parts
                    .iter()
                    .map(|p| self.resolve_entourage(p, window, trail))
                    .collect::<Result<_, _>>()?,
            ),
            EntourageSpec::Inverse { inner } => Entourage::Inverse(Box::new(
                self.resolve_entourage(inner, window, trail)?,
            )),
            EntourageSpec::Compose { left, right } => Entourage::Compose(
                Box::new(self.resolve_entourage(left, window, trail)?),
                Box::new(self.resolve_entourage(right, window, trail)?),
            ),
            EntourageSpec::Diagonal => Entourage::diagonal_on(window).map_err(validation)?,
        };
        trail.pop();
        Ok(resolved)
    }
}

enum BaseKind {
    Lattice,
    Vector,
    AnyGroundSet,
}

fn base_kind(d: &Pseudometric) -> BaseKind {
    match d {
        Pseudometric::CoordinateAbs(_) => BaseKind::Vector,
        Pseudometric::LatticeF0 | Pseudometric::LatticeFn(_) => BaseKind::Lattice,
        Pseudometric::Discrete => BaseKind::AnyGroundSet,
        Pseudometric::SumWithDiscrete(base) => base_kind(base),
    }
}

fn check_point_in_ground_set(ground: &GroundSetSpec, p: &Point) -> Result<(), CliError> {
    let ok = match (ground, p) {
        (GroundSetSpec::Lattice, Point::Lattice(..)) => true,
        (GroundSetSpec::Vector { dimension }, Point::Vector(coords)) => {
            coords.len() as u64 <= *dimension
        }
        (GroundSetSpec::Atoms { ids }, Point::Atom(id)) => ids.contains(id),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "point {p} does not belong to the declared ground set"
        )))
    }
}

fn validation(e: CoarseError) -> CliError {
    CliError::Validation(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(extra: &str) -> String {
        format!(
            r#"{{
              "groundSet": {{ "kind": "lattice" }},
              "family": {{ "kind": "lattice", "maxIndex": 3 }},
              "window": {{ "latticeBox": {{ "aMax": 4, "bMax": 4 }} }}{extra}
            }}"#
        )
    }

    #[test]
    fn minimal_document_resolves() {
        let spec = SpecDocument::parse(&minimal("")).unwrap();
        let resolved = spec.resolve(None).unwrap();
        assert_eq!(resolved.family.len(), 4);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = SpecDocument::parse(&minimal(r#", "typo": 1"#));
        assert!(matches!(err, Err(CliError::Parse(_))));
    }

    #[test]
    fn unresolved_entourage_reference_is_a_validation_error() {
        let spec = SpecDocument::parse(&minimal(
            r#", "entourages": { "u": { "union": { "parts": ["nope"] } } }"#,
        ))
        .unwrap();
        assert!(matches!(spec.resolve(None), Err(CliError::Validation(_))));
    }

    #[test]
    fn reference_cycles_are_detected() {
        let spec = SpecDocument::parse(&minimal(
            r#", "entourages": {
                "a": { "inverse": { "inner": "b" } },
                "b": { "inverse": { "inner": "a" } }
            }"#,
        ))
        .unwrap();
        let err = spec.resolve(None).unwrap_err();
        assert!(err.to_string().contains("cycle"), "{err}");
    }

    #[test]
    fn window_must_match_ground_set() {
        let spec = SpecDocument::parse(&minimal("")).unwrap();
        let grid = Window::vector_grid(2, vec![Rational::zero()]).unwrap();
        assert!(matches!(
            spec.resolve(Some(grid)),
            Err(CliError::Validation(_))
        ));
    }

    #[test]
    fn vector_metrics_are_rejected_on_the_lattice() {
        let spec = SpecDocument::parse(&minimal(
            r#", "entourages": {
                "bad": { "metricBall": { "metric": { "coordinateAbs": 1 }, "radius": "1" } }
            }"#,
        ))
        .unwrap();
        assert!(matches!(spec.resolve(None), Err(CliError::Validation(_))));
    }

    #[test]
    fn metrized_family_flag_applies() {
        let text = r#"{
          "groundSet": { "kind": "vector", "dimension": 2 },
          "family": { "kind": "coordinate", "dimension": 2, "metrized": true },
          "window": { "vectorGrid": { "dimension": 2, "values": ["0", "1"] } }
        }"#;
        let spec = SpecDocument::parse(text).unwrap();
        let resolved = spec.resolve(None).unwrap();
        assert!(resolved
            .family
            .members()
            .iter()
            .all(|d| matches!(d, Pseudometric::SumWithDiscrete(_))));
    }

    #[test]
    fn atom_points_must_be_declared() {
        let text = r#"{
          "groundSet": { "kind": "atoms", "ids": ["p", "q"] },
          "family": { "kind": "explicit", "members": ["discrete"] },
          "window": { "explicit": [{ "atom": "p" }, { "atom": "q" }] },
          "entourages": {
            "bad": { "explicit": { "pairs": [[{ "atom": "p" }, { "atom": "zz" }]] } }
          }
        }"#;
        let spec = SpecDocument::parse(text).unwrap();
        assert!(matches!(spec.resolve(None), Err(CliError::Validation(_))));
    }
}
