//! The JSON family document.
//!
//! ```json
//! {
//!   "version": 1,
//!   "alpha_default": 0.3,
//!   "functional_default": { "kind": "percent_area" },
//!   "sets": [
//!     { "label": "A", "color": "red", "vertices": [[0, 0], [1, 0], [1, 1]] },
//!     { "label": "B", "vertices": [[3, 0], [4, 0], [4, 1]], "alpha": 0.25,
//!       "functional": { "kind": "area" } }
//!   ]
//! }
//! ```
//!
//! Functional kinds are `area`, `perimeter`, `diameter`, `width`,
//! `percent_area` (of the set itself) and `percent_area_of` with a `base`
//! vertex list. Per-set `functional` and `alpha` override the defaults.

use serde::{Deserialize, Serialize};

use alphastab::colorful::Color;
use alphastab::functionals::FunctionalSpec;
use alphastab::geometry::{ConvexPolygon, Point2};
use alphastab::stabbing::{Family, FamilyEntry};
use alphastab::{Error, Result};

pub const DOCUMENT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionalDoc {
    Area,
    Perimeter,
    Diameter,
    Width,
    PercentArea,
    PercentAreaOf { base: Vec<[f64; 2]> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDoc {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
    pub vertices: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functional: Option<FunctionalDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub version: u32,
    pub alpha_default: f64,
    pub functional_default: FunctionalDoc,
    pub sets: Vec<SetDoc>,
}

fn points(vertices: &[[f64; 2]]) -> Vec<Point2> {
    vertices.iter().map(|&[x, y]| Point2::new(x, y)).collect()
}

fn coords(poly: &ConvexPolygon) -> Vec<[f64; 2]> {
    poly.vertices().iter().map(|p| [p.x, p.y]).collect()
}

impl FamilyDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    /// Validates the document and builds the family.
    pub fn to_family(&self) -> Result<Family> {
        if self.version != DOCUMENT_VERSION {
            return Err(Error::Validation(format!(
                "unsupported version {} (expected {DOCUMENT_VERSION})",
                self.version
            )));
        }
        if self.sets.is_empty() {
            return Err(Error::Validation("document has no sets".into()));
        }
        let entries = self
            .sets
            .iter()
            .map(|set| {
                let invalid = |what: String| Error::Validation(format!("set `{}`: {what}", set.label));
                let shape = ConvexPolygon::new(points(&set.vertices)).map_err(|e| invalid(e.to_string()))?;
                let functional = match set.functional.as_ref().unwrap_or(&self.functional_default) {
                    FunctionalDoc::Area => FunctionalSpec::Area,
                    FunctionalDoc::Perimeter => FunctionalSpec::Perimeter,
                    FunctionalDoc::Diameter => FunctionalSpec::Diameter,
                    FunctionalDoc::Width => FunctionalSpec::Width,
                    FunctionalDoc::PercentArea => FunctionalSpec::PercentAreaOf(shape.clone()),
                    FunctionalDoc::PercentAreaOf { base } => {
                        let base = ConvexPolygon::new(points(base)).map_err(|e| invalid(format!("base: {e}")))?;
                        FunctionalSpec::PercentAreaOf(base)
                    }
                };
                let alpha = set.alpha.unwrap_or(self.alpha_default);
                let mut entry =
                    FamilyEntry::new(set.label.clone(), shape, functional, alpha).map_err(|e| invalid(e.to_string()))?;
                if let Some(c) = &set.color {
                    entry = entry.with_color(c.parse::<Color>().map_err(|e| invalid(e.to_string()))?);
                }
                Ok(entry)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Family::new(entries))
    }

    /// Document describing `family`. The most common threshold becomes the
    /// default (the first one on ties) and percent area of the set itself
    /// the default functional.
    pub fn from_family(family: &Family) -> Self {
        let mut alphas: Vec<f64> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for e in family.entries() {
            match alphas.iter().position(|&a| a == e.alpha()) {
                Some(i) => counts[i] += 1,
                None => {
                    alphas.push(e.alpha());
                    counts.push(1);
                }
            }
        }
        let best = (0..alphas.len()).rev().max_by_key(|&i| counts[i]).unwrap_or(0);
        let alpha_default = alphas.get(best).copied().unwrap_or(0.3);
        let sets = family
            .entries()
            .iter()
            .map(|e| {
                let functional = match e.functional() {
                    FunctionalSpec::PercentAreaOf(base) if base == e.shape() => None,
                    FunctionalSpec::PercentAreaOf(base) => Some(FunctionalDoc::PercentAreaOf { base: coords(base) }),
                    FunctionalSpec::Area => Some(FunctionalDoc::Area),
                    FunctionalSpec::Perimeter => Some(FunctionalDoc::Perimeter),
                    FunctionalSpec::Diameter => Some(FunctionalDoc::Diameter),
                    FunctionalSpec::Width => Some(FunctionalDoc::Width),
                };
                SetDoc {
                    label: e.label().to_string(),
                    color: e.color().map(|c| c.to_string()),
                    vertices: coords(e.shape()),
                    functional,
                    alpha: (e.alpha() != alpha_default).then_some(e.alpha()),
                }
            })
            .collect();
        FamilyDocument {
            version: DOCUMENT_VERSION,
            alpha_default,
            functional_default: FunctionalDoc::PercentArea,
            sets,
        }
    }
}
