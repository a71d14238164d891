//! Monotone set functionals.
//!
//! Every built-in kind is nondecreasing under inclusion, vanishes on the
//! empty set and is continuous in the Hausdorff metric. Decreasing
//! functionals are expressed by the caller negating values and thresholds.

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, DirectedLine, Side};

/// Relative slack for comparisons of functional values.
pub const EPS_AREA: f64 = 1e-9;

/// A built-in monotone functional.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionalSpec {
    Area,
    Perimeter,
    Diameter,
    Width,
    /// `area(C ∩ base) / area(base)`.
    PercentAreaOf(ConvexPolygon),
}

impl FunctionalSpec {
    pub fn percent_area_of(base: ConvexPolygon) -> Result<Self> {
        let spec = FunctionalSpec::PercentAreaOf(base);
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FunctionalSpec::PercentAreaOf(base) if !(base.area() > 0.0) => Err(
                Error::InvalidFunctional("percent-area base has zero area".into()),
            ),
            _ => Ok(()),
        }
    }

    pub fn evaluate(&self, poly: &ConvexPolygon) -> Result<f64> {
        self.validate()?;
        Ok(self.eval_unchecked(poly))
    }

    /// Evaluation without validating the spec; callers validate once up front.
    pub(crate) fn eval_unchecked(&self, poly: &ConvexPolygon) -> f64 {
        match self {
            FunctionalSpec::Area => poly.area(),
            FunctionalSpec::Perimeter => poly.perimeter(),
            FunctionalSpec::Diameter => poly.diameter(),
            FunctionalSpec::Width => poly.width(),
            FunctionalSpec::PercentAreaOf(base) => {
                if poly.is_degenerate() {
                    0.0
                } else {
                    poly.intersection(base).area() / base.area()
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FunctionalSpec::Area => "area",
            FunctionalSpec::Perimeter => "perimeter",
            FunctionalSpec::Diameter => "diameter",
            FunctionalSpec::Width => "width",
            FunctionalSpec::PercentAreaOf(_) => "percent_area",
        }
    }
}

/// `f(ℓ(θ, s)⁻(poly))`: the functional of the part of `poly` right of the
/// line. Nondecreasing in `s`.
pub fn offset_profile(spec: &FunctionalSpec, poly: &ConvexPolygon, theta: f64, s: f64) -> Result<f64> {
    spec.evaluate(&poly.clip_halfplane(&DirectedLine::new(theta, s), Side::Minus))
}
