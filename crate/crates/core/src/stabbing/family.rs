use crate::colorful::Color;
use crate::error::{Error, Result};
use crate::functionals::FunctionalSpec;
use crate::geometry::{ConvexPolygon, DirectedLine, Side};

/// One member `C_i` of a family together with its functional `f_i` and
/// threshold `α_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyEntry {
    label: String,
    shape: ConvexPolygon,
    functional: FunctionalSpec,
    alpha: f64,
    color: Option<Color>,
    // area of the shape when the functional is its own percent area; lets the
    // hot path skip the polygon intersection
    self_area: Option<f64>,
}

impl FamilyEntry {
    pub fn new(
        label: impl Into<String>,
        shape: ConvexPolygon,
        functional: FunctionalSpec,
        alpha: f64,
    ) -> Result<Self> {
        let label = label.into();
        let invalid = |reason: &str| Error::InvalidEntry {
            label: label.clone(),
            reason: reason.to_string(),
        };
        if shape.is_empty() {
            return Err(invalid("shape is empty"));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(invalid("alpha must be a positive finite number"));
        }
        functional
            .validate()
            .map_err(|e| invalid(&e.to_string()))?;
        let self_area = match &functional {
            FunctionalSpec::PercentAreaOf(base) if *base == shape => Some(shape.area()),
            _ => None,
        };
        Ok(FamilyEntry {
            label,
            shape,
            functional,
            alpha,
            color: None,
            self_area,
        })
    }

    /// Entry measured by its own percent area.
    pub fn percent_area(label: impl Into<String>, shape: ConvexPolygon, alpha: f64) -> Result<Self> {
        let f = FunctionalSpec::PercentAreaOf(shape.clone());
        FamilyEntry::new(label, shape, f, alpha)
    }

    pub fn with_color(mut self, color: Color) -> Self {
        self.color = Some(color);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn shape(&self) -> &ConvexPolygon {
        &self.shape
    }

    pub fn functional(&self) -> &FunctionalSpec {
        &self.functional
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn color(&self) -> Option<Color> {
        self.color
    }

    /// `f_i` of a piece of this entry's shape.
    pub fn value(&self, piece: &ConvexPolygon) -> f64 {
        match self.self_area {
            Some(total) => piece.area() / total,
            None => self.functional.eval_unchecked(piece),
        }
    }

    pub fn total(&self) -> f64 {
        self.value(&self.shape)
    }

    /// `f_i(ℓ^side(C_i))`.
    pub fn side_value(&self, line: &DirectedLine, side: Side) -> f64 {
        match self.self_area {
            Some(total) => self.shape.halfplane_area(line, side) / total,
            None => self.functional.eval_unchecked(&self.shape.clip_halfplane(line, side)),
        }
    }

    /// `f_i(ℓ⁺(C_i))` and `f_i(ℓ⁻(C_i))`.
    pub fn side_values(&self, line: &DirectedLine) -> (f64, f64) {
        (self.side_value(line, Side::Plus), self.side_value(line, Side::Minus))
    }

    /// Threshold with the closed-comparison slack applied.
    pub(crate) fn target(&self) -> f64 {
        self.alpha - crate::functionals::EPS_AREA * self.alpha.abs().max(1.0)
    }
}

/// An ordered family of entries. Order is the index order.
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    entries: Vec<FamilyEntry>,
    pairwise_disjoint: bool,
}

impl Family {
    pub fn new(entries: Vec<FamilyEntry>) -> Self {
        let pairwise_disjoint = entries.iter().enumerate().all(|(i, a)| {
            entries[i + 1..]
                .iter()
                .all(|b| a.shape().disjoint(b.shape()))
        });
        Family {
            entries,
            pairwise_disjoint,
        }
    }

    /// One percent-area functional and one threshold for every shape.
    pub fn percent_area(shapes: Vec<ConvexPolygon>, alpha: f64) -> Result<Self> {
        let entries = shapes
            .into_iter()
            .enumerate()
            .map(|(i, s)| FamilyEntry::percent_area(format!("C{}", i + 1), s, alpha))
            .collect::<Result<Vec<_>>>()?;
        Ok(Family::new(entries))
    }

    pub fn entries(&self) -> &[FamilyEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_pairwise_disjoint(&self) -> bool {
        self.pairwise_disjoint
    }

    pub fn is_colored(&self) -> bool {
        self.entries.iter().all(|e| e.color().is_some())
    }

    /// Entries at `indices`, in the given order.
    pub fn subfamily(&self, indices: &[usize]) -> Family {
        Family::new(indices.iter().map(|&i| self.entries[i].clone()).collect())
    }

    /// Indices of the entries of one color, in family order.
    pub fn color_indices(&self, color: Color) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.entries[i].color() == Some(color))
            .collect()
    }

    /// Largest vertex distance from the origin over all shapes.
    pub fn radius(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.shape().radius())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for Family {
    type Output = FamilyEntry;
    fn index(&self, i: usize) -> &FamilyEntry {
        &self.entries[i]
    }
}
