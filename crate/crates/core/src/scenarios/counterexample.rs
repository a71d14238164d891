//! The rectangle constructions showing that disjointness cannot be dropped.
//!
//! Coordinates (unit scale 1, threshold 0.3):
//!
//! * rectangles 1, 2 and 4 are horizontal, 4 × 2, centered at `(0.8, 0)`,
//!   `(-0.8, 0.6)` and `(0.8, 1.2)`, so `p_{1,−} = (0, 0)`,
//!   `p_{2,+} = (0, 0.6)` and `p_{4,−} = (0, 1.2)` all lie on the vertical
//!   line `v: x = 0`. Their gauge segments alternate sides of `v`, which
//!   forces every common transversal of the three to be `v`;
//! * rectangle 3 is vertical, 0.5 × 3.5, with its left side at `x = δ` and
//!   its center at height 0.6, so it misses `v`.

use itertools::Itertools;

use crate::colorful::Color;
use crate::error::{Error, Result};
use crate::geometry::{DirectedLine, Point2};
use crate::stabbing::{
    find_transversal, find_transversal_with_hints, is_stabber, is_transversal, stab_thresholds, Family, FamilyEntry,
    Resolution,
};

use super::gauge::RectangleGauge;

pub const COUNTEREXAMPLE_ALPHA: f64 = 0.3;
pub const DEFAULT_DELTA: f64 = 0.05;
pub const DEFAULT_EPSILON: f64 = 0.01;

const LONG: f64 = 4.0;
const SHORT: f64 = 2.0;
const STEP: f64 = 0.6;
const THIN: f64 = 0.5;
const TALL: f64 = 3.5;

/// A line used by a construction together with the sets it is meant to
/// transverse (in family order).
#[derive(Clone, Debug, PartialEq)]
pub struct NamedLine {
    pub name: String,
    pub line: DirectedLine,
    pub transverses: Vec<usize>,
}

/// Outcome of one certification clause.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub clause: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(clause: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            clause: clause.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// All clauses checked while certifying a construction.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Certificate {
    pub checks: Vec<Check>,
    pub resolution: Option<Resolution>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// `Err(Construction)` naming the first failed clause.
    pub fn into_result(self) -> Result<Self> {
        match self.first_failure() {
            Some(c) => Err(Error::Construction(format!("{}: {}", c.clause, c.detail))),
            None => Ok(self),
        }
    }
}

fn self_check(clauses: Vec<(String, bool)>) -> Result<()> {
    match clauses.into_iter().find(|(_, ok)| !ok) {
        Some((clause, _)) => Err(Error::Construction(clause)),
        None => Ok(()),
    }
}

/// The four-rectangle family with triplewise ordered transversals and no
/// common transversal.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantitativeCounterexample {
    pub family: Family,
    pub gauges: Vec<RectangleGauge>,
    pub delta: f64,
    /// `v`, `h`, the midline of rectangle 3, and the line through `p_{2,+}`
    /// and `p_{3,+}`.
    pub lines: Vec<NamedLine>,
}

/// The four rectangles with default parameters.
pub fn build_quantitative_counterexample() -> Result<Family> {
    Ok(QuantitativeCounterexample::build(DEFAULT_DELTA)?.family)
}

fn base_gauges(delta: f64) -> Result<Vec<RectangleGauge>> {
    let a = COUNTEREXAMPLE_ALPHA;
    let reach = (0.5 - a) * LONG;
    let x_axis = Point2::new(1.0, 0.0);
    let y_axis = Point2::new(0.0, 1.0);
    Ok(vec![
        RectangleGauge::from_axis(Point2::new(reach, 0.0), x_axis, LONG, SHORT, a)?,
        RectangleGauge::from_axis(Point2::new(-reach, STEP), x_axis, LONG, SHORT, a)?,
        RectangleGauge::from_axis(Point2::new(delta + 0.5 * THIN, STEP), y_axis, TALL, THIN, a)?,
        RectangleGauge::from_axis(Point2::new(reach, 2.0 * STEP), x_axis, LONG, SHORT, a)?,
    ])
}

fn construction_lines(g: &[RectangleGauge]) -> Vec<NamedLine> {
    let named = |name: &str, line: DirectedLine, sets: &[usize]| NamedLine {
        name: name.to_string(),
        line,
        transverses: sets.to_vec(),
    };
    vec![
        named("v", DirectedLine::through(g[0].p_minus, g[3].p_minus), &[0, 1, 3]),
        named("h", DirectedLine::through(g[2].p_minus, g[1].p_plus), &[0, 1, 2]),
        named("m3", DirectedLine::through(g[2].p_minus, g[2].p_plus), &[0, 2, 3]),
        named("k", DirectedLine::through(g[1].p_plus, g[2].p_plus), &[1, 2, 3]),
    ]
}

/// The construction clauses that do not need a search, for one copy of the
/// four rectangles given as family indices.
fn incidence_clauses(family: &Family, sets: [usize; 4], gauges: &[RectangleGauge], lines: &[NamedLine]) -> Vec<(String, bool)> {
    let v = &lines[0].line;
    let mut out = vec![(
        "p1-, p2+ and p4- lie on v".to_string(),
        [gauges[0].p_minus, gauges[1].p_plus, gauges[3].p_minus]
            .iter()
            .all(|&p| v.signed_distance(p).abs() < 1e-12),
    )];
    let sides: Vec<f64> = gauges[2].rect.vertices().iter().map(|&p| v.signed_distance(p)).collect();
    out.push((
        "rectangle 3 lies strictly on one side of v".to_string(),
        sides.iter().all(|&d| d > 0.0) || sides.iter().all(|&d| d < 0.0),
    ));
    for nl in lines {
        let idx: Vec<usize> = nl.transverses.iter().map(|&i| sets[i]).collect();
        out.push((
            format!("{} transverses rectangles {} in order", nl.name, nl.transverses.iter().map(|i| i + 1).join(",")),
            is_transversal(&nl.line, &family.subfamily(&idx), true),
        ));
    }
    out.push(("v misses rectangle 3".to_string(), !is_stabber(v, &family[sets[2]])));
    out
}

impl QuantitativeCounterexample {
    /// Builds the rectangles with rectangle 3 at distance `delta` right of
    /// `v` and runs the cheap construction checks.
    pub fn build(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0, 1), got {delta}")));
        }
        let gauges = base_gauges(delta)?;
        let entries = gauges
            .iter()
            .enumerate()
            .map(|(i, g)| FamilyEntry::percent_area(format!("{}", i + 1), g.rect.clone(), g.alpha))
            .collect::<Result<Vec<_>>>()?;
        let family = Family::new(entries);
        let lines = construction_lines(&gauges);
        let mut clauses = incidence_clauses(&family, [0, 1, 2, 3], &gauges, &lines);
        clauses.push(("the rectangles are not pairwise disjoint".to_string(), !family.is_pairwise_disjoint()));
        self_check(clauses)?;
        Ok(QuantitativeCounterexample {
            family,
            gauges,
            delta,
            lines,
        })
    }

    pub fn v(&self) -> &DirectedLine {
        &self.lines[0].line
    }

    pub fn h(&self) -> &DirectedLine {
        &self.lines[1].line
    }

    /// Runs the searches backing the construction at `res`.
    pub fn certify(&self, res: &Resolution) -> Certificate {
        let hints: Vec<f64> = self.lines.iter().flat_map(|l| [l.line.theta(), l.line.reversed().theta()]).collect();
        let mut checks = ordered_triple_checks(&self.family, (0..4).permutations(3).map(|p| [p[0], p[1], p[2]]), &hints, res);
        checks.push(unique_transversal_check(&self.family.subfamily(&[0, 1, 3]), self.v(), "v is the only transversal of rectangles 1,2,4", res));
        checks.push(no_transversal_check(&self.family, "the four rectangles have no common transversal", res));
        Certificate {
            checks,
            resolution: Some(*res),
        }
    }
}

fn ordered_triple_checks(
    family: &Family,
    triples: impl Iterator<Item = [usize; 3]>,
    hints: &[f64],
    res: &Resolution,
) -> Vec<Check> {
    triples
        .map(|t| {
            let sub = family.subfamily(&t);
            let labels = t.iter().map(|&i| family[i].label()).join(",");
            let found = find_transversal_with_hints(&sub, true, res, hints)
                .filter(|line| is_transversal(line, &sub, true));
            let detail = match &found {
                Some(line) => format!("witness {line}"),
                None => format!("none found at resolution M={}", res.directions),
            };
            Check::new(format!("ordered transversal of {labels}"), found.is_some(), detail)
        })
        .collect()
}

/// Every sampled direction admitting a transversal of `family` is the
/// direction of `line` or its reverse, and there the common offsets stay
/// within `1e-6` of the line.
fn unique_transversal_check(family: &Family, line: &DirectedLine, clause: &str, res: &Resolution) -> Check {
    let targets = [*line, line.reversed()];
    let mut stray = Vec::new();
    for k in 0..res.directions {
        let theta = res.direction(k);
        let (lo, hi) = family.entries().iter().fold((f64::NEG_INFINITY, f64::INFINITY), |(lo, hi), e| {
            let t = stab_thresholds(e, theta, res.eps_root);
            (lo.max(t.lo), hi.min(t.hi))
        });
        if lo > hi {
            continue;
        }
        let expected = targets.iter().any(|l| {
            crate::geometry::normalize_angle(theta - l.theta()).min(crate::geometry::normalize_angle(l.theta() - theta)) < 1e-9
                && (lo - l.offset()).abs() < 1e-6
                && (hi - l.offset()).abs() < 1e-6
        });
        if !expected {
            stray.push(format!("θ={theta:.6} offsets [{lo:.6}, {hi:.6}]"));
        }
    }
    let detail = if stray.is_empty() {
        format!("only {line} and its reverse over M={} directions", res.directions)
    } else {
        format!("other transversals: {}", stray.iter().take(3).join("; "))
    };
    Check::new(clause, stray.is_empty(), detail)
}

fn no_transversal_check(family: &Family, clause: &str, res: &Resolution) -> Check {
    match find_transversal(family, false, res) {
        None => Check::new(clause, true, format!("none found at resolution M={}", res.directions)),
        Some(line) => Check::new(clause, false, format!("found {line}")),
    }
}

/// Twelve colored rectangles: blue copies of the four rectangles, green ones
/// shrunk by `epsilon` and red ones shrunk again, ordered 1b, 1g, 1r, 2b, …
#[derive(Clone, Debug, PartialEq)]
pub struct ColorfulCounterexample {
    pub family: Family,
    /// Gauges in family order; the thresholds of shrunk copies are adjusted
    /// so their gauge points coincide with the blue ones.
    pub gauges: Vec<RectangleGauge>,
    pub base: QuantitativeCounterexample,
    pub epsilon: f64,
}

pub fn build_colorful_counterexample(epsilon: f64) -> Result<Family> {
    Ok(ColorfulCounterexample::build(epsilon, DEFAULT_DELTA)?.family)
}

/// Color order inside one rectangle number.
const LEX_COLORS: [Color; 3] = [Color::Blue, Color::Green, Color::Red];

impl ColorfulCounterexample {
    pub fn build(epsilon: f64, delta: f64) -> Result<Self> {
        let base = QuantitativeCounterexample::build(delta)?;
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
        }
        let mut gauges = Vec::with_capacity(12);
        let mut entries = Vec::with_capacity(12);
        for (i, g) in base.gauges.iter().enumerate() {
            let green = g
                .shrunk(epsilon)
                .map_err(|e| Error::Construction(format!("green copy of rectangle {}: {e}", i + 1)))?;
            let red = green
                .shrunk(epsilon)
                .map_err(|e| Error::Construction(format!("red copy of rectangle {}: {e}", i + 1)))?;
            for (gauge, color) in [g.clone(), green, red].into_iter().zip(LEX_COLORS) {
                let label = format!("{}{}", i + 1, color.letter());
                entries.push(FamilyEntry::percent_area(label, gauge.rect.clone(), gauge.alpha)?.with_color(color));
                gauges.push(gauge);
            }
        }
        let family = Family::new(entries);
        let mut clauses = Vec::new();
        for i in 0..4 {
            let copies = &gauges[3 * i..3 * i + 3];
            for w in copies.windows(2) {
                clauses.push((
                    format!("rectangle {} shrinks inside its previous copy", i + 1),
                    w[1].rect.vertices().iter().all(|&p| w[0].rect.contains(p)),
                ));
                clauses.push((
                    format!("rectangle {} keeps its gauge points", i + 1),
                    w[0].p_minus.distance(w[1].p_minus) < 1e-12 && w[0].p_plus.distance(w[1].p_plus) < 1e-12,
                ));
            }
        }
        for (c, color) in LEX_COLORS.iter().enumerate() {
            let sets = [c, 3 + c, 6 + c, 9 + c];
            let class_gauges: Vec<RectangleGauge> = sets.iter().map(|&i| gauges[i].clone()).collect();
            for (clause, ok) in incidence_clauses(&family, sets, &class_gauges, &base.lines) {
                clauses.push((format!("{color} class: {clause}"), ok));
            }
        }
        self_check(clauses)?;
        Ok(ColorfulCounterexample {
            family,
            gauges,
            base,
            epsilon,
        })
    }

    /// Family indices `i < j < k` with three distinct colors.
    pub fn rainbow_triples(&self) -> Vec<[usize; 3]> {
        rainbow_triples(&self.family)
    }

    pub fn certify(&self, res: &Resolution) -> Certificate {
        let hints: Vec<f64> = self
            .base
            .lines
            .iter()
            .flat_map(|l| [l.line.theta(), l.line.reversed().theta()])
            .collect();
        let mut checks = ordered_triple_checks(&self.family, self.rainbow_triples().into_iter(), &hints, res);
        for color in LEX_COLORS {
            let class = self.family.subfamily(&self.family.color_indices(color));
            checks.push(no_transversal_check(&class, &format!("the {color} sets have no common transversal"), res));
        }
        Certificate {
            checks,
            resolution: Some(*res),
        }
    }
}

/// Index triples `i < j < k` whose entries carry three distinct colors.
pub fn rainbow_triples(family: &Family) -> Vec<[usize; 3]> {
    (0..family.len())
        .combinations(3)
        .filter(|t| {
            let c: Vec<Option<Color>> = t.iter().map(|&i| family[i].color()).collect();
            c.iter().all(Option::is_some) && c[0] != c[1] && c[1] != c[2] && c[0] != c[2]
        })
        .map(|t| [t[0], t[1], t[2]])
        .collect()
}
