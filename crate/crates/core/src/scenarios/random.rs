//! Seeded random families for fuzzing.

use std::f64::consts::TAU;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colorful::Color;
use crate::error::{Error, Result};
use crate::geometry::{direction, left_normal, ConvexPolygon, DirectedLine, Point2};
use crate::stabbing::{Family, FamilyEntry};

/// Placement strategy of a random family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorMode {
    /// Pairwise disjoint sets strung along a random corridor with
    /// perpendicular jitter, in corridor order.
    Disjoint,
    /// Disjoint sets built around a planted line that stabs each of them
    /// with a margin.
    Threaded,
    /// Like `Disjoint` but with consecutive sets allowed to overlap.
    Overlapping,
}

impl FromStr for GeneratorMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "disjoint" => Ok(GeneratorMode::Disjoint),
            "threaded" => Ok(GeneratorMode::Threaded),
            "overlapping" => Ok(GeneratorMode::Overlapping),
            other => Err(Error::InvalidParameter(format!("unknown generator mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorParams {
    pub alpha: f64,
    pub min_radius: f64,
    pub max_radius: f64,
    pub min_vertices: usize,
    pub max_vertices: usize,
    /// Largest extra gap between consecutive sets along the corridor.
    pub spacing: f64,
    /// Largest perpendicular displacement of a set from the corridor axis.
    pub jitter: f64,
    /// Threaded mode: the planted line leaves at least `alpha + margin` of
    /// each set on either side.
    pub margin: f64,
    /// Assign uniformly random colors.
    pub colored: bool,
    pub max_attempts: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            alpha: 0.3,
            min_radius: 0.6,
            max_radius: 1.4,
            min_vertices: 3,
            max_vertices: 8,
            spacing: 0.6,
            jitter: 0.2,
            margin: 0.05,
            colored: false,
            max_attempts: 10_000,
        }
    }
}

/// A generated family and, in threaded mode, its planted transversal.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedFamily {
    pub family: Family,
    pub planted: Option<DirectedLine>,
}

pub fn random_family(seed: u64, n: usize, mode: GeneratorMode, params: &GeneratorParams) -> Result<Family> {
    Ok(generate(seed, n, mode, params)?.family)
}

fn random_polygon(rng: &mut ChaCha8Rng, center: Point2, radius: f64, params: &GeneratorParams) -> ConvexPolygon {
    let k = rng.random_range(params.min_vertices..=params.max_vertices);
    let pts: Vec<Point2> = (0..k)
        .map(|_| {
            let r = radius * rng.random_range(0.7..=1.0);
            center + direction(rng.random_range(0.0..TAU)) * r
        })
        .collect();
    ConvexPolygon::hull(&pts)
}

/// Deterministic in `seed`.
pub fn generate(seed: u64, n: usize, mode: GeneratorMode, params: &GeneratorParams) -> Result<GeneratedFamily> {
    if n == 0 {
        return Err(Error::InvalidParameter("family size must be at least 1".into()));
    }
    if !(params.min_radius > 0.0 && params.min_radius <= params.max_radius)
        || params.min_vertices < 3
        || params.min_vertices > params.max_vertices
        || !(params.alpha > 0.0)
    {
        return Err(Error::InvalidParameter("inconsistent generator parameters".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta = rng.random_range(0.0..TAU);
    let origin = Point2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    let axis = DirectedLine::new(theta, origin.dot(left_normal(theta)));
    let d = direction(theta);
    let nrm = left_normal(theta);

    let mut attempts = 0;
    let mut entries: Vec<FamilyEntry> = Vec::with_capacity(n);
    let mut shapes: Vec<ConvexPolygon> = Vec::with_capacity(n);
    let mut t = 0.0;
    let mut prev_radius = 0.0;
    while shapes.len() < n {
        attempts += 1;
        if attempts > params.max_attempts {
            return Err(Error::GenerationBudget { attempts: attempts - 1 });
        }
        let radius = rng.random_range(params.min_radius..=params.max_radius);
        let step = if shapes.is_empty() {
            0.0
        } else {
            match mode {
                GeneratorMode::Overlapping => (prev_radius + radius) * rng.random_range(0.3..=1.1),
                _ => prev_radius + radius + rng.random_range(0.0..=params.spacing),
            }
        };
        let along = t + step;
        let across = match mode {
            GeneratorMode::Threaded => radius * rng.random_range(-0.1..=0.1),
            _ => params.jitter * rng.random_range(-1.0..=1.0),
        };
        let center = origin + d * along + nrm * across;
        let poly = random_polygon(&mut rng, center, radius, params);
        if poly.area() < 0.1 * radius * radius {
            continue;
        }
        if mode != GeneratorMode::Overlapping && !shapes.iter().all(|s| s.disjoint(&poly)) {
            continue;
        }
        let mut entry = FamilyEntry::percent_area(format!("C{}", shapes.len() + 1), poly.clone(), params.alpha)?;
        if mode == GeneratorMode::Threaded {
            let (plus, minus) = entry.side_values(&axis);
            if plus.min(minus) < params.alpha + params.margin {
                continue;
            }
        }
        if params.colored {
            entry = entry.with_color(Color::ALL[rng.random_range(0..3)]);
        }
        t = along;
        prev_radius = radius;
        shapes.push(poly);
        entries.push(entry);
    }
    Ok(GeneratedFamily {
        family: Family::new(entries),
        planted: (mode == GeneratorMode::Threaded).then_some(axis),
    })
}
