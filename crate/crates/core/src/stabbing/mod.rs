//! (f, α)-stabbing predicates, reduced sets, offset intervals and the
//! transversal search.
//!
//! For a fixed direction θ the functional of the part of `C` right of the
//! line `ℓ(θ, s)` is nondecreasing in `s` and the part left of it is
//! nonincreasing, so the offsets of stabbing lines form one closed interval.
//! Its endpoints are found by bisection. A direction admits a transversal of
//! the whole family exactly when these intervals share a point, which for
//! intervals reduces to `max lo ≤ min hi`.

mod arcs;
mod family;
mod search;

pub use arcs::ArcSet;
pub use family::{Family, FamilyEntry};
pub use search::{
    find_transversal, find_transversal_in_direction, find_transversal_with_hints, pair_direction_arcs,
    separation_arc_sets, ArcMode,
};

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, DirectedLine, Interval, Side};

/// Bisection tolerance on offsets.
pub const EPS_ROOT: f64 = 1e-10;
/// Angular refinement tolerance for arc boundaries and direction search.
pub const EPS_ANG: f64 = 1e-6;
/// Default number of sampled directions.
pub const DEFAULT_DIRECTIONS: usize = 720;
/// Number of sampled directions used when certifying constructions.
pub const CERT_DIRECTIONS: usize = 2048;
/// Offsets tried per direction when checking the crossing order of a
/// non-disjoint family.
pub const ORDER_GRID: usize = 64;

/// Numerical resolution of the sampling-based searches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Resolution {
    pub directions: usize,
    pub eps_root: f64,
    pub eps_ang: f64,
    pub order_grid: usize,
    /// Number of near-feasible sampled directions refined after an
    /// unsuccessful sweep.
    pub refine_candidates: usize,
}

impl Default for Resolution {
    fn default() -> Self {
        Resolution {
            directions: DEFAULT_DIRECTIONS,
            eps_root: EPS_ROOT,
            eps_ang: EPS_ANG,
            order_grid: ORDER_GRID,
            refine_candidates: 8,
        }
    }
}

impl Resolution {
    pub fn certification() -> Self {
        Resolution {
            directions: CERT_DIRECTIONS,
            ..Resolution::default()
        }
    }

    pub fn with_directions(directions: usize) -> Self {
        Resolution {
            directions,
            ..Resolution::default()
        }
    }

    /// The `k`-th sampled direction `2πk/M`.
    pub fn direction(&self, k: usize) -> f64 {
        std::f64::consts::TAU * k as f64 / self.directions as f64
    }
}

/// Closed predicate `f(ℓ⁺(C)) ≥ α` and `f(ℓ⁻(C)) ≥ α`, with relative slack
/// [`EPS_AREA`](crate::functionals::EPS_AREA).
pub fn is_stabber(line: &DirectedLine, entry: &FamilyEntry) -> bool {
    let target = entry.target();
    entry.side_value(line, Side::Plus) >= target && entry.side_value(line, Side::Minus) >= target
}

/// One-sided offset thresholds of an entry in direction θ.
///
/// `lo` is the smallest offset whose right part reaches α and `hi` the
/// largest offset whose left part reaches α; `±∞` when no offset does (or
/// every offset does). The stabbing offsets are exactly `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    pub lo: f64,
    pub hi: f64,
}

impl Thresholds {
    pub fn interval(&self) -> Interval {
        Interval::new(self.lo, self.hi)
    }
}

pub fn stab_thresholds(entry: &FamilyEntry, theta: f64, eps_root: f64) -> Thresholds {
    let shape = entry.shape();
    let proj = shape.project_normal(theta);
    let target = entry.target();
    let total = entry.total();
    let minus_value = |s: f64| entry.side_value(&DirectedLine::new(theta, s), Side::Minus);
    let plus_value = |s: f64| entry.side_value(&DirectedLine::new(theta, s), Side::Plus);

    let lo = if total < target {
        f64::INFINITY
    } else if 0.0 >= target {
        f64::NEG_INFINITY
    } else if minus_value(proj.lo) >= target {
        proj.lo
    } else {
        // minus_value(a) < target ≤ minus_value(b)
        let (mut a, mut b) = (proj.lo, proj.hi);
        while b - a > eps_root {
            let mid = 0.5 * (a + b);
            if minus_value(mid) >= target {
                b = mid;
            } else {
                a = mid;
            }
        }
        b
    };
    let hi = if total < target {
        f64::NEG_INFINITY
    } else if 0.0 >= target {
        f64::INFINITY
    } else if plus_value(proj.hi) >= target {
        proj.hi
    } else {
        // plus_value(a) ≥ target > plus_value(b)
        let (mut a, mut b) = (proj.lo, proj.hi);
        while b - a > eps_root {
            let mid = 0.5 * (a + b);
            if plus_value(mid) >= target {
                a = mid;
            } else {
                b = mid;
            }
        }
        a
    };
    Thresholds { lo, hi }
}

/// Offsets `s` for which `ℓ(θ, s)` stabs the entry; empty when θ is not a
/// stabbing direction of the entry.
pub fn stab_offset_interval(entry: &FamilyEntry, theta: f64) -> Interval {
    stab_thresholds(entry, theta, EPS_ROOT).interval()
}

/// `C'`: the entry with its two maximal sub-α side slabs removed.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSet<'a> {
    pub original: &'a FamilyEntry,
    pub theta: f64,
    pub slab: Interval,
    pub shape: ConvexPolygon,
}

pub fn reduced_set(entry: &FamilyEntry, theta: f64) -> ReducedSet<'_> {
    reduced_set_with(entry, theta, EPS_ROOT)
}

pub fn reduced_set_with(entry: &FamilyEntry, theta: f64, eps_root: f64) -> ReducedSet<'_> {
    let slab = stab_thresholds(entry, theta, eps_root).interval();
    let shape = if slab.is_empty() {
        ConvexPolygon::empty()
    } else {
        entry
            .shape()
            .clip_halfplane(&DirectedLine::new(theta, slab.lo), Side::Plus)
            .clip_halfplane(&DirectedLine::new(theta, slab.hi), Side::Minus)
    };
    ReducedSet {
        original: entry,
        theta,
        slab,
        shape,
    }
}

/// Whether points `p(t_1), …, p(t_n)` with `t_1 ≤ … ≤ t_n` and
/// `p(t_i) ∈ C_i` exist along the line. Greedy: each witness is pushed as
/// far back as the previous one allows.
pub fn crossing_order(line: &DirectedLine, family: &Family) -> Result<bool> {
    let mut t = f64::NEG_INFINITY;
    for (index, entry) in family.entries().iter().enumerate() {
        let iv = entry.shape().line_parameter_interval(line);
        if iv.is_empty() {
            return Err(Error::EmptyCrossing { index });
        }
        t = t.max(iv.lo);
        if t > iv.hi + crate::geometry::EPS_GEO {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Stabs every entry; with `ordered`, also meets them in family order.
pub fn is_transversal(line: &DirectedLine, family: &Family, ordered: bool) -> bool {
    family.entries().iter().all(|e| is_stabber(line, e))
        && (!ordered || crossing_order(line, family).unwrap_or(false))
}

/// Definition-level separation test: `f(ℓ⁺(C_i)), f(ℓ⁻(C_j)) < α` or
/// `f(ℓ⁻(C_i)), f(ℓ⁺(C_j)) < α`.
pub fn is_separation_line(line: &DirectedLine, a: &FamilyEntry, b: &FamilyEntry) -> bool {
    let (a_plus, a_minus) = a.side_values(line);
    let (b_plus, b_minus) = b.side_values(line);
    (a_plus < a.target() && b_minus < b.target()) || (a_minus < a.target() && b_plus < b.target())
}

/// For pairwise disjoint `a, b, c`: whether `line` has `a` and `c` on one
/// side and `b` on the other, a set being on one side when the part of it on
/// the other side has functional value below its threshold. Such a line
/// rules out any transversal meeting them in the order `a, b, c`.
pub fn separates_middle(
    line: &DirectedLine,
    a: &FamilyEntry,
    b: &FamilyEntry,
    c: &FamilyEntry,
) -> Result<bool> {
    let shapes = [a.shape(), b.shape(), c.shape()];
    for i in 0..3 {
        for j in i + 1..3 {
            if !shapes[i].disjoint(shapes[j]) {
                return Err(Error::Precondition(format!(
                    "sets {} and {} of the triple intersect",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(separates_middle_unchecked(line, a, b, c))
}

/// [`separates_middle`] without the disjointness check.
pub fn separates_middle_unchecked(
    line: &DirectedLine,
    a: &FamilyEntry,
    b: &FamilyEntry,
    c: &FamilyEntry,
) -> bool {
    let (a_plus, a_minus) = a.side_values(line);
    let (b_plus, b_minus) = b.side_values(line);
    let (c_plus, c_minus) = c.side_values(line);
    let below = |v: f64, e: &FamilyEntry| v < e.target();
    (below(a_plus, a) && below(b_minus, b) && below(c_plus, c))
        || (below(a_minus, a) && below(b_plus, b) && below(c_minus, c))
}
