//! Strategies and independent oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's clipping and bisection: they
//! clip with Sutherland–Hodgman on raw point lists and scan offsets on a grid.

#![allow(dead_code)]

use alphastab::geometry::{ConvexPolygon, DirectedLine, Point2};
use alphastab::stabbing::{Family, FamilyEntry};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Convex hull of random points around `center`, retried until the area is
/// not tiny.
pub fn random_polygon(rng: &mut impl Rng, center: (f64, f64), radius: f64) -> ConvexPolygon {
    loop {
        let k = rng.random_range(3..=9);
        let pts: Vec<Point2> = (0..k)
            .map(|_| {
                Point2::new(
                    center.0 + rng.random_range(-radius..radius),
                    center.1 + rng.random_range(-radius..radius),
                )
            })
            .collect();
        let poly = ConvexPolygon::hull(&pts);
        if poly.area() > 0.05 * radius * radius {
            return poly;
        }
    }
}

pub fn polygon_strategy() -> impl Strategy<Value = ConvexPolygon> {
    (any::<u64>(), -3.0..3.0f64, -3.0..3.0f64, 0.3..2.0f64)
        .prop_map(|(seed, cx, cy, r)| random_polygon(&mut rng(seed), (cx, cy), r))
}

pub fn line_strategy() -> impl Strategy<Value = DirectedLine> {
    (0.0..std::f64::consts::TAU, -4.0..4.0f64).prop_map(|(t, s)| DirectedLine::new(t, s))
}

pub fn shoelace(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len();
    if n < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..n {
        let (x0, y0) = pts[i];
        let (x1, y1) = pts[(i + 1) % n];
        acc += x0 * y1 - x1 * y0;
    }
    0.5 * acc.abs()
}

fn raw(poly: &ConvexPolygon) -> Vec<(f64, f64)> {
    poly.vertices().iter().map(|p| (p.x, p.y)).collect()
}

/// Sutherland–Hodgman clip against `{p · n ≤ s}` (or `≥` when `keep_plus`).
pub fn clip_oracle(poly: &ConvexPolygon, theta: f64, s: f64, keep_plus: bool) -> Vec<(f64, f64)> {
    let (nx, ny) = (-theta.sin(), theta.cos());
    let val = |p: (f64, f64)| {
        let v = p.0 * nx + p.1 * ny - s;
        if keep_plus {
            -v
        } else {
            v
        }
    };
    let pts = raw(poly);
    let mut out = Vec::new();
    for i in 0..pts.len() {
        let a = pts[i];
        let b = pts[(i + 1) % pts.len()];
        let (va, vb) = (val(a), val(b));
        if va <= 0.0 {
            out.push(a);
        }
        if (va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0) {
            let t = va / (va - vb);
            out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
        }
    }
    out
}

/// Fractions of the area of `poly` on the minus and plus side of `ℓ(θ, s)`.
pub fn side_fractions(poly: &ConvexPolygon, theta: f64, s: f64) -> (f64, f64) {
    let total = shoelace(&raw(poly));
    (
        shoelace(&clip_oracle(poly, theta, s, false)) / total,
        shoelace(&clip_oracle(poly, theta, s, true)) / total,
    )
}

/// Point in convex CCW polygon by edge cross products.
pub fn inside(poly: &ConvexPolygon, x: f64, y: f64) -> bool {
    let v = raw(poly);
    (0..v.len()).all(|i| {
        let (ax, ay) = v[i];
        let (bx, by) = v[(i + 1) % v.len()];
        (bx - ax) * (y - ay) - (by - ay) * (x - ax) >= 0.0
    })
}

pub fn bbox(poly: &ConvexPolygon) -> (f64, f64, f64, f64) {
    let v = raw(poly);
    v.iter().fold(
        (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), &(x, y)| (a.min(x), b.min(y), c.max(x), d.max(y)),
    )
}

/// Monte-Carlo estimate of the area of `poly ∩ {p · n(θ) ≤ s}`.
pub fn mc_area(poly: &ConvexPolygon, theta: Option<(f64, f64)>, samples: usize, seed: u64) -> f64 {
    let (x0, y0, x1, y1) = bbox(poly);
    let mut r = rng(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let x = r.random_range(x0..=x1);
        let y = r.random_range(y0..=y1);
        let below = match theta {
            Some((t, s)) => -t.sin() * x + t.cos() * y <= s,
            None => true,
        };
        if below && inside(poly, x, y) {
            hits += 1;
        }
    }
    (x1 - x0) * (y1 - y0) * hits as f64 / samples as f64
}

/// Offsets on the grid `step · ℤ` within the normal projection of the
/// entry whose line stabs it, judged by the oracle clip. Percent-area
/// entries only.
pub fn grid_stab_offsets(entry: &FamilyEntry, theta: f64, step: f64) -> Vec<f64> {
    let poly = entry.shape();
    let (nx, ny) = (-theta.sin(), theta.cos());
    let proj: Vec<f64> = poly.vertices().iter().map(|p| p.x * nx + p.y * ny).collect();
    let lo = proj.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = proj.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tol = 1e-9;
    let mut out = Vec::new();
    let mut k = (lo / step).ceil() as i64;
    while k as f64 * step <= hi {
        let s = k as f64 * step;
        let (m, p) = side_fractions(poly, theta, s);
        if m >= entry.alpha() - tol && p >= entry.alpha() - tol {
            out.push(s);
        }
        k += 1;
    }
    out
}

/// Grid range `[first, last]` of stabbing offsets, if any.
pub fn grid_stab_range(entry: &FamilyEntry, theta: f64, step: f64) -> Option<(f64, f64)> {
    let v = grid_stab_offsets(entry, theta, step);
    Some((*v.first()?, *v.last()?))
}

/// Whether some grid offset in direction θ stabs every entry.
pub fn grid_common_stab(family: &Family, theta: f64, step: f64) -> bool {
    let ranges: Option<Vec<(f64, f64)>> =
        family.entries().iter().map(|e| grid_stab_range(e, theta, step)).collect();
    let Some(ranges) = ranges else { return false };
    let lo = ranges.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let hi = ranges.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    lo <= hi
}

pub fn percent_family(shapes: Vec<ConvexPolygon>, alpha: f64) -> Family {
    Family::percent_area(shapes, alpha).unwrap()
}

/// Pairwise disjoint random polygons strung along the x axis.
pub fn random_disjoint(rng: &mut impl Rng, n: usize) -> Vec<ConvexPolygon> {
    (0..n)
        .map(|i| {
            let cx = 3.0 * i as f64;
            let cy = rng.random_range(-1.5..1.5);
            random_polygon(rng, (cx, cy), 1.0)
        })
        .collect()
}

/// Parameter range of `ℓ(θ, s)` inside `poly`, parametrised by `p · d(θ)`.
pub fn chord(poly: &ConvexPolygon, theta: f64, s: f64) -> Option<(f64, f64)> {
    let (dx, dy) = (theta.cos(), theta.sin());
    let (ox, oy) = (-theta.sin() * s, theta.cos() * s);
    let v = raw(poly);
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for i in 0..v.len() {
        let (ax, ay) = v[i];
        let (bx, by) = v[(i + 1) % v.len()];
        // inside: cross(b - a, p - a) >= 0 with p = o + t d
        let c0 = (bx - ax) * (oy - ay) - (by - ay) * (ox - ax);
        let c1 = (bx - ax) * dy - (by - ay) * dx;
        if c1.abs() < 1e-15 {
            if c0 < 0.0 {
                return None;
            }
        } else if c1 > 0.0 {
            lo = lo.max(-c0 / c1);
        } else {
            hi = hi.min(-c0 / c1);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Whether some line on the (θ, s) grid is an ordered transversal, judged
/// with the oracle clip and chords.
pub fn grid_ordered_transversal(family: &Family, directions: usize, step: f64) -> bool {
    (0..directions).any(|k| {
        let theta = std::f64::consts::TAU * k as f64 / directions as f64;
        let offsets: Vec<Vec<f64>> = family.entries().iter().map(|e| grid_stab_offsets(e, theta, step)).collect();
        offsets[0].iter().any(|&s| {
            offsets[1..].iter().all(|o| o.binary_search_by(|x| x.total_cmp(&s)).is_ok())
                && {
                    let mut t = f64::NEG_INFINITY;
                    family.entries().iter().all(|e| match chord(e.shape(), theta, s) {
                        Some((a, b)) => {
                            t = t.max(a);
                            t <= b
                        }
                        None => false,
                    })
                }
        })
    })
}
