//! Planar convex primitives.
//!
//! Everything here works on `f64` coordinates with a fixed orientation
//! tolerance [`EPS_GEO`]. Polygons are closed sets: clipping keeps boundary
//! points and two polygons that touch in a single point are not disjoint.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Tolerance for orientation (cross product) tests and vertex deduplication.
pub const EPS_GEO: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise rotation by `angle` about the origin.
    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Wraps an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Unit direction `(cos θ, sin θ)`.
pub fn direction(theta: f64) -> Point2 {
    let (s, c) = theta.sin_cos();
    Point2::new(c, s)
}

/// Left normal `(-sin θ, cos θ)` of the direction `θ`.
pub fn left_normal(theta: f64) -> Point2 {
    let (s, c) = theta.sin_cos();
    Point2::new(-s, c)
}

/// Which closed half-plane of a directed line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Left of the direction of travel: `p·n ≥ offset`.
    Plus,
    /// Right of the direction of travel: `p·n ≤ offset`.
    Minus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// The directed line `{p : p·n(θ) = offset}` travelling along `d(θ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectedLine {
    theta: f64,
    offset: f64,
}

impl DirectedLine {
    pub fn new(theta: f64, offset: f64) -> Self {
        DirectedLine {
            theta: normalize_angle(theta),
            offset,
        }
    }

    /// Line through `a` heading towards `b`. `a` and `b` must differ.
    pub fn through(a: Point2, b: Point2) -> Self {
        let d = b - a;
        let theta = d.y.atan2(d.x);
        DirectedLine::new(theta, a.dot(left_normal(theta)))
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn direction(&self) -> Point2 {
        direction(self.theta)
    }

    pub fn normal(&self) -> Point2 {
        left_normal(self.theta)
    }

    /// Point at parameter `t`; the origin of the parametrization is the foot
    /// `offset · n` of the perpendicular from the coordinate origin.
    pub fn point_at(&self, t: f64) -> Point2 {
        self.normal() * self.offset + self.direction() * t
    }

    /// Parameter of the orthogonal projection of `p` onto the line.
    pub fn parameter_of(&self, p: Point2) -> f64 {
        p.dot(self.direction())
    }

    /// Positive on the plus (left) side.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        p.dot(self.normal()) - self.offset
    }

    /// Same point set, opposite direction of travel.
    pub fn reversed(&self) -> DirectedLine {
        DirectedLine::new(self.theta + std::f64::consts::PI, -self.offset)
    }
}

impl fmt::Display for DirectedLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta={:.6} offset={:.6}", self.theta, self.offset)
    }
}

/// Closed real interval; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub const fn empty() -> Self {
        Interval {
            lo: f64::INFINITY,
            hi: f64::NEG_INFINITY,
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo <= self.hi)
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn length(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.hi - self.lo
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// A compact convex polygon with counterclockwise vertices.
///
/// Empty (no vertices), point and segment polygons are legal values of zero
/// area. Construction always normalizes: duplicate and collinear vertices are
/// dropped, orientation is made counterclockwise, and fully collinear inputs
/// collapse to their two extreme points.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    pub fn empty() -> Self {
        ConvexPolygon::default()
    }

    /// Validating constructor. Accepts either orientation.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if let Some(index) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let poly = ConvexPolygon::normalized(vertices);
        if poly.vertices.len() >= 3 && !poly.is_convex_ccw() {
            return Err(Error::NotConvex);
        }
        Ok(poly)
    }

    /// Convex hull of arbitrary points (Andrew's monotone chain).
    pub fn hull(points: &[Point2]) -> Self {
        let mut pts: Vec<Point2> = points.iter().copied().filter(|p| p.is_finite()).collect();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup();
        if pts.len() < 3 {
            return ConvexPolygon::normalized(pts);
        }
        let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
        for &p in &pts {
            while lower.len() >= 2
                && (lower[lower.len() - 1] - lower[lower.len() - 2]).cross(p - lower[lower.len() - 1])
                    <= 0.0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && (upper[upper.len() - 1] - upper[upper.len() - 2]).cross(p - upper[upper.len() - 1])
                    <= 0.0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        ConvexPolygon::normalized(lower)
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        ConvexPolygon::normalized(vec![
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
    }

    /// Regular `n`-gon inscribed in the circle of the given radius, with a
    /// vertex at angle `phase`.
    pub fn regular(n: usize, center: Point2, radius: f64, phase: f64) -> Self {
        let pts = (0..n)
            .map(|k| center + direction(phase + TAU * k as f64 / n as f64) * radius)
            .collect();
        ConvexPolygon::normalized(pts)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Fewer than three vertices: a point or a segment.
    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    /// Re-normalizes the vertex list. Idempotent.
    pub fn normalize(&self) -> Self {
        ConvexPolygon::normalized(self.vertices.clone())
    }

    fn normalized(mut pts: Vec<Point2>) -> Self {
        dedup_cyclic(&mut pts);
        if pts.len() <= 2 {
            return ConvexPolygon { vertices: pts };
        }
        if let Some((a, b)) = collinear_extremes(&pts) {
            let mut seg = vec![a, b];
            dedup_cyclic(&mut seg);
            return ConvexPolygon { vertices: seg };
        }
        if signed_area2(&pts) < 0.0 {
            pts.reverse();
        }
        // Drop vertices whose incident edges are collinear (straight angles).
        loop {
            let n = pts.len();
            if n < 3 {
                break;
            }
            let drop = (0..n).find(|&i| {
                let prev = pts[(i + n - 1) % n];
                let cur = pts[i];
                let next = pts[(i + 1) % n];
                let e1 = cur - prev;
                let e2 = next - cur;
                e1.cross(e2).abs() <= EPS_GEO && e1.dot(e2) >= 0.0
            });
            match drop {
                Some(i) => {
                    pts.remove(i);
                    dedup_cyclic(&mut pts);
                }
                None => break,
            }
        }
        if pts.len() >= 3 {
            if let Some((a, b)) = collinear_extremes(&pts) {
                let mut seg = vec![a, b];
                dedup_cyclic(&mut seg);
                return ConvexPolygon { vertices: seg };
            }
        }
        ConvexPolygon { vertices: pts }
    }

    fn is_convex_ccw(&self) -> bool {
        let n = self.vertices.len();
        let mut turning = 0.0;
        for i in 0..n {
            let e1 = self.vertices[(i + 1) % n] - self.vertices[i];
            let e2 = self.vertices[(i + 2) % n] - self.vertices[(i + 1) % n];
            let c = e1.cross(e2);
            if c < -EPS_GEO {
                return false;
            }
            turning += c.atan2(e1.dot(e2));
        }
        (turning - TAU).abs() < 1e-6
    }

    /// Intersection with the closed half-plane `line^side`.
    pub fn clip_halfplane(&self, line: &DirectedLine, side: Side) -> ConvexPolygon {
        let n = self.vertices.len();
        if n == 0 {
            return ConvexPolygon::empty();
        }
        let sign = match side {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        };
        let nrm = line.normal();
        let dist: Vec<f64> = self
            .vertices
            .iter()
            .map(|p| sign * (p.dot(nrm) - line.offset()))
            .collect();
        if dist.iter().all(|&d| d >= 0.0) {
            return self.clone();
        }
        if dist.iter().all(|&d| d < 0.0) {
            return ConvexPolygon::empty();
        }
        let mut out = Vec::with_capacity(n + 2);
        for i in 0..n {
            let j = (i + 1) % n;
            let (a, b) = (self.vertices[i], self.vertices[j]);
            let (da, db) = (dist[i], dist[j]);
            if da >= 0.0 {
                out.push(a);
            }
            if (da >= 0.0) != (db >= 0.0) && n > 1 {
                let t = da / (da - db);
                out.push(a + (b - a) * t);
            }
        }
        ConvexPolygon::normalized(out)
    }

    /// `area(clip_halfplane(line, side))` without building the clipped
    /// polygon.
    pub fn halfplane_area(&self, line: &DirectedLine, side: Side) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        let sign = match side {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        };
        let nrm = line.normal();
        let dist = |p: Point2| sign * (p.dot(nrm) - line.offset());
        // shoelace over the clipped vertex sequence, accumulated on the fly
        let mut first: Option<Point2> = None;
        let mut prev: Option<Point2> = None;
        let mut twice = 0.0;
        let mut emit = |p: Point2| {
            if let Some(q) = prev {
                twice += q.cross(p);
            } else {
                first = Some(p);
            }
            prev = Some(p);
        };
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let (da, db) = (dist(a), dist(b));
            if da >= 0.0 {
                emit(a);
            }
            if (da >= 0.0) != (db >= 0.0) {
                let t = da / (da - db);
                emit(a + (b - a) * t);
            }
        }
        if let (Some(f), Some(l)) = (first, prev) {
            twice += l.cross(f);
        }
        0.5 * twice.abs()
    }

    /// Intersection of two convex polygons.
    pub fn intersection(&self, other: &ConvexPolygon) -> ConvexPolygon {
        match other.vertices.len() {
            0 => ConvexPolygon::empty(),
            1 | 2 => {
                // Clip the degenerate one against the full one instead.
                if self.vertices.len() >= 3 {
                    other.clip_to(self)
                } else {
                    degenerate_intersection(self, other)
                }
            }
            _ => self.clip_to(other),
        }
    }

    fn clip_to(&self, container: &ConvexPolygon) -> ConvexPolygon {
        let n = container.vertices.len();
        let mut acc = self.clone();
        for i in 0..n {
            if acc.is_empty() {
                break;
            }
            let edge = DirectedLine::through(container.vertices[i], container.vertices[(i + 1) % n]);
            acc = acc.clip_halfplane(&edge, Side::Plus);
        }
        acc
    }

    pub fn area(&self) -> f64 {
        if self.vertices.len() < 3 {
            0.0
        } else {
            0.5 * signed_area2(&self.vertices).abs()
        }
    }

    /// Boundary length; a segment counts both of its sides.
    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        match n {
            0 | 1 => 0.0,
            2 => 2.0 * self.vertices[0].distance(self.vertices[1]),
            _ => (0..n)
                .map(|i| self.vertices[i].distance(self.vertices[(i + 1) % n]))
                .sum(),
        }
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut best = 0.0f64;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max(v[i].distance(v[j]));
            }
        }
        best
    }

    /// Minimum directional extent, by rotating calipers over the edges.
    pub fn width(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return 0.0;
        }
        let height = |i: usize, k: usize| -> f64 {
            let e = v[(i + 1) % n] - v[i];
            e.cross(v[k] - v[i]) / e.norm()
        };
        let mut k = 1;
        let mut best = f64::INFINITY;
        for i in 0..n {
            // advance the antipodal pointer while it moves away from edge i
            while height(i, (k + 1) % n) >= height(i, k) {
                k = (k + 1) % n;
                if k == i {
                    break;
                }
            }
            best = best.min(height(i, k));
        }
        best
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.vertices.len();
        if n == 0 {
            return Point2::default();
        }
        let a2 = signed_area2(&self.vertices);
        if n < 3 || a2.abs() <= EPS_GEO {
            let s = self.vertices.iter().fold(Point2::default(), |acc, &p| acc + p);
            return s * (1.0 / n as f64);
        }
        let mut c = Point2::default();
        for i in 0..n {
            let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
            c = c + (p + q) * p.cross(q);
        }
        c * (1.0 / (3.0 * a2))
    }

    /// `[min, max]` of `p · n(θ)` over the vertices.
    pub fn project_normal(&self, theta: f64) -> Interval {
        self.project_onto(left_normal(theta))
    }

    pub fn project_onto(&self, axis: Point2) -> Interval {
        self.vertices.iter().fold(Interval::empty(), |acc, p| {
            let x = p.dot(axis);
            Interval::new(acc.lo.min(x), acc.hi.max(x))
        })
    }

    /// Parameter interval `{t : line.point_at(t) ∈ self}`.
    pub fn line_parameter_interval(&self, line: &DirectedLine) -> Interval {
        let n = self.vertices.len();
        let dist: Vec<f64> = self.vertices.iter().map(|&p| line.signed_distance(p)).collect();
        let mut out = Interval::empty();
        let mut include = |t: f64| {
            out.lo = out.lo.min(t);
            out.hi = out.hi.max(t);
        };
        for (&p, d) in self.vertices.iter().zip(&dist) {
            if d.abs() <= EPS_GEO {
                include(line.parameter_of(p));
            }
        }
        let edges = match n {
            0 | 1 => 0,
            2 => 1,
            _ => n,
        };
        for i in 0..edges {
            let j = (i + 1) % n;
            let (da, db) = (dist[i], dist[j]);
            if (da > EPS_GEO && db < -EPS_GEO) || (da < -EPS_GEO && db > EPS_GEO) {
                let t = da / (da - db);
                let p = self.vertices[i] + (self.vertices[j] - self.vertices[i]) * t;
                include(line.parameter_of(p));
            }
        }
        out
    }

    /// Closed containment test with tolerance [`EPS_GEO`].
    pub fn contains(&self, p: Point2) -> bool {
        let n = self.vertices.len();
        match n {
            0 => false,
            1 => self.vertices[0].distance(p) <= EPS_GEO,
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let e = b - a;
                let len = e.norm();
                let t = (p - a).dot(e) / (len * len);
                (e.cross(p - a) / len).abs() <= EPS_GEO && (-EPS_GEO..=1.0 + EPS_GEO).contains(&t)
            }
            _ => (0..n).all(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                (b - a).cross(p - a) >= -EPS_GEO * (b - a).norm().max(1.0)
            }),
        }
    }

    /// Separating-axis test; closed sets that touch are not disjoint.
    pub fn disjoint(&self, other: &ConvexPolygon) -> bool {
        if self.is_empty() || other.is_empty() {
            return true;
        }
        let mut axes = Vec::new();
        for poly in [self, other] {
            let v = &poly.vertices;
            let n = v.len();
            let edges = if n == 2 { 1 } else if n >= 3 { n } else { 0 };
            for i in 0..edges {
                let e = v[(i + 1) % n] - v[i];
                axes.push(Point2::new(-e.y, e.x));
                if n == 2 {
                    axes.push(e);
                }
            }
        }
        let diff = other.centroid() - self.centroid();
        if diff.norm() > 0.0 {
            axes.push(diff);
        }
        axes.into_iter().filter(|a| a.norm() > 0.0).any(|axis| {
            let axis = axis * (1.0 / axis.norm());
            let a = self.project_onto(axis);
            let b = other.project_onto(axis);
            a.hi < b.lo - EPS_GEO || b.hi < a.lo - EPS_GEO
        })
    }

    pub fn translate(&self, by: Point2) -> ConvexPolygon {
        ConvexPolygon::normalized(self.vertices.iter().map(|&p| p + by).collect())
    }

    /// Rotation about `center` by `angle` radians.
    pub fn rotate_about(&self, center: Point2, angle: f64) -> ConvexPolygon {
        ConvexPolygon::normalized(
            self.vertices
                .iter()
                .map(|&p| center + (p - center).rotate(angle))
                .collect(),
        )
    }

    /// Largest distance of a vertex from the origin.
    pub fn radius(&self) -> f64 {
        self.vertices.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }
}

fn signed_area2(pts: &[Point2]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum()
}

fn dedup_cyclic(pts: &mut Vec<Point2>) {
    let close = |a: Point2, b: Point2| (a.x - b.x).abs() <= EPS_GEO && (a.y - b.y).abs() <= EPS_GEO;
    pts.dedup_by(|b, a| close(*a, *b));
    while pts.len() > 1 && close(pts[0], pts[pts.len() - 1]) {
        pts.pop();
    }
}

/// If all points lie within [`EPS_GEO`] of one line, the two extreme points.
fn collinear_extremes(pts: &[Point2]) -> Option<(Point2, Point2)> {
    let mut best = (0, 0, 0.0f64);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = pts[i].distance(pts[j]);
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    let (i, j, len) = best;
    if len == 0.0 {
        return Some((pts[0], pts[0]));
    }
    let (a, b) = (pts[i], pts[j]);
    let flat = pts
        .iter()
        .all(|&p| ((b - a).cross(p - a) / len).abs() <= EPS_GEO);
    flat.then_some((a, b))
}

fn degenerate_intersection(a: &ConvexPolygon, b: &ConvexPolygon) -> ConvexPolygon {
    // Both have at most two vertices. Clip segment `a` by the slab of `b`.
    if a.is_empty() || b.is_empty() {
        return ConvexPolygon::empty();
    }
    let kept: Vec<Point2> = a
        .vertices
        .iter()
        .copied()
        .filter(|&p| b.contains(p))
        .chain(b.vertices.iter().copied().filter(|&p| a.contains(p)))
        .collect();
    ConvexPolygon::hull(&kept)
}
