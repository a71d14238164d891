use std::f64::consts::TAU;

use crate::geometry::normalize_angle;

/// A finite union of half-open arcs `[start, end)` of the direction circle.
///
/// The canonical form stores arcs inside `[0, 2π)`, sorted, pairwise
/// disjoint, non-adjacent and of positive length. An arc crossing angle zero
/// is stored as two pieces `[a, 2π)` and `[0, b)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ArcSet {
    arcs: Vec<(f64, f64)>,
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet::default()
    }

    pub fn full() -> Self {
        ArcSet {
            arcs: vec![(0.0, TAU)],
        }
    }

    /// Builds the canonical union of arcs given as `(start, end)` pairs
    /// travelled counterclockwise. Angles may be outside `[0, 2π)`; an arc of
    /// length `≥ 2π` covers the circle.
    pub fn from_arcs<I: IntoIterator<Item = (f64, f64)>>(arcs: I) -> Self {
        let mut pieces = Vec::new();
        for (start, end) in arcs {
            let len = end - start;
            if !(len > 0.0) {
                continue;
            }
            if len >= TAU {
                return ArcSet::full();
            }
            let s = normalize_angle(start);
            let e = s + len;
            if e <= TAU {
                pieces.push((s, e));
            } else {
                pieces.push((s, TAU));
                pieces.push((0.0, e - TAU));
            }
        }
        ArcSet::canonical(pieces)
    }

    fn canonical(mut pieces: Vec<(f64, f64)>) -> Self {
        pieces.retain(|&(s, e)| e > s);
        pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
        for (s, e) in pieces {
            match merged.last_mut() {
                Some(last) if s <= last.1 => last.1 = last.1.max(e),
                _ => merged.push((s, e)),
            }
        }
        ArcSet { arcs: merged }
    }

    pub fn arcs(&self) -> &[(f64, f64)] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.arcs == [(0.0, TAU)]
    }

    /// Total angular length.
    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(|(s, e)| e - s).sum()
    }

    pub fn contains(&self, theta: f64) -> bool {
        let t = normalize_angle(theta);
        self.arcs.iter().any(|&(s, e)| s <= t && t < e)
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        ArcSet::canonical(self.arcs.iter().chain(other.arcs.iter()).copied().collect())
    }

    pub fn complement(&self) -> ArcSet {
        let mut gaps = Vec::with_capacity(self.arcs.len() + 1);
        let mut cursor = 0.0;
        for &(s, e) in &self.arcs {
            if s > cursor {
                gaps.push((cursor, s));
            }
            cursor = e;
        }
        if cursor < TAU {
            gaps.push((cursor, TAU));
        }
        ArcSet::canonical(gaps)
    }

    pub fn intersection(&self, other: &ArcSet) -> ArcSet {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &ArcSet) -> ArcSet {
        self.intersection(&other.complement())
    }

    /// Every arc rotated counterclockwise by `delta`.
    pub fn rotated(&self, delta: f64) -> ArcSet {
        if self.is_full() {
            return ArcSet::full();
        }
        ArcSet::from_arcs(self.arcs.iter().map(|&(s, e)| (s + delta, e + delta)))
    }

    /// Measure of the symmetric difference.
    pub fn distance(&self, other: &ArcSet) -> f64 {
        self.difference(other).measure() + other.difference(self).measure()
    }

    /// Samples `predicate` at `m` equally spaced directions `2πk/m` and
    /// refines every change of value by angular bisection down to `eps_ang`.
    /// Runs of `true` samples become arcs; the result is exact up to the
    /// refinement tolerance as long as no feature is narrower than `2π/m`.
    pub fn from_predicate<F>(m: usize, eps_ang: f64, predicate: F) -> ArcSet
    where
        F: Fn(f64) -> bool,
    {
        assert!(m >= 2, "need at least two samples");
        let angle = |k: usize| TAU * k as f64 / m as f64;
        let samples: Vec<bool> = (0..m).map(|k| predicate(angle(k))).collect();
        ArcSet::from_samples(&samples, eps_ang, predicate)
    }

    /// Like [`ArcSet::from_predicate`] with the samples already evaluated.
    pub fn from_samples<F>(samples: &[bool], eps_ang: f64, predicate: F) -> ArcSet
    where
        F: Fn(f64) -> bool,
    {
        let m = samples.len();
        if samples.iter().all(|&b| b) {
            return ArcSet::full();
        }
        if samples.iter().all(|&b| !b) {
            return ArcSet::empty();
        }
        let angle = |k: usize| TAU * k as f64 / m as f64;
        // boundary between sample k and k+1; `inside_first` tells which end is true
        let refine = |k: usize| -> f64 {
            let (mut a, mut b) = (angle(k), angle(k) + TAU / m as f64);
            let inside_a = samples[k];
            while b - a > eps_ang {
                let mid = 0.5 * (a + b);
                if predicate(mid) == inside_a {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            // keep the arc closed towards the sampled `true` end
            if inside_a {
                b
            } else {
                a
            }
        };
        let start = (0..m).find(|&k| !samples[k]).unwrap_or(0);
        let mut arcs = Vec::new();
        let mut open: Option<f64> = None;
        for step in 0..m {
            let k = (start + step) % m;
            let next = (k + 1) % m;
            if !samples[k] && samples[next] {
                let mut b = refine(k);
                if k + 1 == m {
                    b -= TAU;
                }
                open = Some(b);
            } else if samples[k] && !samples[next] {
                let e = refine(k);
                if let Some(s) = open.take() {
                    let e = if e < s { e + TAU } else { e };
                    arcs.push((s, e));
                }
            }
        }
        ArcSet::from_arcs(arcs)
    }
}
