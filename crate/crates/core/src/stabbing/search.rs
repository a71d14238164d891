use rayon::prelude::*;

use super::{crossing_order, is_stabber, stab_thresholds, ArcSet, Family, FamilyEntry, Resolution, Thresholds};
use crate::geometry::DirectedLine;

/// Which relation between two entries an arc set records.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcMode {
    /// Some line in the direction stabs both.
    Stab,
    /// Some line in the direction stabs both, meeting the first one first.
    StabOrdered,
    /// Some line in the direction has the first entry on its left (the part
    /// right of it is below threshold) and the second on its right.
    SeparationOrdered,
}

const SWEEP_CHUNK: usize = 32;

/// Offsets to try in order for an ordered search on `[lo, hi]`.
fn candidate_offsets(lo: f64, hi: f64, family: &Family, ordered: bool, res: &Resolution) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    if !ordered || family.is_pairwise_disjoint() || hi <= lo {
        return vec![mid];
    }
    let g = res.order_grid.max(2);
    std::iter::once(mid)
        .chain((0..g).map(|k| lo + (hi - lo) * k as f64 / (g - 1) as f64))
        .collect()
}

fn accept(line: &DirectedLine, family: &Family, ordered: bool) -> bool {
    family.entries().iter().all(|e| is_stabber(line, e))
        && (!ordered || crossing_order(line, family).unwrap_or(false))
}

fn try_offsets(family: &Family, theta: f64, lo: f64, hi: f64, ordered: bool, res: &Resolution) -> Option<DirectedLine> {
    candidate_offsets(lo, hi, family, ordered, res)
        .into_iter()
        .map(|s| DirectedLine::new(theta, s))
        .find(|line| accept(line, family, ordered))
}

/// A transversal with direction exactly `theta`, if the stabbing intervals
/// of all entries intersect. The line sits at the middle of the common
/// interval; ordered searches on non-disjoint families also try a grid of
/// offsets across it.
pub fn find_transversal_in_direction(
    family: &Family,
    theta: f64,
    ordered: bool,
    res: &Resolution,
) -> Option<DirectedLine> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for entry in family.entries() {
        let t = stab_thresholds(entry, theta, res.eps_root);
        lo = lo.max(t.lo);
        hi = hi.min(t.hi);
        if lo > hi {
            return None;
        }
    }
    if !lo.is_finite() || !hi.is_finite() {
        return None;
    }
    try_offsets(family, theta, lo, hi, ordered, res)
}

struct Probe {
    gap: f64,
    hit: Option<DirectedLine>,
}

// Offset tolerance of the first, cheaper pass of a probe.
const COARSE_ROOT: f64 = 1e-5;

fn common_interval(family: &Family, theta: f64, eps_root: f64) -> (f64, f64) {
    family.entries().iter().fold((f64::NEG_INFINITY, f64::INFINITY), |(lo, hi), e| {
        let t = stab_thresholds(e, theta, eps_root);
        (lo.max(t.lo), hi.min(t.hi))
    })
}

fn probe(family: &Family, theta: f64, ordered: bool, res: &Resolution) -> Probe {
    // The coarse pass overestimates each lo and underestimates each hi by at
    // most COARSE_ROOT, so a coarse gap above twice that is conclusive.
    if res.eps_root < COARSE_ROOT {
        let (lo, hi) = common_interval(family, theta, COARSE_ROOT);
        let gap = lo - hi;
        if gap.is_nan() || gap > 2.0 * COARSE_ROOT {
            return Probe {
                gap: if gap.is_nan() { f64::INFINITY } else { gap },
                hit: None,
            };
        }
    }
    let (lo, hi) = common_interval(family, theta, res.eps_root);
    let gap = lo - hi;
    let gap = if gap.is_nan() { f64::INFINITY } else { gap };
    let hit = if gap <= 0.0 && lo.is_finite() && hi.is_finite() {
        try_offsets(family, theta, lo, hi, ordered, res)
    } else {
        None
    };
    Probe { gap, hit }
}

/// Sweeps `M` directions `2πk/M` in index order and returns the first
/// transversal found. When the sweep fails, the most nearly feasible
/// directions (smallest `max lo − min hi`) are refined by golden-section
/// search down to `eps_ang`.
///
/// `None` means that no transversal was found at this resolution; it is not
/// a proof of nonexistence.
pub fn find_transversal(family: &Family, ordered: bool, res: &Resolution) -> Option<DirectedLine> {
    find_transversal_with_hints(family, ordered, res, &[])
}

/// [`find_transversal`] that additionally refines around the given
/// directions, e.g. directions of transversals of subfamilies.
pub fn find_transversal_with_hints(
    family: &Family,
    ordered: bool,
    res: &Resolution,
    hints: &[f64],
) -> Option<DirectedLine> {
    if family.is_empty() {
        return None;
    }
    let m = res.directions;
    let mut gaps = Vec::with_capacity(m);
    for chunk_start in (0..m).step_by(SWEEP_CHUNK) {
        let chunk_end = (chunk_start + SWEEP_CHUNK).min(m);
        let probes: Vec<Probe> = (chunk_start..chunk_end)
            .into_par_iter()
            .map(|k| probe(family, res.direction(k), ordered, res))
            .collect();
        for p in probes {
            if p.hit.is_some() {
                return p.hit;
            }
            gaps.push(p.gap);
        }
    }

    let step = std::f64::consts::TAU / m as f64;
    let mut minima: Vec<(f64, f64)> = (0..m)
        .filter(|&k| {
            let g = gaps[k];
            g.is_finite() && g <= gaps[(k + m - 1) % m] && g <= gaps[(k + 1) % m]
        })
        .map(|k| (gaps[k], res.direction(k)))
        .collect();
    minima.sort_by(|a, b| a.0.total_cmp(&b.0));
    let centers = hints
        .iter()
        .copied()
        .chain(minima.into_iter().take(res.refine_candidates).map(|(_, t)| t));
    for center in centers {
        if let Some(line) = refine_direction(family, ordered, res, center - step, center + step) {
            return Some(line);
        }
    }
    None
}

/// Golden-section search for the smallest gap on `[a, b]`, stopping at the
/// first direction that yields a transversal.
fn refine_direction(family: &Family, ordered: bool, res: &Resolution, mut a: f64, mut b: f64) -> Option<DirectedLine> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let eval = |t: f64| probe(family, t, ordered, res);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let pc = eval(c);
    if pc.hit.is_some() {
        return pc.hit;
    }
    let pd = eval(d);
    if pd.hit.is_some() {
        return pd.hit;
    }
    let (mut gc, mut gd) = (pc.gap, pd.gap);
    while b - a > res.eps_ang {
        if gc <= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            let p = eval(c);
            if p.hit.is_some() {
                return p.hit;
            }
            gc = p.gap;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            let p = eval(d);
            if p.hit.is_some() {
                return p.hit;
            }
            gd = p.gap;
        }
    }
    None
}

fn pair_predicate<'a>(a: &'a FamilyEntry, b: &'a FamilyEntry, mode: ArcMode, res: &Resolution) -> impl Fn(f64) -> bool + 'a {
    let pair = Family::new(vec![a.clone(), b.clone()]);
    let res = *res;
    move |theta: f64| {
        let ta = stab_thresholds(a, theta, res.eps_root);
        let tb = stab_thresholds(b, theta, res.eps_root);
        pair_relation(&ta, &tb, mode, || {
            find_transversal_in_direction(&pair, theta, true, &res).is_some()
        })
    }
}

fn pair_relation(ta: &Thresholds, tb: &Thresholds, mode: ArcMode, ordered: impl FnOnce() -> bool) -> bool {
    match mode {
        ArcMode::Stab => ta.lo.max(tb.lo) <= ta.hi.min(tb.hi),
        ArcMode::StabOrdered => ta.lo.max(tb.lo) <= ta.hi.min(tb.hi) && ordered(),
        // a left of the line: s < lo_a; b right of it: s > hi_b
        ArcMode::SeparationOrdered => tb.hi < ta.lo,
    }
}

/// Directions in which the pair `(a, b)` is in relation `mode`, sampled at
/// `res.directions` directions with boundaries refined to `res.eps_ang`.
pub fn pair_direction_arcs(a: &FamilyEntry, b: &FamilyEntry, mode: ArcMode, res: &Resolution) -> ArcSet {
    let pred = pair_predicate(a, b, mode, res);
    ArcSet::from_predicate(res.directions, res.eps_ang, pred)
}

/// The two ordered separation arc sets of a family: the first collects the
/// directions with some `C_i` left and `C_j` right of a line for `i < j`, the
/// second the same with `i > j`.
pub fn separation_arc_sets(family: &Family, res: &Resolution) -> (ArcSet, ArcSet) {
    let n = family.len();
    let table: Vec<Vec<Thresholds>> = (0..res.directions)
        .into_par_iter()
        .map(|k| {
            family
                .entries()
                .iter()
                .map(|e| stab_thresholds(e, res.direction(k), res.eps_root))
                .collect()
        })
        .collect();
    let mut forward = ArcSet::empty();
    let mut backward = ArcSet::empty();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let samples: Vec<bool> = table
                .iter()
                .map(|row| pair_relation(&row[i], &row[j], ArcMode::SeparationOrdered, || false))
                .collect();
            let pred = pair_predicate(&family[i], &family[j], ArcMode::SeparationOrdered, res);
            let arcs = ArcSet::from_samples(&samples, res.eps_ang, pred);
            if i < j {
                forward = forward.union(&arcs);
            } else {
                backward = backward.union(&arcs);
            }
        }
    }
    (forward, backward)
}
