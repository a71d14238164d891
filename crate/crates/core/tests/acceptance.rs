//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use alphastab::colorful::{
    first_nonzero, find_monochromatic_transversal, is_balanced, is_hadwiger, middle_line, precedes, Color, SignVector,
};
use alphastab::functionals::{offset_profile, FunctionalSpec, EPS_AREA};
use alphastab::geometry::{ConvexPolygon, DirectedLine, Point2, Side};
use alphastab::scenarios::{
    generate, verify_theorem, ColorfulCounterexample, GeneratorMode, GeneratorParams, QuantitativeCounterexample,
    RectangleGauge, Status, TheoremId, VerifyOptions, COUNTEREXAMPLE_ALPHA, DEFAULT_DELTA, DEFAULT_EPSILON,
};
use alphastab::stabbing::{
    crossing_order, find_transversal, find_transversal_in_direction, find_transversal_with_hints, is_stabber,
    is_transversal, pair_direction_arcs, separates_middle, separates_middle_unchecked, stab_offset_interval, ArcMode,
    Family, FamilyEntry, Resolution,
};
use common::*;
use itertools::Itertools;
use rand::Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Whether some offset on the lattice `step · ℤ` inside the common normal
/// projection stabs all four sets at θ, judged with the oracle clip.
fn lattice_transversal(family: &Family, theta: f64, step: f64) -> bool {
    let (lo, hi) = family.entries().iter().fold((f64::NEG_INFINITY, f64::INFINITY), |(lo, hi), e| {
        let p = e.shape().project_normal(theta);
        (lo.max(p.lo), hi.min(p.hi))
    });
    if lo > hi {
        return false;
    }
    let mut k = (lo / step).ceil() as i64;
    while k as f64 * step <= hi {
        let s = k as f64 * step;
        let all = family.entries().iter().all(|e| {
            let (m, p) = side_fractions(e.shape(), theta, s);
            m >= e.alpha() - 1e-9 && p >= e.alpha() - 1e-9
        });
        if all {
            return true;
        }
        k += 1;
    }
    false
}

fn construction_hints(q: &QuantitativeCounterexample) -> Vec<f64> {
    q.lines.iter().flat_map(|l| [l.line.theta(), l.line.reversed().theta()]).collect()
}

fn ordered_witness(family: &Family, hints: &[f64], res: &Resolution) -> bool {
    find_transversal_with_hints(family, true, res, hints)
        .is_some_and(|l| is_transversal(&l, family, true) && crossing_order(&l, family).unwrap_or(false))
}

fn criterion_1() -> Outcome {
    let q = match QuantitativeCounterexample::build(DEFAULT_DELTA) {
        Ok(q) => q,
        Err(e) => return outcome(false, format!("build failed: {e}")),
    };
    let specs_ok = q.family.entries().iter().all(|e| {
        e.alpha() == 0.3 && matches!(e.functional(), FunctionalSpec::PercentAreaOf(b) if b == e.shape())
    });
    let res = Resolution::certification();
    let hints = construction_hints(&q);
    let failed: Vec<String> = (0..4)
        .permutations(3)
        .filter(|t| !ordered_witness(&q.family.subfamily(t), &hints, &res))
        .map(|t| t.iter().map(|i| i + 1).join(","))
        .collect();
    let swept = find_transversal(&q.family, false, &res);
    let lattice_hits: Vec<usize> = (0..res.directions)
        .filter(|&k| lattice_transversal(&q.family, res.direction(k), 1e-4))
        .collect();
    outcome(
        specs_ok && failed.is_empty() && swept.is_none() && lattice_hits.is_empty(),
        format!(
            "percent-area α=0.3 specs: {specs_ok}; ordered triples without witness: {}/24 {failed:?}; \
             full transversal at M=2048: {}; lattice (step 1e-4) hits: {}",
            failed.len(),
            swept.map_or("none".to_string(), |l| l.to_string()),
            lattice_hits.len()
        ),
    )
}

fn criterion_2() -> Outcome {
    let c = match ColorfulCounterexample::build(DEFAULT_EPSILON, DEFAULT_DELTA) {
        Ok(c) => c,
        Err(e) => return outcome(false, format!("build failed: {e}")),
    };
    let res = Resolution::certification();
    let hints = construction_hints(&c.base);
    let triples = c.rainbow_triples();
    let failed: Vec<String> = triples
        .iter()
        .filter(|t| !ordered_witness(&c.family.subfamily(&t[..]), &hints, &res))
        .map(|t| t.iter().map(|&i| c.family[i].label()).join(","))
        .collect();
    let classes: Vec<String> = Color::ALL
        .iter()
        .filter(|&&color| {
            let class = c.family.subfamily(&c.family.color_indices(color));
            find_transversal(&class, false, &res).is_some()
        })
        .map(|c| c.to_string())
        .collect();
    let mono = find_monochromatic_transversal(&c.family, &res).ok().flatten();
    outcome(
        failed.is_empty() && classes.is_empty() && mono.is_none() && triples.len() == 64,
        format!(
            "rainbow triples without ordered witness: {}/{} {failed:?}; color classes with a transversal at M=2048: {classes:?}",
            failed.len(),
            triples.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut r = rng(303);
    let res = Resolution::default();
    let mut failures = Vec::new();
    let mut feasible = 0;
    for instance in 0..500 {
        let n = r.random_range(2..=7);
        let spread = r.random_range(0.1..1.5);
        let shapes: Vec<ConvexPolygon> = (0..n)
            .map(|_| {
                let c = (r.random_range(-spread..spread), r.random_range(-spread..spread));
                let radius = r.random_range(0.5..1.5);
                random_polygon(&mut r, c, radius)
            })
            .collect();
        let family = percent_family(shapes, r.random_range(0.05..0.4));
        let theta = r.random_range(0.0..TAU);
        let ivs: Vec<_> = family.entries().iter().map(|e| stab_offset_interval(e, theta)).collect();
        let pairwise = ivs.iter().tuple_combinations().all(|(a, b)| !a.intersect(b).is_empty());
        let full = !ivs.iter().skip(1).fold(ivs[0], |acc, iv| acc.intersect(iv)).is_empty();
        let line = find_transversal_in_direction(&family, theta, false, &res);
        let stabs = line.is_some_and(|l| {
            family.entries().iter().all(|e| {
                let (m, p) = side_fractions(e.shape(), l.theta(), l.offset());
                is_stabber(&l, e) && m >= e.alpha() - EPS_AREA && p >= e.alpha() - EPS_AREA
            })
        });
        feasible += full as usize;
        if pairwise != full || full != line.is_some() || (full && !stabs) {
            failures.push(instance);
        }
    }
    outcome(
        failures.is_empty(),
        format!("500 instances ({feasible} feasible), failures: {failures:?}"),
    )
}

fn rotate_entry(poly: &ConvexPolygon, angle: f64, shift: Point2) -> ConvexPolygon {
    poly.rotate_about(Point2::new(0.0, 0.0), angle).translate(shift)
}

fn criterion_4() -> Outcome {
    let mut r = rng(404);
    let res = Resolution::with_directions(1024);
    let mut certified = 0;
    let mut attempts = 0;
    let mut found = Vec::new();
    while certified < 100 && attempts < 10_000 {
        attempts += 1;
        let angle = r.random_range(0.0..TAU);
        let shift = Point2::new(r.random_range(-3.0..3.0), r.random_range(-3.0..3.0));
        let gap = r.random_range(2.0..4.0);
        let centers = [(-gap, 1.1), (0.0, -1.1), (gap, 1.1)];
        let shapes: Vec<ConvexPolygon> = centers
            .iter()
            .map(|&(x, y)| rotate_entry(&random_polygon(&mut r, (x, y), 1.0), angle, shift))
            .collect();
        let family = percent_family(shapes, r.random_range(0.1..0.45));
        // the x axis carried along with the sets
        let ell = DirectedLine::new(angle, shift.dot(Point2::new(-angle.sin(), angle.cos())));
        match separates_middle(&ell, &family[0], &family[1], &family[2]) {
            Ok(true) => {}
            _ => continue,
        }
        certified += 1;
        if let Some(l) = find_transversal(&family, true, &res) {
            found.push((attempts, l));
        }
    }
    let a = FamilyEntry::percent_area("A", ConvexPolygon::rectangle(-1.0, -0.5, 0.6, 3.0), 0.3).unwrap();
    let b = FamilyEntry::percent_area("B", ConvexPolygon::rectangle(-1.0, -3.0, 1.0, 0.6), 0.3).unwrap();
    let c = FamilyEntry::percent_area("C", ConvexPolygon::rectangle(-0.6, -0.5, 1.0, 3.0), 0.3).unwrap();
    let ell = DirectedLine::new(0.0, 0.0);
    let figure_ok = separates_middle(&ell, &a, &b, &c).is_err() && separates_middle_unchecked(&ell, &a, &b, &c);
    let figure = Family::new(vec![a, b, c]);
    let m = find_transversal(&figure, true, &res);
    let m_ok = m.is_some_and(|l| is_transversal(&l, &figure, true));
    outcome(
        certified == 100 && found.is_empty() && figure_ok && m_ok,
        format!(
            "{certified} certified disjoint triples ({attempts} drawn), ordered transversals found: {}; \
             overlapping figure: certificate pattern {figure_ok}, ordered transversal {}",
            found.len(),
            m.map_or("none".to_string(), |l| l.to_string())
        ),
    )
}

fn gauge_deviation(g: &RectangleGauge, alpha: f64, r: &mut impl Rng) -> f64 {
    let mut worst = 0.0f64;
    for p in [g.p_minus, g.p_plus] {
        let mut drawn = 0;
        while drawn < 50 {
            let theta = r.random_range(0.0..TAU);
            let line = DirectedLine::new(theta, p.dot(Point2::new(-theta.sin(), theta.cos())));
            if !g.crosses_long_sides(&line) {
                continue;
            }
            drawn += 1;
            let (m, q) = side_fractions(&g.rect, line.theta(), line.offset());
            worst = worst.max((m.min(q) - alpha).abs());
        }
    }
    worst
}

fn criterion_5() -> Outcome {
    let mut r = rng(505);
    let q = QuantitativeCounterexample::build(DEFAULT_DELTA).unwrap();
    let c = ColorfulCounterexample::build(DEFAULT_EPSILON, DEFAULT_DELTA).unwrap();
    let quantitative = q
        .gauges
        .iter()
        .map(|g| gauge_deviation(g, COUNTEREXAMPLE_ALPHA, &mut r))
        .fold(0.0, f64::max);
    let colorful = c
        .gauges
        .iter()
        .map(|g| gauge_deviation(g, g.alpha, &mut r))
        .fold(0.0, f64::max);
    outcome(
        quantitative <= 1e-9 && colorful <= 1e-9,
        format!(
            "max |fraction − α| over 50 lines per gauge point: {quantitative:.2e} (4 rectangles, α=0.3), \
             {colorful:.2e} (12 colored rectangles, own α)"
        ),
    )
}

fn fuzz(theorem: TheoremId, trials: u64) -> (usize, usize, Vec<u64>) {
    let options = VerifyOptions::default();
    let params = GeneratorParams::default();
    let (mut hypothesis, mut upheld, mut violated) = (0, 0, Vec::new());
    for seed in 0..trials {
        let family = generate(seed, 5, GeneratorMode::Disjoint, &params).unwrap().family;
        let report = verify_theorem(&family, theorem, &options);
        hypothesis += report.hypothesis_holds as usize;
        match report.status {
            Status::Upheld => upheld += 1,
            Status::Violated | Status::PrerequisiteFailed => violated.push(seed),
            Status::Vacuous => {}
        }
    }
    (hypothesis, upheld, violated)
}

fn criterion_6() -> Outcome {
    let (h1, u1, v1) = fuzz(TheoremId::T1_1, 500);
    let (h3, u3, v3) = fuzz(TheoremId::T3_3, 500);
    outcome(
        v1.is_empty() && v3.is_empty() && h1 > 0 && h3 > 0,
        format!(
            "T1.1: 500 families, hypothesis true {h1}, upheld {u1}, violations {v1:?}; \
             T3.3: 500 families, hypothesis true {h3}, upheld {u3}, violations {v3:?}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut pairs = 0u64;
    let mut qualifying = 0u64;
    let mut failures = Vec::new();
    for n in 1..=6 {
        let sign_lists: Vec<Vec<i8>> = (0..n).map(|_| [-1i8, 0, 1]).multi_cartesian_product().collect();
        for coloring in (0..n).map(|_| Color::ALL).multi_cartesian_product() {
            let vectors: Vec<SignVector> = sign_lists
                .iter()
                .map(|s| SignVector::new(s.iter().copied().zip(coloring.iter().copied()).collect()).unwrap())
                .collect();
            let good: Vec<bool> = vectors.iter().map(|x| is_balanced(x) && is_hadwiger(x)).collect();
            let first: Vec<Option<i8>> = vectors.iter().map(|x| first_nonzero(x).map(|(_, s)| s)).collect();
            // y ranges over the vectors that agree with x on its support
            for (ix, x) in sign_lists.iter().enumerate() {
                let choices = x.iter().map(|&s| if s == 0 { vec![-1i8, 0, 1] } else { vec![s] });
                for y in choices.multi_cartesian_product() {
                    let iy = y.iter().fold(0usize, |acc, &s| acc * 3 + (s + 1) as usize);
                    pairs += 1;
                    debug_assert!(precedes(&vectors[ix], &vectors[iy]).unwrap());
                    if good[ix] && good[iy] {
                        qualifying += 1;
                        if first[ix] != first[iy] && failures.len() < 5 {
                            failures.push(format!("{} ≺ {}", vectors[ix], vectors[iy]));
                        }
                    }
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{pairs} pairs x ≺ y of length ≤ 6, {qualifying} balanced and Hadwiger, failures: {failures:?}"),
    )
}

fn criterion_8() -> Outcome {
    let params = GeneratorParams {
        colored: true,
        ..GeneratorParams::default()
    };
    let mut blocked = 0;
    let mut failures = Vec::new();
    for seed in 0..200u64 {
        let family = generate(seed, 7, GeneratorMode::Disjoint, &params).unwrap().family;
        for k in 0..64 {
            let theta = TAU * k as f64 / 64.0;
            let stabbable = Color::ALL.iter().any(|&c| {
                family
                    .color_indices(c)
                    .iter()
                    .map(|&i| stab_offset_interval(&family[i], theta))
                    .reduce(|a, b| a.intersect(&b))
                    .is_none_or(|iv| !iv.is_empty())
            });
            if stabbable {
                continue;
            }
            blocked += 1;
            let (_, x, _) = middle_line(&family, theta).unwrap();
            if !is_balanced(&x) {
                failures.push(format!("seed {seed} k {k}: {x}"));
            }
        }
    }
    outcome(
        failures.is_empty() && blocked > 0,
        format!("200 families × 64 directions, {blocked} with no stabbable color class, unbalanced: {failures:?}"),
    )
}

fn criterion_9() -> Outcome {
    let mut r = rng(909);
    let mut bad = [0usize; 4];
    for _ in 0..1000 {
        let center = (r.random_range(-3.0..3.0), r.random_range(-3.0..3.0));
        let poly = random_polygon(&mut r, center, 1.5);
        let line = DirectedLine::new(r.random_range(0.0..TAU), r.random_range(-4.0..4.0));
        let sum = poly.clip_halfplane(&line, Side::Plus).area() + poly.clip_halfplane(&line, Side::Minus).area();
        if (sum - poly.area()).abs() > 1e-9 * poly.area().max(1.0) {
            bad[0] += 1;
        }
    }
    for _ in 0..1000 {
        let poly = random_polygon(&mut r, (0.0, 0.0), 1.5);
        let theta = r.random_range(0.0..TAU);
        let proj = poly.project_normal(theta);
        let specs = [
            FunctionalSpec::Area,
            FunctionalSpec::Perimeter,
            FunctionalSpec::Diameter,
            FunctionalSpec::Width,
            FunctionalSpec::percent_area_of(poly.clone()).unwrap(),
        ];
        let monotone = specs.iter().all(|f| {
            let scale = f.evaluate(&poly).unwrap().max(1.0);
            (0..100)
                .map(|k| offset_profile(f, &poly, theta, proj.lo - 0.1 + (proj.length() + 0.2) * k as f64 / 99.0).unwrap())
                .tuple_windows()
                .all(|(a, b)| b >= a - EPS_AREA * scale)
        });
        if !monotone {
            bad[1] += 1;
        }
    }
    let res = Resolution::with_directions(360);
    for _ in 0..1000 {
        let shapes = random_disjoint(&mut r, 2);
        let alpha = r.random_range(0.1..0.45);
        let a = FamilyEntry::percent_area("a", shapes[0].clone(), alpha).unwrap();
        let b = FamilyEntry::percent_area("b", shapes[1].clone(), alpha).unwrap();
        let stab = pair_direction_arcs(&a, &b, ArcMode::Stab, &res);
        let ab = pair_direction_arcs(&a, &b, ArcMode::SeparationOrdered, &res);
        let ba = pair_direction_arcs(&b, &a, ArcMode::SeparationOrdered, &res);
        let sep = ab.union(&ba);
        let slack = (stab.arcs().len() + sep.arcs().len()).max(1) as f64 * 2.0 * res.eps_ang;
        if TAU - stab.union(&sep).measure() > slack || stab.intersection(&sep).measure() > slack {
            bad[2] += 1;
        }
        if ab.rotated(PI).distance(&ba) > 2.0 * slack {
            bad[3] += 1;
        }
    }
    outcome(
        bad == [0; 4],
        format!(
            "1000 instances each, failures: clip additivity {}, monotone profiles {}, arc complementarity {}, antipodal symmetry {}",
            bad[0], bad[1], bad[2], bad[3]
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 quantitative counterexample certification", criterion_1, Some(Duration::from_secs(60))),
        ("2 colorful counterexample certification", criterion_2, Some(Duration::from_secs(120))),
        ("3 pairwise/full interval equivalence", criterion_3, None),
        ("4 separated middle set blocks ordered transversals", criterion_4, None),
        ("5 rectangle gauge property", criterion_5, None),
        ("6 disjoint-family fuzz", criterion_6, Some(Duration::from_secs(600))),
        ("7 exhaustive sign-vector order property", criterion_7, Some(Duration::from_secs(60))),
        ("8 middle vectors are balanced", criterion_8, None),
        ("9 kernel invariants", criterion_9, None),
    ];
    let mut all = true;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let passed = result.passed && in_time;
        all &= passed;
        let budget = limit.map_or(String::new(), |l| format!(" / limit {}s", l.as_secs()));
        println!(
            "criterion {name}: {} ({:.2}s{budget}) {}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            result.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
