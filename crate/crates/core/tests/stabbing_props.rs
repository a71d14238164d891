mod common;

use alphastab::geometry::{ConvexPolygon, DirectedLine, Point2};
use alphastab::scenarios::{generate, GeneratorMode, GeneratorParams};
use alphastab::stabbing::{
    crossing_order, find_transversal, find_transversal_in_direction, is_stabber, is_transversal, pair_direction_arcs,
    reduced_set, separates_middle, separates_middle_unchecked, stab_offset_interval, stab_thresholds, ArcMode, Family,
    FamilyEntry, Resolution, EPS_ROOT,
};
use common::*;
use proptest::prelude::*;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

fn entry(poly: ConvexPolygon, alpha: f64) -> FamilyEntry {
    FamilyEntry::percent_area("e", poly, alpha).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stab_interval_matches_grid_oracle(poly in polygon_strategy(), alpha in 0.05..0.45f64, theta in 0.0..TAU) {
        let e = entry(poly, alpha);
        let iv = stab_offset_interval(&e, theta);
        let step = 1e-3;
        match grid_stab_range(&e, theta, step) {
            Some((first, last)) => {
                prop_assert!(iv.lo <= first + 1e-9 && last <= iv.hi + 1e-9);
                prop_assert!(first - iv.lo < step + 1e-9 && iv.hi - last < step + 1e-9);
            }
            None => prop_assert!(iv.is_empty() || iv.length() < step),
        }
    }

    #[test]
    fn stab_interval_is_reduced_projection(poly in polygon_strategy(), alpha in 0.05..0.49f64, theta in 0.0..TAU) {
        let e = entry(poly, alpha);
        let iv = stab_offset_interval(&e, theta);
        let reduced = reduced_set(&e, theta);
        prop_assert!(!iv.is_empty());
        let proj = reduced.shape.project_normal(theta);
        prop_assert!((proj.lo - iv.lo).abs() <= 2.0 * EPS_ROOT);
        prop_assert!((proj.hi - iv.hi).abs() <= 2.0 * EPS_ROOT);
        for s in [iv.lo, iv.midpoint(), iv.hi] {
            prop_assert!(is_stabber(&DirectedLine::new(theta, s), &e));
        }
    }

    #[test]
    fn pairwise_and_full_intersection_agree(seed in any::<u64>(), n in 2usize..7, theta in 0.0..TAU) {
        let mut r = rng(seed);
        let shapes: Vec<ConvexPolygon> = (0..n)
            .map(|_| {
                let c = (r.random_range(-1.5..1.5), r.random_range(-1.5..1.5));
                random_polygon(&mut r, c, 1.2)
            })
            .collect();
        let alpha = r.random_range(0.05..0.45);
        let family = percent_family(shapes, alpha);
        let ivs: Vec<_> = family.entries().iter().map(|e| stab_offset_interval(e, theta)).collect();
        let pairwise = (0..n).all(|i| (0..n).all(|j| !ivs[i].intersect(&ivs[j]).is_empty()));
        let line = find_transversal_in_direction(&family, theta, false, &Resolution::default());
        prop_assert_eq!(pairwise, line.is_some());
        if let Some(l) = line {
            prop_assert!(family.entries().iter().all(|e| is_stabber(&l, e)));
        }
    }

    #[test]
    fn stab_and_separation_arcs_are_complementary(seed in any::<u64>()) {
        let mut r = rng(seed);
        let shapes = random_disjoint(&mut r, 2);
        let alpha = r.random_range(0.1..0.45);
        let (a, b) = (entry(shapes[0].clone(), alpha), entry(shapes[1].clone(), alpha));
        let res = Resolution::with_directions(180);
        let stab = pair_direction_arcs(&a, &b, ArcMode::Stab, &res);
        let ab = pair_direction_arcs(&a, &b, ArcMode::SeparationOrdered, &res);
        let ba = pair_direction_arcs(&b, &a, ArcMode::SeparationOrdered, &res);
        let sep = ab.union(&ba);
        let arcs = (stab.arcs().len() + sep.arcs().len()).max(1) as f64;
        let slack = arcs * 2.0 * res.eps_ang;
        prop_assert!(TAU - stab.union(&sep).measure() <= slack);
        prop_assert!(stab.intersection(&sep).measure() <= slack);
        prop_assert!(ab.intersection(&ba).measure() <= slack);
        // reversing a direction swaps left and right
        prop_assert!(ab.rotated(PI).distance(&ba) <= 2.0 * slack);
    }

    #[test]
    fn ordered_separation_is_antipodal(seed in any::<u64>(), theta in 0.0..TAU) {
        let mut r = rng(seed);
        let shapes = random_disjoint(&mut r, 2);
        let (a, b) = (entry(shapes[0].clone(), 0.3), entry(shapes[1].clone(), 0.3));
        let (ta, tb) = (stab_thresholds(&a, theta, EPS_ROOT), stab_thresholds(&b, theta, EPS_ROOT));
        let (ra, rb) = (stab_thresholds(&a, theta + PI, EPS_ROOT), stab_thresholds(&b, theta + PI, EPS_ROOT));
        // a left and b right at θ means b left and a right at θ + π
        if ta.lo - tb.hi > 1e-8 {
            prop_assert!(rb.lo > ra.hi);
        }
        prop_assert!((ra.lo + ta.hi).abs() < 1e-8 && (ra.hi + ta.lo).abs() < 1e-8);
    }

    #[test]
    fn crossing_order_is_constant_on_disjoint_families(seed in any::<u64>(), theta in 0.0..TAU) {
        let mut r = rng(seed);
        let family = percent_family(random_disjoint(&mut r, 3), 0.1);
        let ivs: Vec<_> = family.entries().iter().map(|e| stab_offset_interval(e, theta)).collect();
        let common = ivs.iter().skip(1).fold(ivs[0], |acc, iv| acc.intersect(iv));
        if !common.is_empty() {
            let orders: Vec<bool> = (0..64)
                .map(|k| common.lo + common.length() * k as f64 / 63.0)
                .map(|s| crossing_order(&DirectedLine::new(theta, s), &family).unwrap())
                .collect();
            prop_assert!(orders.iter().all(|&o| o == orders[0]));
        }
    }
}

#[test]
fn found_transversals_are_transversals() {
    let params = GeneratorParams::default();
    let res = Resolution::default();
    for seed in 0..30 {
        let g = generate(seed, 4, GeneratorMode::Threaded, &params).unwrap();
        for ordered in [false, true] {
            if let Some(line) = find_transversal(&g.family, ordered, &res) {
                assert!(is_transversal(&line, &g.family, ordered), "seed {seed}");
            } else {
                assert!(ordered, "planted family {seed} has a transversal");
            }
        }
        let single = g.family.subfamily(&[0]);
        let line = find_transversal(&single, false, &res).unwrap();
        assert!(is_stabber(&line, &single[0]));
    }
}

fn stacked() -> Vec<ConvexPolygon> {
    (0..3)
        .map(|i| ConvexPolygon::rectangle(-1.0, 2.0 * i as f64, 1.0, 2.0 * i as f64 + 1.0))
        .collect()
}

#[test]
fn stacked_rectangle_examples() {
    let up = DirectedLine::through(Point2::new(0.0, 0.0), Point2::new(0.0, 1.0));
    let family = percent_family(stacked(), 0.3);
    assert!(is_transversal(&up, &family, false));
    assert!(is_transversal(&up, &family, true));
    let mut rev = stacked();
    rev.reverse();
    let reversed = percent_family(rev, 0.3);
    assert!(is_transversal(&up, &reversed, false));
    assert!(!is_transversal(&up, &reversed, true));
    let line = find_transversal_in_direction(&family, FRAC_PI_2, true, &Resolution::default()).unwrap();
    assert!(line.offset().abs() < 1e-9);
}

#[test]
fn crossing_order_on_overlapping_intervals() {
    // chords [0, 3] and [1, 2] along y = 0.5: nested, so either order works
    let outer = ConvexPolygon::rectangle(0.0, 0.0, 3.0, 1.0);
    let inner = ConvexPolygon::rectangle(1.0, 0.0, 2.0, 1.0);
    let line = DirectedLine::new(0.0, 0.5);
    for shapes in [vec![outer.clone(), inner.clone()], vec![inner, outer]] {
        assert!(crossing_order(&line, &percent_family(shapes, 0.3)).unwrap());
    }
    let far = percent_family(
        vec![ConvexPolygon::rectangle(5.0, 0.0, 6.0, 1.0), ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0)],
        0.3,
    );
    assert!(!crossing_order(&line, &far).unwrap());
    assert!(crossing_order(&line.reversed(), &far).unwrap());
    assert!(crossing_order(&DirectedLine::new(0.0, 9.0), &far).is_err());
}

#[test]
fn adjacent_squares_cannot_be_stabbed_vertically() {
    let a = entry(ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0), 0.3);
    let b = entry(ConvexPolygon::rectangle(1.5, 0.0, 2.5, 1.0), 0.3);
    let res = Resolution::with_directions(360);
    let stab = pair_direction_arcs(&a, &b, ArcMode::Stab, &res);
    let pair = Family::new(vec![a.clone(), b.clone()]);
    for k in 0..90 {
        let theta = TAU * (k as f64 + 0.37) / 90.0;
        let oracle = grid_common_stab(&pair, theta, 1e-3);
        let near_boundary = stab.arcs().iter().any(|&(s, e)| (theta - s).abs() < 0.02 || (theta - e).abs() < 0.02);
        if !near_boundary {
            assert_eq!(stab.contains(theta), oracle, "theta {theta}");
        }
    }
    for theta in [FRAC_PI_2 - 0.1, FRAC_PI_2, FRAC_PI_2 + 0.1, 3.0 * FRAC_PI_2] {
        assert!(!stab.contains(theta));
    }
    assert!(stab.contains(0.0) && stab.contains(PI));
    assert!(pair_direction_arcs(&a, &a, ArcMode::Stab, &res).is_full());
}

#[test]
fn concentric_squares_stab_in_every_direction() {
    let outer = entry(ConvexPolygon::rectangle(-2.0, -2.0, 2.0, 2.0), 0.3);
    let inner = entry(ConvexPolygon::rectangle(-1.0, -1.0, 1.0, 1.0), 0.3);
    let res = Resolution::with_directions(360);
    let stab = pair_direction_arcs(&outer, &inner, ArcMode::Stab, &res);
    assert!(stab.is_full());
    let pair = Family::new(vec![outer, inner]);
    for k in 0..36 {
        assert!(grid_common_stab(&pair, TAU * k as f64 / 36.0, 1e-3));
    }
}

fn squares_with_displaced_middle() -> [FamilyEntry; 3] {
    [
        entry(ConvexPolygon::rectangle(0.0, 0.1, 1.0, 1.1), 0.3),
        entry(ConvexPolygon::rectangle(2.0, -1.1, 3.0, -0.1), 0.3),
        entry(ConvexPolygon::rectangle(4.0, 0.1, 5.0, 1.1), 0.3),
    ]
}

#[test]
fn separated_middle_blocks_ordered_transversals() {
    let [a, b, c] = squares_with_displaced_middle();
    let l = DirectedLine::new(0.0, 0.0);
    assert!(separates_middle(&l, &a, &b, &c).unwrap());
    let family = Family::new(vec![a, b, c]);
    assert!(find_transversal(&family, true, &Resolution::with_directions(1024)).is_none());
    assert!(!grid_ordered_transversal(&family, 360, 1e-2));
}

#[test]
fn stabbing_line_is_not_a_separation_certificate() {
    let family = percent_family(
        (0..3).map(|i| ConvexPolygon::rectangle(3.0 * i as f64, -0.5, 3.0 * i as f64 + 1.0, 0.5)).collect(),
        0.3,
    );
    let l = DirectedLine::new(0.0, 0.0);
    assert!(!separates_middle(&l, &family[0], &family[1], &family[2]).unwrap());
}

#[test]
fn overlapping_sets_escape_the_separation_argument() {
    let a = entry(ConvexPolygon::rectangle(-1.0, -0.5, 0.6, 3.0), 0.3);
    let b = entry(ConvexPolygon::rectangle(-1.0, -3.0, 1.0, 0.6), 0.3);
    let c = entry(ConvexPolygon::rectangle(-0.6, -0.5, 1.0, 3.0), 0.3);
    let l = DirectedLine::new(0.0, 0.0);
    assert!(separates_middle(&l, &a, &b, &c).is_err());
    assert!(separates_middle_unchecked(&l, &a, &b, &c));
    let family = Family::new(vec![a, b, c]);
    let m = DirectedLine::through(Point2::new(0.0, 0.0), Point2::new(0.0, 1.0));
    assert!(is_transversal(&m, &family, true));
    assert!(grid_ordered_transversal(&family, 8, 1e-2));
    let found = find_transversal(&family, true, &Resolution::with_directions(1024)).unwrap();
    assert!(is_transversal(&found, &family, true));
}
