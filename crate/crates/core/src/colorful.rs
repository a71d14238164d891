//! Colorful separating sign vectors, middle lines and the predicates used to
//! reason about three-colored families.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::DirectedLine;
use crate::stabbing::{find_transversal, is_stabber, stab_thresholds, ArcSet, Family, Resolution, EPS_ROOT};

/// One of the three colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    pub fn index(self) -> usize {
        match self {
            Color::Red => 0,
            Color::Green => 1,
            Color::Blue => 2,
        }
    }

    /// Single-letter suffix used in labels (`r`, `g`, `b`).
    pub fn letter(self) -> char {
        match self {
            Color::Red => 'r',
            Color::Green => 'g',
            Color::Blue => 'b',
        }
    }
}

impl std::str::FromStr for Color {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "red" | "r" => Ok(Color::Red),
            "green" | "g" => Ok(Color::Green),
            "blue" | "b" => Ok(Color::Blue),
            other => Err(Error::InvalidParameter(format!("unknown color `{other}`"))),
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        };
        f.write_str(name)
    }
}

/// Colored vector with entries in `{-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector {
    entries: Vec<(i8, Color)>,
}

impl SignVector {
    pub fn new(entries: Vec<(i8, Color)>) -> Result<Self> {
        if let Some((s, _)) = entries.iter().find(|(s, _)| !(-1..=1).contains(s)) {
            return Err(Error::InvalidParameter(format!("sign {s} is not -1, 0 or 1")));
        }
        Ok(SignVector { entries })
    }

    pub fn entries(&self) -> &[(i8, Color)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn signs(&self) -> impl Iterator<Item = i8> + '_ {
        self.entries.iter().map(|&(s, _)| s)
    }

    pub fn is_zero(&self) -> bool {
        self.signs().all(|s| s == 0)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (s, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}{}", s, c.letter())?;
        }
        f.write_str(")")
    }
}

fn colors_of(family: &Family) -> Result<Vec<Color>> {
    family
        .entries()
        .iter()
        .map(|e| e.color().ok_or_else(|| Error::Uncolored(e.label().to_string())))
        .collect()
}

/// Sign of one entry: 0 when stabbed, -1 when the part right of the line is
/// below threshold, 1 when only the part left of it is.
fn sign_of(line: &DirectedLine, entry: &crate::stabbing::FamilyEntry) -> i8 {
    let (plus, minus) = entry.side_values(line);
    let target = entry.target();
    if minus < target {
        -1
    } else if plus < target {
        1
    } else {
        0
    }
}

/// The colorful separating sign vector of a family with respect to a line.
pub fn sign_vector(line: &DirectedLine, family: &Family) -> Result<SignVector> {
    let colors = colors_of(family)?;
    Ok(SignVector {
        entries: family
            .entries()
            .iter()
            .zip(colors)
            .map(|(e, c)| (sign_of(line, e), c))
            .collect(),
    })
}

/// Per-color extremes of the stabbing offset intervals `[a_i, b_i]` in one
/// direction, with `p_c = sup a_i` and `q_c = inf b_i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectionSummary {
    /// Indexed by [`Color::index`].
    pub p: [f64; 3],
    pub q: [f64; 3],
    /// The `p` values in increasing order.
    pub u: [f64; 3],
    /// The `q` values in decreasing order.
    pub v: [f64; 3],
    /// `(u_2 + v_2) / 2`.
    pub mid: f64,
}

impl ProjectionSummary {
    /// Builds the summary from per-color values; a color with `p > q` has no
    /// common stabbing offset.
    pub fn from_extremes(p: [f64; 3], q: [f64; 3]) -> Self {
        let mut u = p;
        u.sort_by(f64::total_cmp);
        let mut v = q;
        v.sort_by(|a, b| b.total_cmp(a));
        ProjectionSummary {
            p,
            q,
            u,
            v,
            mid: 0.5 * (u[1] + v[1]),
        }
    }

    /// Builds the summary from colored intervals. A color with an empty
    /// interval (or no entries) gets the sentinel `p = bound + 1`,
    /// `q = -(bound + 1)`, where every finite endpoint lies in
    /// `[-bound, bound]`.
    pub fn from_intervals(intervals: &[(f64, f64, Color)], bound: f64) -> Self {
        let sentinel = bound.abs() + 1.0;
        let mut p = [f64::NEG_INFINITY; 3];
        let mut q = [f64::INFINITY; 3];
        let mut empty = [true; 3];
        let mut any_empty_interval = [false; 3];
        for &(a, b, c) in intervals {
            let k = c.index();
            empty[k] = false;
            if !(a <= b) {
                any_empty_interval[k] = true;
            }
            p[k] = p[k].max(a);
            q[k] = q[k].min(b);
        }
        for k in 0..3 {
            if empty[k] || any_empty_interval[k] {
                p[k] = sentinel;
                q[k] = -sentinel;
            } else {
                p[k] = p[k].clamp(-sentinel, sentinel);
                q[k] = q[k].clamp(-sentinel, sentinel);
            }
        }
        ProjectionSummary::from_extremes(p, q)
    }
}

/// The middle line of a colored family in direction θ, its sign vector and
/// the projection summary it was built from.
pub fn middle_line(family: &Family, theta: f64) -> Result<(DirectedLine, SignVector, ProjectionSummary)> {
    let colors = colors_of(family)?;
    let intervals: Vec<(f64, f64, Color)> = family
        .entries()
        .iter()
        .zip(&colors)
        .map(|(e, &c)| {
            let t = stab_thresholds(e, theta, EPS_ROOT);
            (t.lo, t.hi, c)
        })
        .collect();
    let summary = ProjectionSummary::from_intervals(&intervals, family.radius());
    let line = DirectedLine::new(theta, summary.mid);
    let x = sign_vector(&line, family)?;
    Ok((line, x, summary))
}

/// How the "balanced" condition on a pair of colors is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BalanceReading {
    /// Some entry of one color is 1 and some entry of the other is -1, in
    /// either assignment of the two colors.
    #[default]
    Symmetric,
    /// Both assignments are required, so every color involved carries both
    /// signs.
    Strict,
}

/// Every pair of colors has sets hanging to opposite sides.
pub fn is_balanced(x: &SignVector) -> bool {
    is_balanced_with(x, BalanceReading::Symmetric)
}

pub fn is_balanced_with(x: &SignVector, reading: BalanceReading) -> bool {
    let mut has_plus = [false; 3];
    let mut has_minus = [false; 3];
    for &(s, c) in x.entries() {
        match s {
            1 => has_plus[c.index()] = true,
            -1 => has_minus[c.index()] = true,
            _ => {}
        }
    }
    let witnessed = |a: usize, b: usize| has_plus[a] && has_minus[b];
    [(0, 1), (0, 2), (1, 2)].iter().all(|&(a, b)| match reading {
        BalanceReading::Symmetric => witnessed(a, b) || witnessed(b, a),
        BalanceReading::Strict => witnessed(a, b) && witnessed(b, a),
    })
}

/// No `i < j < k` with three distinct colors reads `(-1, 1, -1)` or
/// `(1, -1, 1)`.
pub fn is_hadwiger(x: &SignVector) -> bool {
    let e = x.entries();
    let n = e.len();
    for j in 0..n {
        let (sj, cj) = e[j];
        if sj == 0 {
            continue;
        }
        // for each color of the outer entries, whether an entry of the
        // opposite sign exists before / after j
        let mut before = [false; 3];
        for &(s, c) in &e[..j] {
            if s == -sj && c != cj {
                before[c.index()] = true;
            }
        }
        let mut after = [false; 3];
        for &(s, c) in &e[j + 1..] {
            if s == -sj && c != cj {
                after[c.index()] = true;
            }
        }
        let clash = (0..3).any(|a| (0..3).any(|b| a != b && before[a] && after[b]));
        if clash {
            return false;
        }
    }
    true
}

fn check_comparable(x: &SignVector, y: &SignVector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Incomparable(format!("lengths {} and {}", x.len(), y.len())));
    }
    if let Some(i) = (0..x.len()).find(|&i| x.entries[i].1 != y.entries[i].1) {
        return Err(Error::Incomparable(format!("colors differ at coordinate {i}")));
    }
    Ok(())
}

/// `x ≺ y`: every nonzero coordinate of `x` agrees with `y`.
pub fn precedes(x: &SignVector, y: &SignVector) -> Result<bool> {
    check_comparable(x, y)?;
    Ok(x.signs().zip(y.signs()).all(|(a, b)| a == 0 || a == b))
}

/// Index and sign of the first nonzero coordinate.
pub fn first_nonzero(x: &SignVector) -> Option<(usize, i8)> {
    x.signs().enumerate().find(|&(_, s)| s != 0)
}

/// Classification of one sampled direction by its middle vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectionClass {
    /// First nonzero entry is 1.
    First,
    /// First nonzero entry is -1.
    Second,
    /// Middle vector is all zero.
    Neither,
}

/// Classes of the directions `2πk/M`, in index order.
pub fn classify_directions(family: &Family, m: usize) -> Result<Vec<DirectionClass>> {
    colors_of(family)?;
    let res = Resolution::with_directions(m);
    (0..m)
        .into_par_iter()
        .map(|k| {
            let (_, x, _) = middle_line(family, res.direction(k))?;
            Ok(match first_nonzero(&x) {
                Some((_, 1)) => DirectionClass::First,
                Some(_) => DirectionClass::Second,
                None => DirectionClass::Neither,
            })
        })
        .collect()
}

/// The direction sets whose middle vector starts with 1 and with -1,
/// assembled from `M` samples; each sample owns the arc `[2πk/M, 2π(k+1)/M)`.
pub fn s1_s2_direction_sets(family: &Family, m: usize) -> Result<(ArcSet, ArcSet)> {
    let classes = classify_directions(family, m)?;
    let step = std::f64::consts::TAU / m as f64;
    let arcs_of = |class: DirectionClass| {
        ArcSet::from_arcs(
            classes
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == class)
                .map(|(k, _)| (k as f64 * step, (k + 1) as f64 * step)),
        )
    };
    Ok((arcs_of(DirectionClass::First), arcs_of(DirectionClass::Second)))
}

/// A color whose sets have a common transversal, tried in the order red,
/// green, blue. A color with no sets is vacuously transversed by any line.
pub fn find_monochromatic_transversal(family: &Family, res: &Resolution) -> Result<Option<(Color, DirectedLine)>> {
    colors_of(family)?;
    for color in Color::ALL {
        let class = family.subfamily(&family.color_indices(color));
        if class.is_empty() {
            return Ok(Some((color, DirectedLine::new(0.0, 0.0))));
        }
        if let Some(line) = find_transversal(&class, false, res) {
            debug_assert!(class.entries().iter().all(|e| is_stabber(&line, e)));
            return Ok(Some((color, line)));
        }
    }
    Ok(None)
}
