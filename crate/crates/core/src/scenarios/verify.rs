//! Hypothesis and conclusion checkers for the Hadwiger-type statements.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::colorful::{find_monochromatic_transversal, Color};
use crate::error::{Error, Result};
use crate::geometry::DirectedLine;
use crate::stabbing::{find_transversal_with_hints, Family, Resolution};

use super::counterexample::rainbow_triples;

/// The statements that can be verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// Disjoint family, every triple has an ordered transversal ⇒ the
    /// family has a transversal.
    T1_1,
    /// Any family, every six sets have an ordered transversal ⇒ ordered
    /// family transversal.
    T3_2,
    /// Disjoint family, every four sets have an ordered transversal ⇒
    /// ordered family transversal.
    T3_3,
    /// Disjoint colored family, every rainbow triple `i < j < k` has an
    /// ordered transversal ⇒ some color class has a transversal.
    T1_2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 4] = [TheoremId::T1_1, TheoremId::T3_2, TheoremId::T3_3, TheoremId::T1_2];

    pub fn subset_size(self) -> usize {
        match self {
            TheoremId::T1_1 | TheoremId::T1_2 => 3,
            TheoremId::T3_2 => 6,
            TheoremId::T3_3 => 4,
        }
    }

    pub fn requires_disjoint(self) -> bool {
        self != TheoremId::T3_2
    }

    pub fn requires_colors(self) -> bool {
        self == TheoremId::T1_2
    }

    /// Whether the conclusion asks for a transversal in family order.
    pub fn ordered_conclusion(self) -> bool {
        matches!(self, TheoremId::T3_2 | TheoremId::T3_3)
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::T1_1 => "T1.1",
            TheoremId::T3_2 => "T3.2",
            TheoremId::T3_3 => "T3.3",
            TheoremId::T1_2 => "T1.2",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().trim_start_matches(['T', 't']);
        match key {
            "1.1" => Ok(TheoremId::T1_1),
            "3.2" => Ok(TheoremId::T3_2),
            "3.3" => Ok(TheoremId::T3_3),
            "1.2" => Ok(TheoremId::T1_2),
            _ => Err(Error::InvalidParameter(format!(
                "unknown theorem `{s}` (expected T1.1, T3.2, T3.3 or T1.2)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub resolution: Resolution,
    /// Run statements that require disjointness on overlapping families.
    pub allow_overlap: bool,
    /// Families up to this size have every subfamily checked.
    pub exhaustive_limit: usize,
    /// Number of random subfamilies checked above the limit.
    pub sample_size: usize,
    pub seed: u64,
    /// Before reporting a violation, retry the conclusion at four times the
    /// directions with the hypothesis witnesses as hints.
    pub escalate: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            resolution: Resolution::default(),
            allow_overlap: false,
            exhaustive_limit: 12,
            sample_size: 500,
            seed: 0,
            escalate: true,
        }
    }
}

/// A subfamily that failed, or the family-level failure.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisCheck {
    pub holds: bool,
    pub subfamilies_checked: usize,
    /// Whether every required subfamily was (or would have been) enumerated.
    pub exhaustive: bool,
    /// Ordered transversals found for the checked subfamilies.
    pub witnesses: Vec<(Vec<usize>, DirectedLine)>,
    /// The first failing subfamily, when the hypothesis fails.
    pub failure: Option<Violation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Hypothesis and conclusion both hold.
    Upheld,
    /// Hypothesis fails, so the statement says nothing.
    Vacuous,
    /// Hypothesis holds and no conclusion witness was found at resolution.
    Violated,
    /// Disjointness or coloring required by the statement is missing.
    PrerequisiteFailed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Upheld => "upheld",
            Status::Vacuous => "vacuous",
            Status::Violated => "violated",
            Status::PrerequisiteFailed => "prerequisite failed",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub status: Status,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub witness: Option<DirectedLine>,
    /// Color class of the witness for the colorful statement.
    pub witness_color: Option<Color>,
    pub violations: Vec<Violation>,
    pub subfamilies_checked: usize,
    pub exhaustive: bool,
    pub prerequisite: Option<String>,
    pub resolution: Resolution,
}

/// Checks disjointness and coloring required by `theorem`.
pub fn check_prerequisites(family: &Family, theorem: TheoremId, allow_overlap: bool) -> Result<()> {
    if family.is_empty() {
        return Err(Error::Precondition("family is empty".into()));
    }
    if theorem.requires_colors() && !family.is_colored() {
        return Err(Error::Precondition(format!("{theorem} needs every set colored")));
    }
    if theorem.requires_disjoint() && !allow_overlap && !family.is_pairwise_disjoint() {
        return Err(Error::Precondition(format!("{theorem} needs pairwise disjoint sets")));
    }
    Ok(())
}

fn subfamilies(family: &Family, theorem: TheoremId, options: &VerifyOptions) -> (Vec<Vec<usize>>, bool) {
    let n = family.len();
    if theorem == TheoremId::T1_2 {
        let all: Vec<Vec<usize>> = rainbow_triples(family).into_iter().map(|t| t.to_vec()).collect();
        if n <= options.exhaustive_limit || all.len() <= options.sample_size {
            return (all, true);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let mut picked: Vec<usize> = sample(&mut rng, all.len(), options.sample_size).into_vec();
        picked.sort_unstable();
        return (picked.into_iter().map(|i| all[i].clone()).collect(), false);
    }
    let k = theorem.subset_size().min(n);
    if n <= options.exhaustive_limit {
        return ((0..n).combinations(k).collect(), true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let subsets = (0..options.sample_size)
        .map(|_| {
            let mut s = sample(&mut rng, n, k).into_vec();
            s.sort_unstable();
            s
        })
        .collect();
    (subsets, false)
}

/// Runs the ordered transversal search on every required subfamily,
/// stopping at the first failure. Subfamilies are all triples, six-sets,
/// four-sets or rainbow triples depending on the statement; families
/// smaller than the subset size are checked whole. Above
/// `options.exhaustive_limit` sets, `options.sample_size` random
/// subfamilies are checked instead.
pub fn check_hypothesis(family: &Family, theorem: TheoremId, options: &VerifyOptions) -> Result<HypothesisCheck> {
    check_prerequisites(family, theorem, options.allow_overlap)?;
    let (subs, exhaustive) = subfamilies(family, theorem, options);
    let mut witnesses = Vec::with_capacity(subs.len());
    let mut checked = 0;
    for indices in subs {
        checked += 1;
        let sub = family.subfamily(&indices);
        match find_transversal_with_hints(&sub, true, &options.resolution, &[]) {
            Some(line) => witnesses.push((indices, line)),
            None => {
                let detail = format!(
                    "no ordered transversal of {} found at resolution M={}",
                    indices.iter().map(|&i| family[i].label()).join(","),
                    options.resolution.directions
                );
                return Ok(HypothesisCheck {
                    holds: false,
                    subfamilies_checked: checked,
                    exhaustive,
                    witnesses,
                    failure: Some(Violation { indices, detail }),
                });
            }
        }
    }
    Ok(HypothesisCheck {
        holds: true,
        subfamilies_checked: checked,
        exhaustive,
        witnesses,
        failure: None,
    })
}

fn conclusion(
    family: &Family,
    theorem: TheoremId,
    res: &Resolution,
    hints: &[f64],
) -> Result<Option<(DirectedLine, Option<Color>)>> {
    if theorem == TheoremId::T1_2 {
        if let Some((c, line)) = find_monochromatic_transversal(family, res)? {
            return Ok(Some((line, Some(c))));
        }
        if hints.is_empty() {
            return Ok(None);
        }
        for color in Color::ALL {
            let class = family.subfamily(&family.color_indices(color));
            if let Some(line) = find_transversal_with_hints(&class, false, res, hints) {
                return Ok(Some((line, Some(color))));
            }
        }
        return Ok(None);
    }
    Ok(find_transversal_with_hints(family, theorem.ordered_conclusion(), res, hints).map(|l| (l, None)))
}

/// Checks the hypothesis and the conclusion of `theorem` on `family`.
/// Missing prerequisites yield a report with
/// [`Status::PrerequisiteFailed`] rather than an error.
pub fn verify_theorem(family: &Family, theorem: TheoremId, options: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport {
        theorem,
        status: Status::PrerequisiteFailed,
        hypothesis_holds: false,
        conclusion_holds: false,
        witness: None,
        witness_color: None,
        violations: Vec::new(),
        subfamilies_checked: 0,
        exhaustive: true,
        prerequisite: None,
        resolution: options.resolution,
    };
    let hyp = match check_hypothesis(family, theorem, options) {
        Ok(h) => h,
        Err(e) => {
            report.prerequisite = Some(e.to_string());
            return report;
        }
    };
    report.hypothesis_holds = hyp.holds;
    report.subfamilies_checked = hyp.subfamilies_checked;
    report.exhaustive = hyp.exhaustive;
    report.violations.extend(hyp.failure);

    // uncolored families were rejected above, so the colorful search cannot fail
    let mut found = conclusion(family, theorem, &options.resolution, &[]).unwrap_or(None);
    if found.is_none() && hyp.holds && options.escalate {
        let hints: Vec<f64> = hyp.witnesses.iter().map(|(_, l)| l.theta()).collect();
        let finer = Resolution {
            directions: options.resolution.directions * 4,
            refine_candidates: options.resolution.refine_candidates * 2,
            ..options.resolution
        };
        found = conclusion(family, theorem, &finer, &hints).unwrap_or(None);
        if found.is_some() {
            report.resolution = finer;
        }
    }
    if let Some((line, color)) = found {
        report.conclusion_holds = true;
        report.witness = Some(line);
        report.witness_color = color;
    }
    report.status = match (hyp.holds, report.conclusion_holds) {
        (false, _) => Status::Vacuous,
        (true, true) => Status::Upheld,
        (true, false) => {
            report.violations.push(Violation {
                indices: (0..family.len()).collect(),
                detail: format!(
                    "hypothesis holds but no {} found at resolution M={}",
                    match theorem {
                        TheoremId::T1_2 => "monochromatic transversal",
                        t if t.ordered_conclusion() => "ordered transversal",
                        _ => "transversal",
                    },
                    report.resolution.directions * if options.escalate { 4 } else { 1 }
                ),
            });
            Status::Violated
        }
    };
    report
}
