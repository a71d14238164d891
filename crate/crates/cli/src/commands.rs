//! Subcommand implementations. Each returns the process exit code and
//! writes its report to `out`, diagnostics to `err`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use alphastab::geometry::DirectedLine;
use alphastab::scenarios::{
    generate, verify_theorem, ColorfulCounterexample, GeneratorMode, GeneratorParams, QuantitativeCounterexample,
    TheoremId, VerificationReport, VerifyOptions,
};
use alphastab::stabbing::{find_transversal, Family, Resolution};
use alphastab::{Error, Result};

use crate::document::FamilyDocument;
use crate::svg::Figure;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;

/// Settings shared by all subcommands.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub directions: usize,
    pub eps_root: Option<f64>,
    pub eps_ang: Option<f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            directions: Resolution::default().directions,
            eps_root: None,
            eps_ang: None,
            seed: 0,
            out: None,
            svg: None,
        }
    }
}

impl RunConfig {
    pub fn resolution(&self) -> Result<Resolution> {
        if self.directions < 8 {
            return Err(Error::InvalidParameter(format!(
                "at least 8 directions are required, got {}",
                self.directions
            )));
        }
        let mut res = Resolution::with_directions(self.directions);
        for (value, slot, name) in [
            (self.eps_root, &mut res.eps_root, "eps-root"),
            (self.eps_ang, &mut res.eps_ang, "eps-ang"),
        ] {
            if let Some(v) = value {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
                }
                *slot = v;
            }
        }
        Ok(res)
    }
}

pub fn load_family(path: &Path) -> Result<Family> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    FamilyDocument::parse(&text)?.to_family()
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Validation(format!("cannot write {}: {e}", path.display())))
}

fn fail(err: &mut dyn Write, code: i32, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    code
}

fn format_line(line: &DirectedLine) -> String {
    format!("theta = {:.6} rad, offset = {:.6}", line.theta(), line.offset())
}

/// Figure of `family` with `line` and the pieces it cuts off.
pub fn transversal_figure(family: &Family, line: Option<&DirectedLine>) -> String {
    let mut fig = Figure::from_family(family);
    if let Some(l) = line {
        fig.pieces(family, l).line("ℓ", *l);
    }
    fig.render()
}

pub fn cmd_transversal(
    input: &Path,
    config: &RunConfig,
    ordered: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (family, res) = match load_family(input).and_then(|f| Ok((f, config.resolution()?))) {
        Ok(v) => v,
        Err(e) => return fail(err, EXIT_INVALID, &e),
    };
    let found = find_transversal(&family, ordered, &res);
    let kind = if ordered { "ordered transversal" } else { "transversal" };
    match &found {
        Some(line) => {
            let _ = writeln!(out, "{kind} found: {}", format_line(line));
        }
        None => {
            let _ = writeln!(out, "none found at resolution M={}", res.directions);
        }
    }
    if let Some(path) = &config.svg {
        if let Err(e) = write_file(path, &transversal_figure(&family, found.as_ref())) {
            return fail(err, EXIT_INVALID, &e);
        }
    }
    if found.is_some() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineDoc {
    pub theta: f64,
    pub offset: f64,
}

impl From<&DirectedLine> for LineDoc {
    fn from(l: &DirectedLine) -> Self {
        LineDoc {
            theta: l.theta(),
            offset: l.offset(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolationDoc {
    pub sets: Vec<String>,
    pub detail: String,
}

/// Machine-readable verification report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDoc {
    pub theorem: String,
    pub status: String,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub witness: Option<LineDoc>,
    pub witness_color: Option<String>,
    pub violations: Vec<ViolationDoc>,
    pub subfamilies_checked: usize,
    pub exhaustive: bool,
    pub prerequisite: Option<String>,
    pub directions: usize,
}

impl ReportDoc {
    pub fn new(report: &VerificationReport, family: &Family) -> Self {
        ReportDoc {
            theorem: report.theorem.to_string(),
            status: report.status.to_string(),
            hypothesis_holds: report.hypothesis_holds,
            conclusion_holds: report.conclusion_holds,
            witness: report.witness.as_ref().map(LineDoc::from),
            witness_color: report.witness_color.map(|c| c.to_string()),
            violations: report
                .violations
                .iter()
                .map(|v| ViolationDoc {
                    sets: v.indices.iter().map(|&i| family[i].label().to_string()).collect(),
                    detail: v.detail.clone(),
                })
                .collect(),
            subfamilies_checked: report.subfamilies_checked,
            exhaustive: report.exhaustive,
            prerequisite: report.prerequisite.clone(),
            directions: report.resolution.directions,
        }
    }
}

fn verify_exit(report: &VerificationReport) -> i32 {
    use alphastab::scenarios::Status;
    match report.status {
        Status::Upheld | Status::Vacuous => EXIT_OK,
        Status::Violated => EXIT_NEGATIVE,
        Status::PrerequisiteFailed => EXIT_INVALID,
    }
}

fn write_report(out: &mut dyn Write, doc: &ReportDoc) {
    let _ = writeln!(out, "statement: {}", doc.theorem);
    let _ = writeln!(out, "status: {}", doc.status);
    if let Some(p) = &doc.prerequisite {
        let _ = writeln!(out, "prerequisite: {p}");
    }
    let _ = writeln!(
        out,
        "hypothesis: {} ({} subfamilies checked{})",
        if doc.hypothesis_holds { "holds" } else { "fails" },
        doc.subfamilies_checked,
        if doc.exhaustive { ", exhaustive" } else { ", sampled" }
    );
    let _ = writeln!(
        out,
        "conclusion: {}",
        if doc.conclusion_holds { "holds" } else { "not found" }
    );
    if let Some(w) = &doc.witness {
        let color = doc.witness_color.as_deref().map(|c| format!(" ({c} class)")).unwrap_or_default();
        let _ = writeln!(out, "witness: theta = {:.6} rad, offset = {:.6}{color}", w.theta, w.offset);
    }
    for v in &doc.violations {
        let _ = writeln!(out, "violation: {{{}}} {}", v.sets.join(", "), v.detail);
    }
}

pub fn cmd_verify(
    input: &Path,
    config: &RunConfig,
    theorem: TheoremId,
    allow_overlap: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (family, res) = match load_family(input).and_then(|f| Ok((f, config.resolution()?))) {
        Ok(v) => v,
        Err(e) => return fail(err, EXIT_INVALID, &e),
    };
    let options = VerifyOptions {
        resolution: res,
        allow_overlap,
        seed: config.seed,
        ..VerifyOptions::default()
    };
    let report = verify_theorem(&family, theorem, &options);
    let doc = ReportDoc::new(&report, &family);
    write_report(out, &doc);
    if let Some(path) = &config.out {
        let json = serde_json::to_string_pretty(&doc).expect("reports always serialize") + "\n";
        if let Err(e) = write_file(path, &json) {
            return fail(err, EXIT_INVALID, &e);
        }
    }
    if let Some(path) = &config.svg {
        if let Err(e) = write_file(path, &transversal_figure(&family, report.witness.as_ref())) {
            return fail(err, EXIT_INVALID, &e);
        }
    }
    verify_exit(&report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CounterexampleKind {
    Quantitative,
    Colorful,
}

/// The counterexample family and its figure.
pub struct Construction {
    pub document: FamilyDocument,
    pub svg: String,
}

fn quantitative_figure(family: &Family, q: &QuantitativeCounterexample) -> Figure {
    let mut fig = Figure::from_family(family);
    for (g, e) in q.gauges.iter().zip(q.family.entries()) {
        fig.point(format!("p{}-", e.label()), g.p_minus)
            .point(format!("p{}+", e.label()), g.p_plus);
    }
    for l in &q.lines {
        fig.line(l.name.clone(), l.line);
    }
    fig
}

/// Builds and certifies a counterexample at `res`.
pub fn build_counterexample(
    kind: CounterexampleKind,
    epsilon: f64,
    delta: f64,
    res: &Resolution,
) -> Result<Construction> {
    let (family, fig) = match kind {
        CounterexampleKind::Quantitative => {
            let q = QuantitativeCounterexample::build(delta)?;
            q.certify(res).into_result()?;
            let fig = quantitative_figure(&q.family, &q);
            (q.family, fig)
        }
        CounterexampleKind::Colorful => {
            let c = ColorfulCounterexample::build(epsilon, delta)?;
            c.certify(res).into_result()?;
            let fig = quantitative_figure(&c.family, &c.base);
            (c.family, fig)
        }
    };
    Ok(Construction {
        document: FamilyDocument::from_family(&family),
        svg: fig.render(),
    })
}

/// Writes the document to `config.out` (standard output when unset) and
/// the figure to `config.svg` (next to the document when unset).
pub fn cmd_counterexample(
    kind: CounterexampleKind,
    epsilon: f64,
    delta: f64,
    config: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let res = match config.resolution() {
        Ok(r) => r,
        Err(e) => return fail(err, EXIT_INVALID, &e),
    };
    let built = match build_counterexample(kind, epsilon, delta, &res) {
        Ok(b) => b,
        Err(e) => return fail(err, EXIT_CONSTRUCTION, &e),
    };
    let json = built.document.to_json();
    let svg_path = config
        .svg
        .clone()
        .or_else(|| config.out.as_ref().map(|p| p.with_extension("svg")));
    let written = match &config.out {
        Some(p) => write_file(p, &json),
        None => out.write_all(json.as_bytes()).map_err(|e| Error::Validation(e.to_string())),
    }
    .and_then(|_| match &svg_path {
        Some(p) => write_file(p, &built.svg),
        None => Ok(()),
    });
    if let Err(e) = written {
        return fail(err, EXIT_INVALID, &e);
    }
    let _ = writeln!(
        err,
        "certified {} sets at resolution M={}",
        built.document.sets.len(),
        res.directions
    );
    EXIT_OK
}

/// Tallies of a fuzz run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub trials: usize,
    pub generation_failures: usize,
    pub hypothesis_true: usize,
    pub upheld: usize,
    pub vacuous: usize,
    pub violated: usize,
    pub prerequisite_failed: usize,
    pub violating_seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzParams {
    pub theorem: TheoremId,
    pub trials: usize,
    pub mode: GeneratorMode,
    pub size: usize,
    pub allow_overlap: bool,
}

/// Runs the statement on families generated from seeds `seed, seed + 1, …`
/// and returns the tally with the violating families.
pub fn fuzz(params: &FuzzParams, config: &RunConfig) -> Result<(FuzzSummary, Vec<(u64, Family)>)> {
    if params.trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is required".into()));
    }
    let options = VerifyOptions {
        resolution: config.resolution()?,
        allow_overlap: params.allow_overlap,
        seed: config.seed,
        ..VerifyOptions::default()
    };
    let gen = GeneratorParams {
        colored: params.theorem.requires_colors(),
        ..GeneratorParams::default()
    };
    let mut summary = FuzzSummary {
        trials: params.trials,
        ..FuzzSummary::default()
    };
    let mut offending = Vec::new();
    for t in 0..params.trials as u64 {
        let seed = config.seed.wrapping_add(t);
        let family = match generate(seed, params.size, params.mode, &gen) {
            Ok(g) => g.family,
            Err(Error::GenerationBudget { .. }) => {
                summary.generation_failures += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let report = verify_theorem(&family, params.theorem, &options);
        use alphastab::scenarios::Status;
        summary.hypothesis_true += report.hypothesis_holds as usize;
        match report.status {
            Status::Upheld => summary.upheld += 1,
            Status::Vacuous => summary.vacuous += 1,
            Status::PrerequisiteFailed => summary.prerequisite_failed += 1,
            Status::Violated => {
                summary.violated += 1;
                summary.violating_seeds.push(seed);
                offending.push((seed, family));
            }
        }
    }
    Ok((summary, offending))
}

/// Violating families are written to `config.out` (a directory, the
/// current one when unset) as `fuzz-<statement>-seed<S>.json`.
pub fn cmd_fuzz(params: &FuzzParams, config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (summary, offending) = match fuzz(params, config) {
        Ok(v) => v,
        Err(e) => return fail(err, EXIT_INVALID, &e),
    };
    let _ = writeln!(
        out,
        "trials: {}  generation failures: {}  hypothesis true: {}  upheld: {}  vacuous: {}  violated: {}  prerequisite failed: {}",
        summary.trials,
        summary.generation_failures,
        summary.hypothesis_true,
        summary.upheld,
        summary.vacuous,
        summary.violated,
        summary.prerequisite_failed
    );
    let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("."));
    for (seed, family) in &offending {
        let name = format!("fuzz-{}-seed{seed}.json", params.theorem.to_string().replace('.', "_"));
        let path = dir.join(name);
        match write_file(&path, &FamilyDocument::from_family(family).to_json()) {
            Ok(()) => {
                let _ = writeln!(out, "violation at seed {seed}: {}", path.display());
            }
            Err(e) => return fail(err, EXIT_INVALID, &e),
        }
    }
    if summary.violated > 0 {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    }
}

/// Draws the family and, when one is found, a transversal with its pieces.
pub fn cmd_plot(input: &Path, config: &RunConfig, ordered: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (family, res) = match load_family(input).and_then(|f| Ok((f, config.resolution()?))) {
        Ok(v) => v,
        Err(e) => return fail(err, EXIT_INVALID, &e),
    };
    let line = find_transversal(&family, ordered, &res);
    let svg = transversal_figure(&family, line.as_ref());
    let written = match config.out.as_ref().or(config.svg.as_ref()) {
        Some(p) => write_file(p, &svg),
        None => out.write_all(svg.as_bytes()).map_err(|e| Error::Validation(e.to_string())),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => fail(err, EXIT_INVALID, &e),
    }
}
