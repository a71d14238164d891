use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use alphastab::scenarios::{GeneratorMode, TheoremId, DEFAULT_DELTA, DEFAULT_EPSILON};
use alphastab_cli::commands::{
    cmd_counterexample, cmd_fuzz, cmd_plot, cmd_transversal, cmd_verify, CounterexampleKind, FuzzParams, RunConfig,
};

#[derive(Parser)]
#[command(name = "alphastab", version, about = "Quantitative line transversals of planar convex sets")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Number of sampled directions M
    #[arg(long, global = true, default_value_t = 720)]
    directions: usize,
    /// Offset bisection tolerance
    #[arg(long, global = true)]
    eps_root: Option<f64>,
    /// Angular refinement tolerance
    #[arg(long, global = true)]
    eps_ang: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output path (report JSON, family document, or fuzz dump directory)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write an SVG figure here
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Quantitative,
    Colorful,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Disjoint,
    Threaded,
    Overlapping,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a transversal of the family
    Transversal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ordered: bool,
    },
    /// Check a statement on the family
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// T1.1, T1.2, T3.2 or T3.3
        #[arg(long)]
        theorem: TheoremId,
        /// Run statements that need disjoint sets on overlapping families
        #[arg(long)]
        allow_overlap: bool,
    },
    /// Emit a certified counterexample family
    Counterexample {
        #[arg(value_enum)]
        kind: Kind,
        /// Shrink used for the colored copies
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Distance of the vertical rectangle from the line v
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
    },
    /// Run a statement on seeded random families
    Fuzz {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Mode::Disjoint)]
        mode: Mode,
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[arg(long)]
        allow_overlap: bool,
    },
    /// Draw the family and a transversal if one is found
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ordered: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("QH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let c = cli.common;
    let config = RunConfig {
        directions: c.directions,
        eps_root: c.eps_root,
        eps_ang: c.eps_ang,
        seed: c.seed,
        out: c.out,
        svg: c.svg,
    };
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    let code = match cli.command {
        Command::Transversal { input, ordered } => cmd_transversal(&input, &config, ordered, &mut out, &mut err),
        Command::Verify {
            input,
            theorem,
            allow_overlap,
        } => cmd_verify(&input, &config, theorem, allow_overlap, &mut out, &mut err),
        Command::Counterexample { kind, epsilon, delta } => {
            let kind = match kind {
                Kind::Quantitative => CounterexampleKind::Quantitative,
                Kind::Colorful => CounterexampleKind::Colorful,
            };
            cmd_counterexample(kind, epsilon, delta, &config, &mut out, &mut err)
        }
        Command::Fuzz {
            theorem,
            trials,
            mode,
            size,
            allow_overlap,
        } => {
            let mode = match mode {
                Mode::Disjoint => GeneratorMode::Disjoint,
                Mode::Threaded => GeneratorMode::Threaded,
                Mode::Overlapping => GeneratorMode::Overlapping,
            };
            let params = FuzzParams {
                theorem,
                trials,
                mode,
                size,
                allow_overlap,
            };
            cmd_fuzz(&params, &config, &mut out, &mut err)
        }
        Command::Plot { input, ordered } => cmd_plot(&input, &config, ordered, &mut out, &mut err),
    };
    ExitCode::from(code as u8)
}
