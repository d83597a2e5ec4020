//! `fvs`: exact DFVS/DFAS solving, decompositions, generators and checks.
//!
//! Exit status: 0 success, 1 malformed input or arguments, 2 a size cap was
//! hit, 3 invalid decomposition or unusable configuration, 4 a solution that
//! fails its check, 5 methods that disagree during `bench`.

mod bench;
mod commands;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "fvs", version, about = "Exact directed feedback vertex and arc set toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Treewidth,
    Planar,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Treewidth => "treewidth",
            Method::Planar => "planar",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Dfvs,
    Dfas,
}

impl From<ProblemArg> for fvs_core::Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Dfvs => fvs_core::Problem::Dfvs,
            ProblemArg::Dfas => fvs_core::Problem::Dfas,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DecompKind {
    Tree,
    Sc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Grid,
    RandomPlanar,
    HittingSet,
    OrGadget,
    HardnessChain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PatternOp {
    CountNoncrossing,
    Gen,
    Simplify,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance and print `optimum <v> method <m> width <w> time_ms <t>`.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Tree decomposition for the treewidth method.
        #[arg(long, conflicts_with = "sc")]
        td: Option<PathBuf>,
        /// Sphere-cut decomposition for the planar method.
        #[arg(long)]
        sc: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, value_enum, default_value = "dfvs")]
        problem: ProblemArg,
        /// Where to write the solution.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and check a tree or sphere-cut decomposition.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: DecompKind,
        /// Exact treewidth search instead of min-fill.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate seeded instances.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_prefix: PathBuf,
        #[arg(long, default_value_t = 3)]
        rows: usize,
        #[arg(long, default_value_t = 3)]
        cols: usize,
        /// Vertex budget for random-planar.
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Grid side of the hitting-set instance.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Number of thin sets.
        #[arg(long, default_value_t = 2)]
        sets: usize,
    },
    /// Check a solution, tree decomposition or sphere-cut decomposition.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, group = "what")]
        solution: Option<PathBuf>,
        #[arg(long, group = "what")]
        td: Option<PathBuf>,
        #[arg(long, group = "what")]
        sc: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "dfvs")]
        problem: ProblemArg,
    },
    /// Chord-relation tools on points 1..N in clockwise order.
    Patterns {
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum)]
        op: PatternOp,
        /// File of `s t` lines.
        #[arg(long)]
        relation: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run several methods over every `.graph` file in a directory.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "oracle,treewidth,planar")]
        methods: Vec<Method>,
        #[arg(long, value_enum, default_value = "dfvs")]
        problem: ProblemArg,
        /// Deterministic results table.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match cli.command {
        Command::Solve { input, td, sc, method, problem, out } => {
            commands::solve(&input, td.as_deref(), sc.as_deref(), method, problem.into(), out.as_deref())
        }
        Command::Decompose { input, kind, exact, out } => commands::decompose(&input, kind, exact, &out),
        Command::Gen { kind, seed, out_prefix, rows, cols, n, k, sets } => {
            commands::gen(kind, seed, &out_prefix, commands::GenParams { rows, cols, n, k, sets })
        }
        Command::Validate { input, solution, td, sc, problem } => {
            commands::validate(&input, solution.as_deref(), td.as_deref(), sc.as_deref(), problem.into())
        }
        Command::Patterns { points, op, relation, out } => {
            commands::patterns(points, op, relation.as_deref(), out.as_deref())
        }
        Command::Bench { corpus, methods, problem, out } => {
            bench::run(&corpus, &methods, problem.into(), out.as_deref())
        }
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
