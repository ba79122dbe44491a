use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cosmoform::graph::{Graph, GraphFile};
use cosmoform::library;

mod commands;

use commands::{Failure, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepChoice {
    A,
    B,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "cosmoform", version, about = "Cosmological polytopes, tubing triangulations and canonical forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Allow parallel edges in the input.
    #[arg(long, global = true)]
    multigraph: bool,

    /// Seed for randomized property checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Step limit for tubing enumeration.
    #[arg(long, default_value_t = cosmoform::graph::DEFAULT_TUBING_BUDGET, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    /// Vertex subsets the face-lattice scans may visit.
    #[arg(long, default_value_t = cosmoform::polytope::DEFAULT_LATTICE_BUDGET, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    face_budget: u64,

    /// Write the result here instead of standard output.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the tubes in canonical order.
    Tubes { graph: String },
    /// Maximal and uniquely completable almost-maximal tubings.
    Tubings { graph: String },
    /// Vertices of the dual polytope.
    Dual { graph: String },
    /// Cells of a tubing triangulation with their volumes and ridge check.
    Triangulate {
        graph: String,
        /// Use the boundary-cone triangulation.
        #[arg(long)]
        boundary: bool,
    },
    /// The canonical form in closed form.
    Canonical {
        graph: String,
        #[arg(long, value_enum, default_value_t = RepChoice::Both)]
        rep: RepChoice,
        /// Check that the two closed forms agree on the hyperplane.
        #[arg(long)]
        check: bool,
    },
    /// Evaluate the canonical form at a point of the hyperplane.
    Evaluate {
        graph: String,
        #[arg(long, value_enum, default_value_t = RepChoice::A)]
        rep: RepChoice,
        /// Comma-separated rationals, vertex coordinates first.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Run the invariant suite.
    Verify { graph: String },
}

impl Command {
    fn graph(&self) -> &str {
        match self {
            Command::Tubes { graph }
            | Command::Tubings { graph }
            | Command::Dual { graph }
            | Command::Triangulate { graph, .. }
            | Command::Canonical { graph, .. }
            | Command::Evaluate { graph, .. }
            | Command::Verify { graph } => graph,
        }
    }
}

fn load_graph(arg: &str, multigraph: bool) -> Result<Graph, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{arg}: {e}")))?;
        return Ok(GraphFile::parse(&text, multigraph)?);
    }
    match library::by_name(arg) {
        Some(g) => Ok(g),
        None => {
            Err(Failure::Io(format!("{arg}: no such file, and not a library graph ({})", library::NAMES.join(", "))))
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let g = load_graph(cli.command.graph(), cli.multigraph)?;
    let budget = cli.budget;
    match &cli.command {
        Command::Tubes { .. } => commands::tubes(&g),
        Command::Tubings { .. } => commands::tubings(&g, budget),
        Command::Dual { .. } => commands::dual(&g),
        Command::Triangulate { boundary, .. } => commands::triangulate(&g, *boundary, budget),
        Command::Canonical { rep, check, .. } => commands::canonical(&g, *rep, *check, budget),
        Command::Evaluate { rep, at, .. } => commands::evaluate(&g, *rep, at, budget),
        Command::Verify { .. } => commands::verify(&g, cli.seed, budget, cli.face_budget),
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), Failure> {
    let body = out.render(cli.format);
    match &cli.output {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out)?;
        match out.failure {
            Some(f) => Err(f),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cosmoform: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
