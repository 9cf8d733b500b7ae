//! `udg`: build, transform, solve, verify and export unit-distance graphs.
//!
//! Exit codes: 0 success, 1 I/O or usage, 2 infeasible or failed
//! precondition, 3 a spindling rotation leaves the coordinate field,
//! 4 verification failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "udg", version, about = "Exact unit-distance graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a unit-distance graph from a vertex list.
    Build {
        /// One `((a, b, c, d), (a, b, c, d))` per line.
        #[arg(long, required_unless_present = "dataset")]
        points: Option<PathBuf>,
        /// Use the built-in 102-vertex sector list instead of a file.
        #[arg(long, conflicts_with = "points")]
        dataset: bool,
        /// Add the origin to the point set.
        #[arg(long)]
        with_origin: bool,
        /// Sum the graph with itself this many times, centered at the origin.
        #[arg(long, default_value_t = 0)]
        minkowski_self: usize,
        /// Sum once with the graph on these points, centered at the origin.
        #[arg(long)]
        minkowski_with: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply a geometric operation to a graph file.
    Transform {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(subcommand)]
        op: TransformOp,
    },
    /// Compute α* with a certificate.
    Alphastar {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = OrbitMode::Geometric)]
        orbits: OrbitMode,
        /// Upper limit on solver threads; the search is sequential.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Local-search rounds per pricing attempt (0 prices exactly).
        #[arg(long, default_value_t = 0)]
        heuristic_rounds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        time_limit: Option<u64>,
        /// Certificate output file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check a certificate against a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Choose a spindling pair from a certificate.
    Pick {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
        /// Try every vertex as the rotation center, not one per orbit.
        #[arg(long)]
        all_vertices: bool,
    },
    /// Rebuild the 607-vertex graph and certify its α* bound.
    ReproduceTheorem2 {
        /// Solve the uncircled 102-vertex sector graph instead.
        #[arg(long)]
        quick: bool,
        /// Sector list to use instead of the built-in one.
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, default_value_t = 2000)]
        heuristic_rounds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        time_limit: Option<u64>,
        /// Certificate output; defaults to `$UDG_SCRATCH/theorem2.json`.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a graph as JSON, DIMACS or SVG.
    Export {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        /// Color SVG vertices by this certificate's weights.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TransformOp {
    /// Keep vertices with squared norm at most R2 (rational or quadruple).
    Trim { r2: String },
    /// Union of the six rotations by kπ/3.
    Circle,
    /// Adjoin the copy rotated about U that moves V by one.
    Spindle { u: usize, v: usize },
    /// Delete orbits whose per-vertex weight is at most TAU.
    Reduce {
        tau: String,
        #[arg(long)]
        certificate: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrbitMode {
    /// Orbits of the rotations and reflections fixing the point set.
    Geometric,
    /// Orbits of the full automorphism group.
    Full,
    /// Every vertex on its own.
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dimacs,
    Svg,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
