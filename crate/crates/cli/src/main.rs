//! `gibbspath` command-line tool.
//!
//! Exit codes: 0 success, 1 I/O error, 2 invalid input, 3 numerical
//! consistency failure.

mod commands;
mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gibbspath::bench::{BenchKind, BenchSize};
use gibbspath::LatticeKind;

use commands::Report;

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Lib(gibbspath::Error),
}

impl From<gibbspath::Error> for CliError {
    fn from(e: gibbspath::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Io(_) => "IoError",
            CliError::Parse(_) => "ParseError",
            CliError::Lib(e) => e.code(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Lib(e) if e.is_validation() => 2,
            CliError::Lib(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(m) | CliError::Parse(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Parser)]
#[command(name = "gibbspath", version, about = "Gibbs path distributions over DAGs and alignment lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArgs {
    /// DAG JSON file, or a row,col,value weight CSV when --lattice is given.
    #[arg(long)]
    graph: PathBuf,
    /// Treat --graph as a ROWSxCOLS lattice weight grid.
    #[arg(long, value_parser = input::parse_shape, value_name = "ROWSxCOLS")]
    lattice: Option<(usize, usize)>,
    /// Lattice kind: dtw or ma.
    #[arg(long, default_value = "dtw", value_parser = parse_kind)]
    kind: LatticeKind,
}

#[derive(Args)]
struct OutArgs {
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph and report its size.
    Validate {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact path pmf next to empirical frequencies at several sample counts.
    Density {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', default_value = "1,50,100,250")]
        counts: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Draw paths.
    Sample {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 10, value_parser = parse_positive)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Per-edge marginal probabilities.
    Marginals {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// KL divergence from --graph to --other (same structure).
    Kl {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        other: PathBuf,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Highest-scoring path.
    Optimal {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Time fit, sample and marginals over a size sweep.
    Bench {
        /// generic, dtw or ma.
        #[arg(long, default_value = "generic", value_parser = parse_bench_kind)]
        kind: BenchKind,
        /// Node counts (generic) or ROWSxCOLS grids, comma separated.
        #[arg(long, value_delimiter = ',', value_parser = parse_bench_size)]
        sizes: Vec<BenchSize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

fn parse_kind(s: &str) -> Result<LatticeKind, String> {
    s.parse().map_err(|e: gibbspath::Error| e.to_string())
}

fn parse_bench_kind(s: &str) -> Result<BenchKind, String> {
    s.parse().map_err(|e: gibbspath::Error| e.to_string())
}

fn parse_bench_size(s: &str) -> Result<BenchSize, String> {
    s.parse().map_err(|e: gibbspath::Error| e.to_string())
}

fn load(g: &GraphArgs) -> Result<input::Loaded, CliError> {
    input::load(&g.graph, g.lattice, g.kind)
}

fn run(command: Command) -> Result<(Report, OutArgs), CliError> {
    Ok(match command {
        Command::Validate { graph, out } => (commands::validate(&load(&graph)?, out.format), out),
        Command::Density {
            graph,
            alpha,
            counts,
            seed,
            out,
        } => (commands::density(&load(&graph)?, alpha, &counts, seed, out.format)?, out),
        Command::Sample {
            graph,
            alpha,
            samples,
            seed,
            out,
        } => (commands::sample(&load(&graph)?, alpha, samples, seed, out.format)?, out),
        Command::Marginals { graph, alpha, out } => (commands::marginals(&load(&graph)?, alpha, out.format)?, out),
        Command::Kl {
            graph,
            other,
            alpha,
            out,
        } => {
            let p = load(&graph)?;
            let q = commands::load_like(&p, &other)?;
            (commands::kl(&p, &q, alpha, out.format)?, out)
        }
        Command::Optimal { graph, out } => (commands::optimal(&load(&graph)?, out.format), out),
        Command::Bench {
            kind,
            sizes,
            repeats,
            seed,
            out,
        } => {
            let sizes = if sizes.is_empty() {
                commands::default_sizes(kind)
            } else {
                sizes
            };
            (commands::bench(kind, &sizes, repeats, seed, out.format)?, out)
        }
    })
}

fn emit(report: &Report, out: &OutArgs) -> Result<(), CliError> {
    for note in &report.notes {
        eprintln!("{note}");
    }
    match &out.out {
        Some(path) => fs::write(path, &report.body).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(report.body.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command).and_then(|(report, out)| emit(&report, &out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {}", e.code(), e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
