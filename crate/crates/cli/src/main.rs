//! `subfree`: evaluate, export and verify subtraction-free circuits.
//!
//! Exit status is 0 on success, 1 for bad input and 2 when a computed result
//! disagrees with an independent check.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

mod commands;
mod input;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 1,
            CliError::Mismatch(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "subfree", version, about = "Subtraction-free circuits for Schur polynomials and spanning-tree sums")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Config {
    /// Number system for evaluation [default: rational, or tropical for min-arborescence]
    #[arg(long, global = true, value_enum)]
    pub semifield: Option<SemifieldArg>,
    /// Flip sequence for Schur-family commands [default: a]
    #[arg(long, global = true, value_enum)]
    pub plan: Option<PlanArg>,
    /// Vertex elimination order for spanning-family commands
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Ascending)]
    pub order: OrderArg,
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Value)]
    pub output: OutputArg,
    /// Seed for the randomized cases of `verify`
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemifieldArg {
    Rational,
    Float64,
    Tropical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlanArg {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Ascending,
    #[value(name = "mindegree")]
    MinDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    Value,
    CircuitJson,
    CircuitDot,
    Stats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Schur,
    DoubleSchur,
    SuperSchur,
    SkewSchur,
    FlagMinor,
    SpanningGf,
    ArborescenceGf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schur polynomial s_λ(x_1..x_k), with k the number of x values
    Schur {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        x: String,
    },
    /// Factorial Schur polynomial s_λ(x | y); needs k + λ₁ - 1 y values
    DoubleSchur {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Supersymmetric Schur polynomial s_λ(x; y)
    SuperSchur {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value = "")]
        y: String,
    },
    /// Skew Schur polynomial s_{λ/ν}(x)
    SkewSchur {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        x: String,
    },
    /// Flag minor Δ_I of the Vandermonde-type matrix, |I| = number of x values
    FlagMinor {
        #[arg(long)]
        set: String,
        #[arg(long)]
        x: String,
    },
    /// Spanning tree generating function of an undirected graph file
    SpanningGf {
        #[arg(long)]
        graph: PathBuf,
        /// Multiply effective conductances instead of reducing to arborescences
        #[arg(long)]
        via_conductance: bool,
    },
    /// Effective conductance between two vertices of an undirected graph file
    Effcond {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Arborescence generating function of a rooted digraph file
    ArborescenceGf {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Cheapest arborescence of a rooted digraph file; arc weights are costs
    MinArborescence {
        #[arg(long)]
        graph: PathBuf,
    },
    /// F(x) (1+x)^r for F = x^2 - 2cx + 1; r defaults to the least nonnegative one
    GapPolya {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        r: Option<usize>,
    },
    /// f_n with its Pólya exponent bound and sine-ratio certificate
    GapFn {
        #[arg(long)]
        n: usize,
        /// Largest denominator degree to try to certify
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// g_n at a point, or the specialization identity check when no point is given
    GapGn {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Runs oracle comparisons: `all`, or comma-separated suite names
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Emits a circuit without evaluating it
    Export {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        nu: Option<String>,
        /// Number of x variables
        #[arg(long)]
        k: Option<usize>,
        /// Number of y variables (super-schur)
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let status = commands::run(&cli, &mut out);
    let _ = out.flush();
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
