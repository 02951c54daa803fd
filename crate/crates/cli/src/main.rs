//! `polysym` command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

mod commands;
mod input;
mod output;

use output::Format;

fn after_help() -> String {
    let mut s = String::from("Numbers may be decimals, fractions p/q or named constants:\n");
    for (name, value) in input::CONSTANTS {
        s.push_str(&format!("  {name:<6} {value}\n"));
    }
    s.push_str("Symbols take a prefix f:, e:, h: or rho: (bare numbers are an E-symbol).\n\n");
    s.push_str("Exit codes: 0 success, 1 computational failure, 2 usage error.");
    s
}

#[derive(Parser)]
#[command(name = "polysym", version, about = "Symbol algebra and eigentope search for generalized regular polytopes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Residual tolerance (default 1e-9, per-suite default for relations)
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// RNG seed for sampled checks
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Lower corner of the search box
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub box_lo: Option<f64>,
    /// Upper corner of the search box
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub box_hi: Option<f64>,
    /// Newton seed grid step
    #[arg(long, global = true)]
    pub grid_step: Option<f64>,
    /// Largest spin or period searched
    #[arg(long, global = true)]
    pub max_q: Option<u32>,
    /// Eigentope catalog file
    #[arg(long, global = true, env = "POLYSYM_CATALOG", default_value = "eigentopes.json")]
    pub catalog: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ctx {
    E3,
    E4,
}

impl From<Ctx> for polysym::Context {
    fn from(c: Ctx) -> Self {
        match c {
            Ctx::E3 => polysym::Context::E3,
            Ctx::E4 => polysym::Context::E4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Rrp3,
    Rrp4,
    Arp4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    All,
    H,
    Spin,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Convert between f-, E-, H- and rho-symbols
    Convert {
        /// e.g. f:4,3,3 or e:0.5,0.25,0.25
        symbol: String,
    },
    /// Apply a word to an E-symbol
    Transform {
        word: String,
        esymbol: String,
        /// Print every intermediate E-symbol
        #[arg(long)]
        trace: bool,
    },
    /// Frame matrix of a word, its determinant and the Gram cross-check
    Matrix { word: String, esymbol: String },
    /// Least q with word^q = 1 on sampled generic points
    Order {
        word: String,
        #[arg(long, value_enum, default_value_t = Ctx::E4)]
        context: Ctx,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Verify a relation suite
    Relations {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Fixed points of a word
    Eigen {
        word: String,
        #[arg(long, value_enum, default_value_t = Ctx::E4)]
        context: Ctx,
        /// Cross-check with the dense-grid oracle
        #[arg(long)]
        oracle: bool,
        /// Oracle grid step
        #[arg(long, default_value_t = 0.01)]
        oracle_step: f64,
    },
    /// Spin and conformal scale at a fixed point
    Spin {
        word: String,
        /// Start point, refined to the nearby fixed point
        #[arg(long)]
        evec: Option<String>,
        /// Reject even q with negative lambda
        #[arg(long)]
        strict: bool,
    },
    /// Scan all words up to a length and append eigentopes to the catalog
    Scan {
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = Ctx::E3)]
        context: Ctx,
        /// Keep words with duplicate maps
        #[arg(long)]
        no_prune: bool,
        /// Only keep isolated roots
        #[arg(long)]
        isolated_only: bool,
    },
    /// Star transform and honeycomb residual (3 entries) or element statistics (2 entries)
    Tessellate { esymbol: String },
    /// Recompute the H-symbol tables and the spin table
    Tables {
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
    },
}

/// Usage errors exit 2, computational failures 1.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(String),
}

impl From<polysym::Error> for Failure {
    fn from(e: polysym::Error) -> Self {
        match e {
            polysym::Error::Parse { .. } | polysym::Error::InvalidArgument(_) | polysym::Error::InvalidSymbol { .. } => Failure::Usage(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().after_help(after_help()).get_matches();
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    let format = cli.global.format;
    match commands::run(&cli.global, cli.command) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
