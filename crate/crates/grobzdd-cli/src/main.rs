//! `grobzdd`: Gröbner bases, normal forms, satisfiability and instance
//! generation from the command line.
//!
//! Exit codes: 0 success, 10 satisfiable, 20 unsatisfiable, 2 parse or usage
//! error, 3 internal invariant violation, 1 anything else.

mod cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "grobzdd", version, about = "Boolean Gröbner bases on ZDDs and standard bases over Z/m")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Monomial ordering: lp, dlex, dp_asc or block(kind:end,...); `Dp` is
    /// accepted for degree lex over Z/m.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// Work over Z/m instead of the Boolean ring.
    #[arg(long = "mod", global = true, value_name = "M")]
    pub modulus: Option<u64>,
    /// Seed for randomized interpolation steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Table of precomputed principal-ideal bases; created when missing.
    #[arg(long, global = true, env = "GROBZDD_TABLE")]
    pub table: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_product_criterion: bool,
    #[arg(long, global = true)]
    pub no_chain_criterion: bool,
    #[arg(long, global = true)]
    pub no_linear_lead_criterion: bool,
    /// Over Z/m: disable the zero-divisor criterion.
    #[arg(long, global = true)]
    pub no_zero_criterion: bool,
    #[arg(long, global = true)]
    pub no_sugar: bool,
    #[arg(long, global = true)]
    pub no_symmetry: bool,
    #[arg(long, global = true)]
    pub no_sym_cache: bool,
    #[arg(long, global = true, default_value_t = 8)]
    pub sym_max_vars: u32,
    #[arg(long, global = true)]
    pub weighted_length: bool,
    /// `sat`: node budget for folding the system into one generator first (0 = off).
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub conjoin_limit: usize,
    /// Print pair and criterion counters to stderr.
    #[arg(long, global = true)]
    pub stats: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis (standard basis with --mod), one polynomial per
    /// line, largest lead first.
    Gb { file: PathBuf },
    /// Normal form of a polynomial against the basis of a system.
    Nf {
        file: PathBuf,
        poly: String,
        /// Reduce by the generators as given instead of their basis.
        #[arg(long)]
        raw: bool,
    },
    /// Satisfiability of a system file or DIMACS CNF; exits 10 or 20.
    Sat { file: PathBuf },
    /// Common zeros of a Boolean system, one 0/1 string per line.
    Zeros {
        file: PathBuf,
        /// Restrict to the points listed in this file.
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Lex-smallest interpolant of a point/value file (`bits value` lines).
    Interp {
        file: PathBuf,
        /// Use the plain recursive interpolation instead.
        #[arg(long)]
        simple: bool,
    },
    /// Generate a polynomial system.
    #[command(subcommand)]
    Encode(Encode),
    /// Run instance families and report size, verdict and time.
    Bench {
        #[arg(long, value_enum, default_value_t = Family::All)]
        family: Family,
        /// Instance sizes, e.g. `4,5,6`; defaults to 4..6 for hole and 3..4
        /// for mult.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Instances run at once, each with its own manager.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Encode {
    /// Word-level system of a circuit file, or its bit-level blast.
    Circuit {
        file: PathBuf,
        #[arg(long)]
        bits: bool,
        /// Fresh variables for carries when blasting.
        #[arg(long)]
        aux: bool,
    },
    /// Boolean system of a DIMACS file.
    Cnf { file: PathBuf },
    /// k+1 pigeons in k holes.
    Hole {
        k: usize,
        /// Print the CNF instead of polynomials.
        #[arg(long)]
        dimacs: bool,
    },
    /// Equivalence of two n-bit multipliers.
    Mult {
        n: usize,
        /// Drop one partial product so the multipliers differ.
        #[arg(long)]
        tampered: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Hole,
    Mult,
    All,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        match cause.downcast_ref::<grobzdd::Error>() {
            Some(grobzdd::Error::Parse { .. } | grobzdd::Error::InvalidOrdering(_)) => return 2,
            Some(grobzdd::Error::Invariant(_)) => return 3,
            _ => {}
        }
    }
    1
}

fn broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|c| c.downcast_ref::<std::io::Error>().is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cmd::run(&cli, &mut std::io::stdout().lock()) {
        Ok(code) => ExitCode::from(code),
        Err(err) if broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
