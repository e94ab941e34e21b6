mod commands;
mod report;

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use denom_core::arith::{set_default_effort, DEFAULT_EFFORT};
use denom_core::denominators::ORACLE_CAP;

use report::{Format, Record};

/// Denominators of algebraic numbers: invariants, prime sets X and Y, rings
/// O_K[gamma] ∩ K and generating sets.
#[derive(Debug, Parser)]
#[command(name = "denom", version)]
pub struct Cli {
    /// Seed for every randomized step (prime splitting, verification corpora).
    #[arg(long, global = true, env = "DENOM_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Degree cap for explicit membership searches.
    #[arg(long, global = true, env = "DENOM_MAX_DEGREE", default_value_t = ORACLE_CAP)]
    pub max_degree: usize,
    /// Pollard-rho iteration budget per integer factorization.
    #[arg(long, global = true, env = "DENOM_EFFORT", default_value_t = DEFAULT_EFFORT)]
    pub effort: u64,
    #[arg(long, global = true, env = "DENOM_FORMAT", value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

/// `gamma` either as an element of a field or as a root of its minimal polynomial.
#[derive(Debug, Clone, Args)]
pub struct GammaArgs {
    /// Ambient field, e.g. `Q[x]/(x^2+1)`; defaults to Q.
    #[arg(long)]
    pub field: Option<String>,
    /// Element of the ambient field, e.g. `1/(2+x)`.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Minimal polynomial of gamma, e.g. `5*x^2-4*x+1`; the ambient field is Q(gamma).
    #[arg(long, conflicts_with_all = ["field", "gamma"])]
    pub minpoly: Option<String>,
}

/// The base field `K` as `Q(kappa)` for an element of the ambient field.
#[derive(Debug, Clone, Args)]
pub struct BaseArgs {
    /// Generator of K inside the ambient field; defaults to Q.
    #[arg(long = "subfield", allow_hyphen_values = true)]
    pub subfield: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants c, d, e, n of a minimal polynomial.
    Invariants {
        /// Minimal polynomial; alternatively give --field/--gamma or --minpoly.
        polynomial: Option<String>,
        #[command(flatten)]
        gamma: GammaArgs,
    },
    /// Realizability of invariant tuples (c, d, e, n).
    #[command(subcommand)]
    Tuple(TupleCommand),
    /// Number-field data.
    #[command(subcommand)]
    Field(FieldCommand),
    /// The prime sets X(K, gamma) and Y(K, gamma).
    Xy {
        #[command(flatten)]
        gamma: GammaArgs,
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Decide alpha ∈ O_K[gamma] and search for an explicit representation.
    Member {
        #[command(flatten)]
        gamma: GammaArgs,
        #[command(flatten)]
        base: BaseArgs,
        /// Element of K, written in the ambient field.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// O_K[gamma] ∩ K as a localization, with its class group.
    Ring {
        #[command(flatten)]
        gamma: GammaArgs,
        #[command(flatten)]
        base: BaseArgs,
    },
    /// The ideal I with O_K[gamma] = O_K[x]/(f I[x]), and the denominator ideal section.
    KernelIdeal {
        #[command(flatten)]
        gamma: GammaArgs,
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Class group of a number field.
    Classgroup {
        #[arg(long)]
        field: String,
    },
    /// Finite generating set S for the denominator ideal of gamma.
    Genset {
        #[command(flatten)]
        gamma: GammaArgs,
        /// Also check S on the standard battery of test fields.
        #[arg(long)]
        verify: bool,
    },
    /// Whether two elements have the same radical denominator ideal.
    SameDenom {
        #[command(flatten)]
        gamma: GammaArgs,
        /// Second element of the ambient field.
        #[arg(long, allow_hyphen_values = true)]
        other: String,
    },
    /// Local rings O[gamma] ∩ K at completions above primes of K.
    Local {
        #[command(flatten)]
        gamma: GammaArgs,
        #[command(flatten)]
        base: BaseArgs,
        /// Generator of the upper field (containing K(gamma)); defaults to K(gamma).
        #[arg(long, allow_hyphen_values = true)]
        upper: Option<String>,
        /// Rational prime to inspect; defaults to the primes where gamma has a denominator.
        #[arg(long)]
        p: Option<String>,
    },
    /// Run verification suites (`all` or a comma-separated list).
    Verify {
        suites: String,
        /// Run with a tenth of the default sample counts.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum TupleCommand {
    /// Decide whether (c, d, e, n) is realized by some algebraic number.
    Check { c: String, d: String, e: String, n: usize },
    /// Build a minimal polynomial with the given invariants.
    Witness { c: String, d: String, e: String, n: usize },
    /// Classify every tuple with n up to --max-n and c up to --max-c.
    Atlas {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 12)]
        max_c: u64,
        /// Only list realizable tuples.
        #[arg(long)]
        realizable_only: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum FieldCommand {
    /// Degree, signature, discriminant and integral basis.
    Info { field: String },
    /// Prime ideal factorization of an element (or of a rational prime).
    Factor {
        field: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_default_effort(cli.effort);
    let config = Record::new("config")
        .with("version", env!("CARGO_PKG_VERSION"))
        .with("seed", cli.seed)
        .with("max_degree", cli.max_degree)
        .with("effort", cli.effort);
    let result = commands::run(&cli);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let _ = writeln!(out, "{}", config.render(cli.format));
    match result {
        Ok(outcome) => {
            for r in &outcome.records {
                let _ = writeln!(out, "{}", r.render(cli.format));
            }
            if outcome.failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
