//! `cyclogeny` — exact analysis of Weil-central isogeny classes from the
//! command line: per-class cyclicity reports, extension Weil polynomials,
//! growth-set enumeration with containment verification, the bundled
//! example table, and the exhaustive elliptic-curve cross-check.

mod commands;
mod report;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use cyclogeny::arith::FactorBudget;
use report::OutputFormat;
use std::process::ExitCode;

const RHO_BUDGET_ENV: &str = "CYCLOGENY_RHO_BUDGET";

#[derive(Parser)]
#[command(
    name = "cyclogeny",
    version,
    about = "Exact-arithmetic analysis of Weil-central isogeny classes of abelian varieties over finite fields",
    after_help = "Exit codes: 0 = ok, 1 = error, 2 = not applicable / unknown."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,

    /// Truncation bound for set enumeration (sets, table)
    #[arg(long, global = true, default_value_t = 100)]
    nmax: u64,

    /// Seed for the point-sampling order in ec-verify (results are
    /// seed-independent)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Iteration cap for the rho factoring stage; overrides the
    /// CYCLOGENY_RHO_BUDGET environment variable
    #[arg(long, global = true)]
    rho_budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a class (a,q)_g and report cyclicity, globally and per prime
    Analyze {
        /// Middle Weil coefficient a
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Base field size q (a prime power)
        #[arg(long)]
        q: String,
        /// Dimension g
        #[arg(long)]
        g: u32,
        /// Primes to analyze locally (repeatable); default: every prime
        /// dividing N_1
        #[arg(long = "l")]
        l: Vec<String>,
    },
    /// Compute the exact Weil polynomial and point count of the degree-n
    /// extension
    Extend {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        g: u32,
        /// Extension degree
        #[arg(long)]
        n: u64,
    },
    /// Enumerate the growth and cyclic-growth sets up to nmax and verify
    /// the proven lower-bound containments
    Sets {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        g: u32,
        /// The prime l
        #[arg(long)]
        l: String,
    },
    /// Reproduce and verify the bundled table of example classes
    Table,
    /// Exhaustively enumerate elliptic curves over all prime fields
    /// 5 <= p <= pmax and compare group cyclicity with the criterion
    EcVerify {
        /// Largest field size to sweep (hard cap 200 unless CYCLOGENY_EC_CAP
        /// is set)
        #[arg(long)]
        pmax: u64,
    },
}

fn budget_from(cli_flag: Option<u64>) -> FactorBudget {
    if let Some(k) = cli_flag {
        return FactorBudget::new(k);
    }
    if let Ok(s) = std::env::var(RHO_BUDGET_ENV) {
        if let Ok(k) = s.parse::<u64>() {
            return FactorBudget::new(k);
        }
    }
    FactorBudget::default()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // clap renders help to stdout and errors to stderr
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let ctx = commands::Ctx {
        budget: budget_from(cli.rho_budget),
        n_max: cli.nmax,
        seed: cli.seed,
    };

    let envelope = match &cli.command {
        Command::Analyze { a, q, g, l } => commands::analyze(&ctx, a, q, *g, l),
        Command::Extend { a, q, g, n } => commands::extend(&ctx, a, q, *g, *n),
        Command::Sets { a, q, g, l } => commands::sets(&ctx, a, q, *g, l),
        Command::Table => commands::table(&ctx),
        Command::EcVerify { pmax } => commands::ec_verify(&ctx, *pmax),
    };
    ExitCode::from(envelope.emit(cli.format))
}
