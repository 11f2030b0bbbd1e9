//! Command-line front end for the `crankforge` library.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use config::{Format, GammaArg, RunConfig, TauArg, DEFAULT_CAP};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] crankforge::Error),
    #[error("could not write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("could not write CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("could not write JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<crankforge::CombinatoricsError> for CliError {
    fn from(e: crankforge::CombinatoricsError) -> Self {
        CliError::Library(e.into())
    }
}

impl From<crankforge::QuasimodError> for CliError {
    fn from(e: crankforge::QuasimodError) -> Self {
        CliError::Library(e.into())
    }
}

impl From<crankforge::NumericError> for CliError {
    fn from(e: crankforge::NumericError) -> Self {
        CliError::Library(e.into())
    }
}

#[derive(Debug, Parser)]
#[command(name = "crankforge", version, about = "Residual crank tables, moment identities and quasimodular certificates")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Truncation order for q-series.
    #[arg(long, global = true, env = "CRANKFORGE_ORDER", default_value_t = crankforge::DEFAULT_ORDER)]
    order: usize,
    /// Largest n enumerated by brute force (at most 40).
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Output format for tables.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Brute,
    Series,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// A residual `(1)` contributes `z^{-1} - 1 + z`.
    Gf,
    /// A residual `(1)` contributes its raw crank `-1`.
    Raw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Dyson,
    Chern,
    ChernHalf,
    Nov,
    Ov,
    Ramanujan,
    E2,
    Pbar,
    Rep,
    Oracle,
    Bijection,
    Quasimod,
    Numeric,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    E2,
    E4,
    E6,
    Phi1,
    Phi3,
    Phi5,
    P,
    Pbar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// Print the value of the series.
    Value,
    /// `E2(-1/tau) = tau^2 E2(tau) + 6 tau / (pi i)`.
    Anomaly,
    /// The same law with the correction term dropped.
    NoAnomaly,
    /// `f(gamma tau) = (c tau + d)^w f(tau)`.
    Modularity,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a crank table `M[k](m, n)`.
    Table {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Source::Series)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Convention::Gf)]
        convention: Convention,
    },
    /// Print moment generating series coefficients.
    Moments {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        ell: u32,
        #[arg(long)]
        n: usize,
        /// Sum over positive cranks only.
        #[arg(long)]
        positive: bool,
    },
    /// Run an identity suite and print a JSON report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<u32>>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        cases: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        j: Option<Vec<u32>>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        /// Number of sampled points for the numeric suite.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Solve for the integer coefficients of the Phi-monomial representation.
    Represent {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
    },
    /// Produce a membership certificate for `delta_q^m Cbar[k]_2j`.
    Certify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long)]
        l: u32,
    },
    /// Evaluate a series at tau or check a transformation law.
    Eval {
        #[arg(long, value_enum)]
        series: SeriesName,
        /// Evaluate at `q^d`.
        #[arg(long, default_value_t = 1)]
        dilation: u32,
        #[arg(long, allow_hyphen_values = true, default_value = "0,1")]
        tau: TauArg,
        #[arg(long, value_enum, default_value_t = Check::Value)]
        check: Check,
        /// Matrix `a,b,c,d` for the modularity check; sampled when omitted.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<GammaArg>,
        /// Level of the form; defaults to the dilation.
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = crankforge::numeric::DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Compare `d M[dk]_ell(n)` with `M[k]_ell(n)`.
    ScanInequality {
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        ell: u32,
        #[arg(long, default_value_t = 25)]
        n: usize,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let g = cli.global;
    let config = RunConfig::new(g.order, g.cap, g.format, g.seed)?;
    match cli.command {
        Command::Table {
            k,
            n,
            source,
            convention,
        } => commands::table(&config, k, n, source, convention),
        Command::Moments { k, ell, n, positive } => commands::moments(&config, k, ell, n, positive),
        Command::Verify {
            suite,
            k,
            n,
            cases,
            j,
            m,
            l,
            samples,
        } => commands::verify(
            &config,
            suite,
            &commands::VerifyArgs {
                k,
                n,
                cases,
                j,
                m,
                l,
                samples,
            },
        ),
        Command::Represent { k, j } => commands::represent(&config, k, j),
        Command::Certify { k, j, m, l } => commands::certify(&config, k, j, m, l),
        Command::Eval {
            series,
            dilation,
            tau,
            check,
            gamma,
            level,
            samples,
            tol,
        } => commands::eval(
            &config,
            &commands::EvalArgs {
                series,
                dilation,
                tau,
                check,
                gamma,
                level,
                samples,
                tol,
            },
        ),
        Command::ScanInequality { d, k, ell, n } => commands::scan_inequality(&config, d, k, ell, n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
