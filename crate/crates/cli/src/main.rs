mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tambara_core::files::FileError;

/// Exit codes beyond clap's own usage error (2).
pub mod exit {
    pub const PARSE: u8 = 3;
    pub const UNDEFINED: u8 = 4;
    pub const PRECONDITION: u8 = 5;
    pub const VIOLATION: u8 = 6;
}

#[derive(Parser, Debug)]
#[command(name = "tambara", version, about = "Ideals, spectra and kilpotence for Tambara functors over finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Functor spec (TOML).
    #[arg(long)]
    pub functor: Option<PathBuf>,
    /// Use the Burnside functor of this builtin group when no functor file is given.
    #[arg(long)]
    pub group: Option<String>,
    /// Element literal `expr@SUBGROUP`.
    #[arg(long)]
    pub element: Option<String>,
    /// Ideal file (JSON).
    #[arg(long)]
    pub ideal: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0x7a3b_a5a1)]
    pub seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prime spectrum with its specialization order.
    Spec(Common),
    /// Levelwise nilradical.
    Nilradical {
        #[command(flatten)]
        common: Common,
        /// Also intersect all primes and compare.
        #[arg(long)]
        verify_primes: bool,
    },
    /// Radical of an ideal, optionally deciding membership of an element.
    Radical(Common),
    /// Decide whether inverting an element kills the functor.
    Kilpotent(Common),
    /// All kilpotent elements, level by level.
    Kilradical(Common),
    /// List the prime ideals.
    Primes(Common),
    /// Compose two bispans given in a JSON file.
    ComposeBispan {
        /// File with `group`, `first` and `second`.
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Check the Tambara functor identities.
    CheckAxioms(Common),
    /// Run every theorem check on each functor spec in a directory.
    Verify {
        /// Directory of `*.toml` functor specs.
        corpus: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// An invariant that failed during a run.
#[derive(Debug)]
pub struct Violation(pub String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invariant violated: {}", self.0)
    }
}

impl std::error::Error for Violation {}

/// A command-level precondition failure.
#[derive(Debug)]
pub struct Precondition(pub String);

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "precondition failed: {}", self.0)
    }
}

impl std::error::Error for Precondition {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<FileError>() {
        return match e {
            FileError::Parse(_) => exit::PARSE,
            FileError::Io { .. } | FileError::Undefined(_) => exit::UNDEFINED,
            FileError::Precondition(_) => exit::PRECONDITION,
        };
    }
    if err.downcast_ref::<Precondition>().is_some() {
        return exit::PRECONDITION;
    }
    if err.downcast_ref::<Violation>().is_some() {
        return exit::VIOLATION;
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spec(c) => commands::spec(&c),
        Command::Nilradical { common, verify_primes } => commands::nilradical(&common, verify_primes),
        Command::Radical(c) => commands::radical(&c),
        Command::Kilpotent(c) => commands::kilpotent(&c),
        Command::Kilradical(c) => commands::kilradical(&c),
        Command::Primes(c) => commands::primes(&c),
        Command::ComposeBispan { input, common } => commands::compose_bispan(&input, &common),
        Command::CheckAxioms(c) => commands::check_axioms(&c),
        Command::Verify { corpus, common } => verify::run(&corpus, &common),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
