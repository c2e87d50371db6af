mod commands;
mod render;

use clap::{Parser, Subcommand};
use redei_core::Error;
use render::Format;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "redei", version, about = "Triple quadratic residue symbols over real quadratic fields")]
pub struct Cli {
    /// Prime p ≡ 1 mod 4 defining k = Q(√p)
    #[arg(long, global = true, default_value_t = 5)]
    pub p: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Largest prime-ideal norm considered by `search`
    #[arg(long, global = true, default_value_t = 1000)]
    pub norm_bound: u64,
    /// Magnus truncation degree D (coefficients up to degree D − 1)
    #[arg(long, global = true, default_value_t = 4)]
    pub truncation: usize,
    /// Seed for commands that sample random words
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Cache file for `search` (CSV, with a .solutions.jsonl sidecar)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Height bound for the conic search
    #[arg(long, global = true, default_value_t = 200)]
    pub height_bound: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fundamental unit and its norm
    Unit,
    /// Class number and narrow class number
    Classno,
    /// Quadratic residue symbol (a/𝔭) or the sign of a at inf1 / inf2
    Symbol { a: String, place: String },
    /// Hilbert symbols (a, b) at every relevant place, or at one place
    Hilbert {
        a: String,
        b: String,
        #[arg(long)]
        place: Option<String>,
    },
    /// Normalized solutions of x² = π₁y² + π₂z²
    Conic {
        pi1: String,
        pi2: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Skip solutions with z in this prime ideal
        #[arg(long)]
        avoid: Option<String>,
    },
    /// The D₈ extension attached to a pair of primes, or a printed example (29-13, 29-89)
    Redei {
        p1: Option<String>,
        p2: Option<String>,
        #[arg(long)]
        example: Option<String>,
    },
    /// The triple symbol [𝔭₁, 𝔭₂, 𝔭₃]
    Triple { p1: String, p2: String, p3: String },
    /// Magnus expansion, depth and ρ of a word such as `x1^3 x2^-1 x1`
    Magnus {
        word: Option<String>,
        #[arg(long, default_value_t = 3)]
        rank: usize,
        /// Print μ(I; w) by both routes for this multi-index, e.g. 1,2,3
        #[arg(long)]
        index: Option<String>,
    },
    /// Triple Massey product paired with a word of the third Zassenhaus term
    Massey {
        word: Option<String>,
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long, default_value = "0")]
        lambda1: String,
        #[arg(long, default_value = "0")]
        lambda2: String,
    },
    /// Enumerate admissible triples up to --norm-bound and compute their symbols
    Search,
    /// Run the reference checks
    VerifyPaper,
}

/// What went wrong, mapped onto exit codes.
pub enum Failure {
    Verification(String),
    Usage(String),
    Exhaustion(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::HeightExhausted(_) | Error::NormalizationUnreachable | Error::DegenerateSolution => Failure::Exhaustion(msg),
            Error::WitnessFailed(_) | Error::Inconsistent(_) | Error::Io(_) => Failure::Verification(msg),
            _ => Failure::Usage(msg),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((out, passed)) => {
            print!("{}", out.render(cli.format));
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Verification(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Exhaustion(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
