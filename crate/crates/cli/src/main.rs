//! `locfin`: localize finite simplicial complexes and check the results.

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use locfin::homology::Coefficients;
use locfin::suite::Scale;

/// Exit status for a file or flag the command cannot use.
const INPUT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "locfin", version, about = "Bounded-degree localization of finite simplicial complexes")]
struct Cli {
    /// Report style: human-readable text or JSON.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Take the simplex list of input files literally instead of closing it.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a complex file and check that it describes an ordered complex.
    Validate { input: PathBuf },

    /// Build the bounded-degree complex T with its projection to the input.
    Localize {
        input: PathBuf,
        /// Ray truncations R_1,R_2,...; missing levels use max color + 2.
        #[arg(long, value_delimiter = ',')]
        ray_bound: Vec<u32>,
        /// Also grow pendant edges for this many rounds with bound M_n.
        #[arg(long, value_name = "ROUNDS")]
        grow: Option<usize>,
        /// Certify every fiber of every tower level.
        #[arg(long)]
        fibers: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for complex.json, projection.json and summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Simplicial homology over Z, Q or Z/p.
    Homology {
        input: PathBuf,
        /// Z, Q or mod-p for a prime p.
        #[arg(long, default_value = "Z")]
        coeff: Coefficients,
        #[arg(long)]
        reduced: bool,
    },

    /// Count the edges at every vertex against M_n (or an explicit bound).
    Audit {
        input: PathBuf,
        /// Use M_n for this n instead of the dimension of the complex.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        bound: Option<usize>,
    },

    /// Grow pendant edges until vertices reach the degree bound.
    Grow {
        input: PathBuf,
        #[arg(long)]
        rounds: usize,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        bound: Option<usize>,
        /// Write the grown complex (only when it has at most a million vertices).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// The telescope of a level-n complex, with checks of its basic properties.
    Telescope {
        input: PathBuf,
        /// Level n; defaults to the level of the input.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        ray_bound: Vec<u32>,
        /// Sampled vertex subsets for the restriction check.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Product of two ordered complexes.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Mapping telescope of the localization tower.
    Mtel {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        ray_bound: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Run the acceptance suite, plus the per-run checks on extra inputs.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// full or tiny.
        #[arg(long, default_value = "full")]
        sizes: Scale,
        /// Complex files to run through the localization checks.
        #[arg(long = "fixture")]
        fixtures: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            match cli.format {
                OutputFormat::Text => print!("{}", report.text),
                OutputFormat::Machine => {
                    println!("{}", serde_json::to_string_pretty(&report.machine).expect("json value"))
                }
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if commands::is_input_error(&e) {
                ExitCode::from(INPUT_ERROR)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
