//! `alexandrite`: twisted Alexander polynomials, torsion and zeta predictions from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use alexandrite_core::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Failure;

#[derive(Parser, Debug)]
#[command(name = "alexandrite", version, about = "Twisted Alexander polynomials, Reidemeister torsion and Ruelle zeta predictions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Emit a JSON report on standard output instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Working precision for reported magnitudes, in bits.
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u32).range(53..=100_000))]
    precision_bits: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Twisted Alexander polynomial of a knot presentation and a unitary representation.
    TwistedAlexander {
        /// Presentation file (TOML).
        #[arg(short = 'p', long = "presentation")]
        presentation: PathBuf,
        /// Representation file (TOML).
        #[arg(short = 'r', long = "rep")]
        rep: PathBuf,
        /// Generator whose block column is deleted (1-based). Defaults to the first admissible one.
        #[arg(long)]
        column: Option<usize>,
    },
    /// Reidemeister torsion of a based complex.
    Torsion {
        #[command(flatten)]
        source: ComplexSource,
    },
    /// Homology modules, Alexander invariants and dimension pairing of a based complex.
    Homology {
        #[command(flatten)]
        source: ComplexSource,
    },
    /// Mapping-torus invariants from a monodromy matrix.
    MappingTorus {
        /// Monodromy file (TOML).
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Ruelle zeta predictions at s = 0 and truncated Euler products.
    Ruelle {
        #[command(subcommand)]
        command: RuelleCommand,
    },
    /// Seeded randomized verification of all library properties.
    Verify {
        /// Which part of the suite to run.
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Master seed; each item derives its own generator from it
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of random based complexes.
        #[arg(long, default_value_t = 120)]
        complexes: usize,
        /// Number of random free-group words.
        #[arg(long, default_value_t = 500)]
        words: usize,
        /// Number of random deficiency-one presentations.
        #[arg(long, default_value_t = 40)]
        presentations: usize,
        /// Number of random semisimple monodromies.
        #[arg(long, default_value_t = 60)]
        semisimple: usize,
        /// Number of random monodromies with a Jordan block at 1.
        #[arg(long, default_value_t = 30)]
        jordan: usize,
        /// Directory for failing instances.
        #[arg(long, default_value = "verify-failures")]
        artifacts: PathBuf,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
struct ComplexSource {
    /// Complex file (JSON).
    #[arg(short = 'c', long = "complex", conflicts_with_all = ["presentation", "rep"])]
    complex: Option<PathBuf>,
    /// Presentation file (TOML); builds the twisted knot complex.
    #[arg(short = 'p', long = "presentation", requires = "rep")]
    presentation: Option<PathBuf>,
    /// Representation file (TOML).
    #[arg(short = 'r', long = "rep", requires = "presentation")]
    rep: Option<PathBuf>,
    /// Use the dual complex.
    #[arg(long)]
    dual: bool,
}

#[derive(Subcommand, Debug)]
enum RuelleCommand {
    /// Order and leading coefficient at s = 0.
    Predict {
        /// Input kind: one monodromy file, or a presentation and a representation
        #[arg(long, value_enum)]
        from: Source,
        /// One monodromy file, or a presentation file and a representation file.
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// Truncated Euler product over a length spectrum.
    Truncate {
        /// Spectrum CSV with columns length, multiplicity, holonomy.
        #[arg(long)]
        spectrum: PathBuf,
        /// Evaluation point as RE,IM.
        #[arg(short = 's', allow_hyphen_values = true)]
        s: String,
        /// Keep closed orbits with length at most this value
        #[arg(long)]
        max_length: String,
        /// Cyclotomic order used by holonomy literals.
        #[arg(long, default_value_t = 1)]
        order: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Source {
    MappingTorus,
    Knot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    All,
    Complexes,
    Fox,
    Knots,
    Monodromy,
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Input => 1,
        ErrorKind::Hypothesis => 2,
        ErrorKind::Internal => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match commands::run(cli.command, &cli.global) {
        Ok(report) => {
            report.print(cli.global.json);
            ExitCode::from(report.exit_code)
        }
        Err(Failure { kind, message, report }) => {
            if let Some(r) = report {
                r.print(cli.global.json);
            }
            eprintln!("error: {message}");
            ExitCode::from(exit_code(kind))
        }
    }
}
