//! `semiprob`: structure reports, holonomy decompositions, stochastic
//! Green tests and irreducible representations for finite automata.

mod holonomy;
mod input;
mod report;
mod reps;
mod stochastic;
mod structure;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use report::{CliError, Report};

#[derive(Parser, Debug)]
#[command(name = "semiprob", version, about = "Transition semigroups of deterministic and probabilistic automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every randomized search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest semigroup that will be enumerated.
    #[arg(long, default_value_t = semiprob::semigroup::DEFAULT_SIZE_BOUND)]
    pub bound: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Green structure of the transition semigroup of an automaton (JSON).
    Structure {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Holonomy decomposition, reduced holonomy monoid and prime divisors.
    Holonomy {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Re-check every level covering and the final covering.
        #[arg(long)]
        verify: bool,
        /// Verify this covering (JSON with `phi` and `witnesses`, or a full
        /// holonomy JSON report) instead of the computed one. Implies --verify.
        #[arg(long, value_name = "FILE")]
        cascade: Option<PathBuf>,
        /// Largest reduced holonomy monoid that will be enumerated.
        #[arg(long, default_value_t = semiprob::decomposition::zeiger::DEFAULT_ZEIGER_BOUND)]
        zeiger_bound: usize,
    },
    /// Green relations, Doob blocks and support semigroups of stochastic
    /// matrices (text or JSON matrix list).
    #[command(group(ArgGroup::new("mode").required(true).args(["green", "doob", "classify"])))]
    Stochastic {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Test relation REL (L, R, H, J) between matrices A and B.
        #[arg(long, num_args = 3, value_names = ["A", "B", "REL"])]
        green: Option<Vec<String>>,
        /// Block structure of idempotent matrix I.
        #[arg(long, value_name = "I")]
        doob: Option<usize>,
        /// Support semigroup and each matrix as a distribution over it.
        #[arg(long)]
        classify: bool,
    },
    /// Irreducible representations over GF(p).
    Reps {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Characteristic of the field.
        #[arg(long, value_name = "P")]
        field: u64,
        /// Also build the principal indecomposables of the reduced holonomy monoid.
        #[arg(long)]
        holonomy: bool,
        /// Largest reduced holonomy monoid that will be enumerated.
        #[arg(long, default_value_t = semiprob::decomposition::zeiger::DEFAULT_ZEIGER_BOUND)]
        zeiger_bound: usize,
    },
}

fn run(cli: Cli) -> Result<(Report, Format), CliError> {
    match cli.command {
        Command::Structure { input, common } => Ok((structure::run(&input, &common)?, common.format)),
        Command::Holonomy { input, common, verify, cascade, zeiger_bound } => {
            let opts = holonomy::Options { verify: verify || cascade.is_some(), cascade, zeiger_bound };
            Ok((holonomy::run(&input, &common, &opts)?, common.format))
        }
        Command::Stochastic { input, common, green, doob, classify } => {
            let mode = match (green, doob, classify) {
                (Some(g), _, _) => stochastic::Mode::Green(g),
                (_, Some(i), _) => stochastic::Mode::Doob(i),
                _ => stochastic::Mode::Classify,
            };
            Ok((stochastic::run(&input, &common, mode)?, common.format))
        }
        Command::Reps { input, common, field, holonomy, zeiger_bound } => {
            Ok((reps::run(&input, &common, field, holonomy, zeiger_bound)?, common.format))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((report, format)) => match report.render(format) {
            Ok(text) => {
                print!("{text}");
                ExitCode::from(report.exit_code())
            }
            Err(e) => e.exit(),
        },
        Err(e) => e.exit(),
    }
}
