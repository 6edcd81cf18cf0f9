//! `permpat`: encode graphs, match patterns, build reduction instances.
//!
//! Exit codes: 0 YES / success, 1 NO, 2 usage or input error, 3 budget
//! exhausted.

mod commands;
mod harness;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use permpat_core::matcher::DEFAULT_CLI_BUDGET;

/// Result of a command that completed without an input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
    BudgetExhausted,
}

impl Outcome {
    fn exit_code(self) -> u8 {
        match self {
            Outcome::Yes => 0,
            Outcome::No => 1,
            Outcome::BudgetExhausted => 3,
        }
    }
}

const INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "permpat", version, about = "Permutation pattern matching and the Clique reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a graph file as a permutation.
    Encode {
        graph: PathBuf,
        #[arg(long)]
        z: usize,
        /// Write the permutation here and the layout to `<out>.layout`;
        /// without it the permutation goes to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a pattern occurs in a text.
    Match {
        pattern: PathBuf,
        text: PathBuf,
        /// Print the certificate positions when found.
        #[arg(long)]
        certificate: bool,
        #[arg(long, default_value_t = DEFAULT_CLI_BUDGET)]
        budget: u64,
    },
    /// Reduce a Clique instance to a pattern matching instance directory.
    Reduce {
        graph: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: PathBuf,
        /// Remove isolated vertices instead of rejecting them.
        #[arg(long)]
        strip_isolated: bool,
    },
    /// Compose equivalent Clique instances into one instance directory.
    Compose {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
    },
    /// Recover a clique from an instance directory and a certificate.
    Extract {
        instance: PathBuf,
        /// Certificate file (positions); the matcher is run when omitted.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CLI_BUDGET)]
        budget: u64,
    },
    /// Check the reduction against brute-force clique search on random or
    /// exhaustively enumerated graphs.
    VerifyLemma {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        l: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CLI_BUDGET)]
        budget: u64,
        /// Enumerate every graph on up to `max-n` (<= 5) vertices instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Count permutations of size n avoiding a pattern.
    CountAvoiders {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
    },
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Encode { graph, z, out } => commands::encode(&graph, z, out.as_deref()),
        Command::Match {
            pattern,
            text,
            certificate,
            budget,
        } => commands::match_files(&pattern, &text, certificate, budget),
        Command::Reduce {
            graph,
            l,
            out,
            strip_isolated,
        } => commands::reduce(&graph, l, &out, strip_isolated),
        Command::Compose { l, out, graphs } => commands::compose(l, &graphs, &out),
        Command::Extract {
            instance,
            certificate,
            budget,
        } => commands::extract(&instance, certificate.as_deref(), budget),
        Command::VerifyLemma {
            max_n,
            l,
            samples,
            seed,
            budget,
            exhaustive,
        } => harness::verify_lemma(&harness::Settings {
            max_n,
            l,
            samples,
            seed,
            budget,
            exhaustive,
        }),
        Command::CountAvoiders { pattern, n } => commands::count_avoiders(&pattern, n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
