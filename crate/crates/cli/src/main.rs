use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::Failure;

/// Exact Mukai-lattice computations on an elliptic K3 surface with section.
#[derive(Parser, Debug)]
#[command(name = "mukai-k3", version)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Fibre configuration (JSON). Defaults to 24 nodal fibres.
    #[arg(long, global = true, env = "MUKAI_K3_MODEL", value_name = "PATH")]
    pub model: Option<PathBuf>,

    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Accept fibre configurations whose Euler numbers do not sum to 24.
    #[arg(long, global = true)]
    pub allow_non_k3: bool,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = mukai_k3::report::DEFAULT_SEED)]
    pub seed: u64,

    /// Number of random trials.
    #[arg(long, global = true, default_value_t = mukai_k3::report::DEFAULT_TRIALS)]
    pub trials: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the model and print its lattice summary.
    Validate {
        /// Configuration file; overrides --model.
        config: Option<PathBuf>,
    },
    /// Apply the cohomological transform f (or f′ with --inverse).
    Fm {
        /// Class as JSON or `r,a,b,c`.
        vector: String,
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_name = "x-to-xhat|xhat-to-x")]
        direction: Option<String>,
    },
    /// Mukai pairing of two classes.
    Pair {
        v1: String,
        v2: String,
        /// Modified pairing with values in H^•(P^1).
        #[arg(long)]
        modified: bool,
    },
    /// Chern character of the transform of a WIT sheaf.
    TransformCh {
        /// Character as JSON or `r,a,b,c`.
        ch: String,
        #[arg(long, default_value = "0")]
        wit: String,
        #[arg(long, default_value = "x-to-xhat")]
        direction: String,
        /// Use only the rank/c1/ch2 table.
        #[arg(long, conflicts_with = "grr")]
        table: bool,
        /// Use only the Riemann-Roch expansion.
        #[arg(long)]
        grr: bool,
    },
    /// Brane dictionary image of an integral class `r,a,b,c`.
    Brane { vector: String },
    /// BPS mass of an integral H^2 class.
    Mass {
        gamma: String,
        /// Period as a file or inline JSON; defaults to (τ₁+τ₂) + i(τ₃+τ₄).
        #[arg(long)]
        period: Option<String>,
    },
    /// Check that ψ is an isometry of the H^{1,1}/Pic quotients.
    MirrorCheck {
        #[arg(long)]
        period: Option<String>,
    },
    /// Run the self-checks.
    Selftest {
        #[arg(long)]
        fixtures: bool,
        #[arg(long)]
        lemma: bool,
        #[arg(long)]
        erratum: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli.global, &cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure { code, message, stdout }) => {
            if let Some(text) = stdout {
                print!("{text}");
            }
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
