use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "effdim",
    version,
    about = "Effective dimensions of (truncated) path semigroups of quivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Work in the truncated semigroup P_N
    #[arg(long = "truncate", value_name = "N", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub truncate: Option<u64>,

    /// Path length bound for verifying representations of P (default 2n+2)
    #[arg(long, value_name = "L", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_len: Option<u64>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Write output to FILE instead of stdout
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for verification
    #[arg(long, value_name = "K", global = true)]
    pub threads: Option<usize>,

    /// Seed for the random quiver suite
    #[arg(long, value_name = "S", global = true)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-vertex table and effective dimensions
    Analyze { quiver: PathBuf },
    /// Build the effective representation and print it as JSON
    Construct { quiver: PathBuf },
    /// Build (or load) a representation and check that it is effective
    Verify {
        quiver: PathBuf,
        /// Verify this representation file instead of building one
        #[arg(long, value_name = "FILE")]
        rep: Option<PathBuf>,
    },
    /// Stabilization coefficients and eff.dim(P_N) for N = 1..n+1
    Stabilize { quiver: PathBuf },
    /// Closed form for type-A quivers
    Formula {
        /// Quiver file of type A (alternative to --segments)
        quiver: Option<PathBuf>,
        /// Vertex counts of the ordered segments, e.g. 3,2
        #[arg(long, value_delimiter = ',', conflicts_with = "quiver")]
        segments: Option<Vec<usize>>,
    },
    /// Build and verify representations for a seeded random quiver suite
    Suite {
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Analyze { quiver } => commands::analyze(quiver, &cli.global),
        Command::Construct { quiver } => commands::construct(quiver, &cli.global),
        Command::Verify { quiver, rep } => commands::verify(quiver, rep.as_deref(), &cli.global),
        Command::Stabilize { quiver } => commands::stabilize(quiver, &cli.global),
        Command::Formula { quiver, segments } => {
            commands::formula(quiver.as_deref(), segments.as_deref(), &cli.global)
        }
        Command::Suite { count } => commands::suite(*count, &cli.global),
    };
    match result.and_then(|out| commands::emit(&out, &cli.global).map(|()| out.success)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
