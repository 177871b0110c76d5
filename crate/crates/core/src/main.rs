use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use freeparticle::cli::{run, CliConfig, Subcommand};

#[derive(Clone, Copy, ValueEnum)]
enum Command {
    /// Decide linearizability of a system file.
    Check,
    /// Compute the system induced from the free particle by a transform file.
    Induce,
    /// Print the cubic decomposition (G, H, L, M) of a system or transform file.
    Decompose,
    /// Print the Fels tensors S and P of a system file (m >= 2).
    Fels,
    /// Print the second prolongation of a vector-field file.
    Prolong,
    /// Run the criterion for linear systems on a system file.
    Linear,
}

impl From<Command> for Subcommand {
    fn from(c: Command) -> Subcommand {
        match c {
            Command::Check => Subcommand::Check,
            Command::Induce => Subcommand::Induce,
            Command::Decompose => Subcommand::Decompose,
            Command::Fels => Subcommand::Fels,
            Command::Prolong => Subcommand::Prolong,
            Command::Linear => Subcommand::Linear,
        }
    }
}

/// Exact tests for point-linearizability of second-order ODE systems.
#[derive(Parser)]
#[command(version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Input file, or `-` for standard input.
    input: PathBuf,
    /// Emit JSON instead of the human-readable report.
    #[arg(long)]
    json: bool,
    /// Random evaluations before each exact zero test (0 disables them).
    #[arg(long, default_value_t = 8)]
    probe: usize,
    /// Seed for the random evaluations.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let path = args.input.to_string_lossy().into_owned();
    let mut contents = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut contents).map(|_| ())
    } else {
        std::fs::read_to_string(&args.input).map(|s| contents = s)
    };
    if let Err(e) = read {
        eprintln!("error: cannot read {path}: {e}");
        return ExitCode::from(2);
    }
    let config = CliConfig {
        subcommand: args.command.into(),
        input_path: path,
        json: args.json,
        probe_trials: args.probe,
        seed: args.seed,
    };
    let (code, output) = run(&config, &contents);
    print!("{output}");
    ExitCode::from(code as u8)
}
