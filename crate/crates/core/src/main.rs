use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use radohorn::cli::{execute, Command, ExitStatus, Options};
use radohorn::FamilyDocument;

/// Partition vector families into linearly independent sets.
#[derive(Parser)]
#[command(name = "radohorn", version)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
    /// Family document (.json, or .csv with one column per vector).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Include a Young diagram of the partition.
    #[arg(long, global = true)]
    render: bool,
    /// Draw diagrams with + - | only.
    #[arg(long, global = true)]
    ascii_only: bool,
}

#[derive(Subcommand)]
enum Commands {
    /// Fundamental partition of the family.
    Partition,
    /// Decide whether the family splits into k independent sets.
    Analyze {
        #[arg(long)]
        k: usize,
    },
    /// Stage-by-stage construction of the fundamental partition.
    Construct {
        /// Include projected vectors for every stage.
        #[arg(long)]
        trace: bool,
    },
    /// Redundancy witness for k independent sets.
    Witness {
        #[arg(long)]
        k: usize,
    },
    /// Remove l vectors so the rest splits into k independent sets.
    Remove {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Brute-force reference results for small families.
    Oracle,
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(ExitStatus::InputError.code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(ExitStatus::InputError.code())
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let Some(input) = cli.input else {
        return fail("--input is required");
    };
    let mut options = Options {
        render: cli.render,
        ascii_only: cli.ascii_only,
        trace: false,
    };
    let command = match cli.command {
        Commands::Partition => Command::Partition,
        Commands::Analyze { k } => Command::Analyze { k },
        Commands::Construct { trace } => {
            options.trace = trace;
            Command::Construct
        }
        Commands::Witness { k } => Command::Witness { k },
        Commands::Remove { k, l } => Command::Remove { k, l },
        Commands::Oracle => Command::Oracle,
    };
    let family = match FamilyDocument::load(&input).and_then(|d| d.to_family()) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let outcome = match execute(command, &input.to_string_lossy(), &family, options) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.report)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(outcome.report.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        return fail(e);
    }
    ExitCode::from(outcome.status.code())
}
