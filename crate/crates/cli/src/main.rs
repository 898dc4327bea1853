use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use superriccati_cli::{execute, ModeRegistry, Overrides, Status};

/// Superfield Riccati solver.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Args {
    /// JSON run config.
    #[arg(long)]
    config: PathBuf,
    /// Mode to run; overrides the config's `mode`.
    #[arg(long)]
    mode: Option<String>,
    /// Output path prefix; overrides the config's `output`.
    #[arg(long)]
    out: Option<String>,
    /// Print nothing except errors.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let overrides = Overrides {
        mode: args.mode,
        out: args.out,
    };
    let execution = execute(&args.config, &overrides, &ModeRegistry::builtin());
    if !args.quiet {
        if let Some(text) = &execution.console {
            println!("{text}");
        }
        println!("{}", execution.report.summary());
    } else if execution.report.status == Status::Error {
        if let Some(e) = &execution.report.error {
            eprintln!("error: {}", e.message);
        }
    }
    ExitCode::from(execution.exit_code() as u8)
}
