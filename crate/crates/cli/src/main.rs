use std::process::ExitCode;

use clap::Parser;
use updyn_cli::args::Cli;
use updyn_cli::{execute, EXIT_FAILED, EXIT_PASS};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output_path = cli.global.output.clone();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("updyn: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let mut text = outcome.output.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output_path {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("updyn: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_FAILED as u8);
            }
        }
        None => print!("{text}"),
    }
    if outcome.passed {
        ExitCode::from(EXIT_PASS as u8)
    } else {
        ExitCode::from(EXIT_FAILED as u8)
    }
}
