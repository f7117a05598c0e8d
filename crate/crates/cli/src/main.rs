use std::process::ExitCode;

use clap::Parser;
use eit_cli::cli::{run, Cli};
use eit_cli::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::RowFailures(lines) = &e {
                for line in lines {
                    eprintln!("  {line}");
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
