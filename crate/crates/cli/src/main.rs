mod args;
mod commands;
mod error;
mod files;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, OutputFormat};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command, cli.precision) {
        Ok(report) => {
            let text = match cli.output {
                OutputFormat::Structured => report.to_structured(),
                OutputFormat::Table => report.to_table(),
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
