mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            if let Err(e) = commands::emit(&cli.common, &out.report) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if let Some(msg) = &out.failure {
                eprintln!("check failed: {msg}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.status())
        }
    }
}
