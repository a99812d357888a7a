use std::process::ExitCode;

use clap::Parser;
use limitfold::cli::{run, Args, CliError};

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Guard { report, .. } = &e {
                eprint!("{report}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
