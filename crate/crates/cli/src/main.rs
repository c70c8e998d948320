use std::process::ExitCode;

use clap::Parser;
use displab_cli::runner::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(manifest) => {
            println!("{manifest}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("displab: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
