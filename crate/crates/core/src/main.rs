use std::process::ExitCode;

use clap::Parser;
use raag_growth::cli::{run, wants_pretty, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.render(wants_pretty(&cli.command)));
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
