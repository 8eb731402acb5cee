mod config;
mod run;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, RunConfig};
use run::Status;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Usage as u8 } else { 0 });
        }
    };
    let cfg = RunConfig::from(cli.command);
    match run::run(&cfg) {
        Ok(outcome) => {
            println!("{}", serde_json::to_string_pretty(&outcome.report).expect("JSON value"));
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::Usage as u8)
        }
    }
}
