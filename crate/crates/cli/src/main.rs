mod args;
mod commands;
mod config;
mod error;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;

fn run(cli: &Cli) -> error::Result<Outcome> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| error::CliError::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Build(a) => commands::build(a),
        Command::Compress(a) => commands::compress(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::GammaExperiment(a) => commands::gamma(a),
        Command::Bubbles(a) => commands::bubbles(a),
        Command::Oracle(a) => commands::oracle(a),
        Command::PlantedBubble(a) => commands::planted(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Complete) => ExitCode::SUCCESS,
        Ok(Outcome::Partial) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
