use std::process::ExitCode;

use clap::Parser;
use mubs::config::{Command, Output};
use mubs::{compare, run, Cli, CliCommand, CliError, CompareConfig, RunConfig};

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let (outcome, output) = match &cli.command {
        CliCommand::Compare(args) => {
            let cfg = CompareConfig::from_args(args)?;
            (compare(&cfg)?, cfg.output)
        }
        other => {
            let (command, args) = match other {
                CliCommand::Construct(a) => (Command::Construct, a),
                CliCommand::Verify(a) => (Command::Verify, a),
                CliCommand::Audit(a) => (Command::Audit, a),
                CliCommand::Geometry(a) => (Command::Geometry, a),
                CliCommand::All(a) => (Command::All, a),
                CliCommand::Compare(_) => unreachable!(),
            };
            let cfg = RunConfig::from_args(command, args)?;
            (run(&cfg)?, cfg.output)
        }
    };
    let streamed = mubs::run::write_artifact(&output, &outcome.artifact)?;
    // keep stdout clean when the artifact is on it
    match &output {
        Output::File(path) if !streamed => println!("{} -> {}", outcome.verdict, path.display()),
        _ => eprintln!("{}", outcome.verdict),
    }
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
