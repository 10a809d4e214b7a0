mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

use args::RunConfig;
use commands::{run, CliError, Failure};

fn report(err: &CliError) -> ExitCode {
    eprintln!("error[{}]: {err}", err.code());
    eprintln!("{}", RunConfig::command().render_usage());
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("error[E_USAGE]: {}", e.kind());
            let _ = e.print();
            eprintln!("{}", RunConfig::command().render_usage());
            return ExitCode::from(2);
        }
    };
    if let Some(jobs) = cfg.jobs {
        if jobs == 0 {
            return report(&CliError::Usage("--jobs must be at least 1".into()));
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            return report(&CliError::Usage(e.to_string()));
        }
    }
    match run(&cfg) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Failure(msg))) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => report(&e),
    }
}
