mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Invalid = 2,
    Refused = 3,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed input, unsupported order.
    Invalid(String),
    /// A resource cap refused the run.
    Refused(String),
}

impl CliError {
    fn status(&self) -> Status {
        match self {
            CliError::Invalid(_) => Status::Invalid,
            CliError::Refused(_) => Status::Refused,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Refused(m) => f.write_str(m),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Status::Invalid as u8 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("chm: {e}");
            ExitCode::from(e.status() as u8)
        }
    }
}
