mod commands;
mod output;
mod verify;

use std::process::ExitCode;

use clap::Parser;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Numerical(String),
    Verify(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Verify(_) => 1,
            Self::Usage(_) => 2,
            Self::Io(_) => 3,
            Self::Numerical(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "usage error: {m}"),
            Self::Io(m) => write!(f, "I/O error: {m}"),
            Self::Numerical(m) => write!(f, "numerical failure: {m}"),
            Self::Verify(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<catalan_ops::Error> for CliError {
    fn from(e: catalan_ops::Error) -> Self {
        use catalan_ops::Error as E;
        match e {
            E::Config(_) => Self::Usage(e.to_string()),
            E::Parse { .. } => Self::Io(e.to_string()),
            _ => Self::Numerical(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = commands::Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("catalan-ops: {e}");
            ExitCode::from(e.code())
        }
    }
}
