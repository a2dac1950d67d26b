//! The `frobsq` command line.
//!
//! Data goes to stdout (or `--out`), everything meant for humans goes to
//! stderr. Exit statuses:
//!
//! | code | meaning                                                         |
//! |------|-----------------------------------------------------------------|
//! | 0    | success                                                         |
//! | 1    | usage error, domain error, failed hypothesis, I/O error         |
//! | 2    | capacity error (an oracle was asked beyond its cap)             |
//! | 3    | the computation finished but methods disagreed (scan mismatches)|

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

pub use args::{CliConfig, Command, Format, MethodArg, SemigroupArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Overrides the largest shift `a` the semigroup oracle accepts.
pub const ORACLE_CAP_ENV: &str = "FROBSQ_ORACLE_CAP";
/// Overrides the largest `n` the iota dynamic-programming table is built for.
pub const IOTA_CAP_ENV: &str = "FROBSQ_IOTA_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] frobsq::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(frobsq::Error::Capacity { .. }) => EXIT_CAPACITY,
            CliError::Library(_) | CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
        }
    }
}

/// Caps read from the environment.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub oracle_cap: u64,
    pub iota_cap: u64,
}

impl Limits {
    pub fn from_env() -> Result<Self, CliError> {
        fn read(name: &str, default: u64) -> Result<u64, CliError> {
            match std::env::var(name) {
                Ok(v) => v.trim().parse().map_err(|_| {
                    CliError::Usage(format!("{name} must be a nonnegative integer; got {v:?}"))
                }),
                Err(_) => Ok(default),
            }
        }
        Ok(Self {
            oracle_cap: read(ORACLE_CAP_ENV, frobsq::semigroup::DEFAULT_SHIFT_CAP)?,
            iota_cap: read(IOTA_CAP_ENV, frobsq::squares::DEFAULT_IOTA_ORACLE_CAP)?,
        })
    }
}

/// What a successful command produced.
pub(crate) struct Output {
    pub data: Vec<u8>,
    pub disagreement: bool,
}

/// Runs the CLI with `argv` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };

    let result = Limits::from_env()
        .and_then(|limits| commands::execute(&config, limits, stderr))
        .and_then(|out| {
            match &config.out {
                Some(path) => std::fs::write(path, &out.data)?,
                None => {
                    stdout.write_all(&out.data)?;
                    stdout.flush()?;
                }
            }
            Ok(out.disagreement)
        });

    match result {
        Ok(false) => EXIT_OK,
        Ok(true) => EXIT_MISMATCH,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
