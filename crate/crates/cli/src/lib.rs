//! Command-line front end for `hopf-core`: argument parsing, JSON formats,
//! chart rendering and the verb implementations behind the `hopf` binary.

pub mod args;
pub mod chart;
pub mod commands;
pub mod error;
pub mod formats;

use clap::Parser;

pub use args::Cli;
pub use commands::{execute, Outcome};
pub use error::{CliError, CliResult, EXIT_CHECK_FAILED, EXIT_USAGE};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "HOPF_THREADS";

/// Result of one invocation: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the verb.
pub fn run<I, T>(argv: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Run { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Run { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli) {
        Ok(Outcome { stdout, ok }) => Run { code: if ok { 0 } else { EXIT_CHECK_FAILED }, stdout, stderr: String::new() },
        Err(e) => Run { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Sizes the global thread pool from `HOPF_THREADS`, if set.
pub fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, found `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}
