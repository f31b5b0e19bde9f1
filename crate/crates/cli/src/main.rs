use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = hopf_cli::init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    let run = hopf_cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(run.stdout.as_bytes());
    let _ = std::io::stderr().write_all(run.stderr.as_bytes());
    ExitCode::from(run.code)
}
