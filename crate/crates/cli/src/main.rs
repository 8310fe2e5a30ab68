use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qalg_cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    if !out.stdout.is_empty() {
        // a closed pipe downstream is not an error worth reporting
        let _ = writeln!(std::io::stdout().lock(), "{}", out.stdout);
    }
    if (!cli.json || out.code == EXIT_INPUT) && !out.summary.is_empty() {
        let mut err = std::io::stderr().lock();
        let _ = write!(err, "{}", out.summary);
        if !out.summary.ends_with('\n') {
            let _ = writeln!(err);
        }
    }
    ExitCode::from(out.code as u8)
}
