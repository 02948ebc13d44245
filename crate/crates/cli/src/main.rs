use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use vir_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if !out.stdout.is_empty() {
                // A closed pipe (`vir ... | head`) is not an error.
                let _ = writeln!(io::stdout().lock(), "{}", out.stdout);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
