use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mclab_cli::args::Cli;
use mclab_cli::commands::run;

fn init_threads() {
    let Ok(value) = std::env::var("MCLAB_THREADS") else {
        return;
    };
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            // only fails if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring MCLAB_THREADS={value:?}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(cli) {
        Ok(outcome) => {
            // a closed pipe (e.g. `| head`) is not an error
            let mut out = std::io::stdout().lock();
            for line in &outcome.stdout {
                if writeln!(out, "{line}").is_err() {
                    break;
                }
            }
            drop(out);
            for line in &outcome.stderr {
                eprintln!("{line}");
            }
            outcome.status.into()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.status().into()
        }
    }
}
