use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use tdz_cli::{render, run_text, Overrides, EXIT_INPUT};

/// Classify an algebra element or operator described in JSON and print the verdict.
#[derive(Parser, Debug)]
#[command(name = "tdz", version)]
struct Args {
    /// Read the request from this file.
    #[arg(long, conflicts_with = "stdin")]
    input: Option<PathBuf>,

    /// Read the request from standard input (the default when no file is given).
    #[arg(long)]
    stdin: bool,

    #[arg(long)]
    tolerance_eps_norm: Option<f64>,

    #[arg(long)]
    n_witness: Option<usize>,

    /// Indent the JSON output.
    #[arg(long)]
    pretty: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| format!("cannot read stdin: {e}"))
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("tdz: {msg}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let overrides = Overrides { eps_norm: args.tolerance_eps_norm, n_witness: args.n_witness };
    let outcome = run_text(&text, &overrides);
    if let Some(msg) = outcome.document.get("message").and_then(|m| m.as_str()) {
        eprintln!("tdz: {msg}");
    }
    let mut doc = render(&outcome, args.pretty);
    doc.push('\n');
    let mut out = io::stdout().lock();
    if out.write_all(doc.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::FAILURE;
    }
    ExitCode::from(outcome.exit_code as u8)
}
