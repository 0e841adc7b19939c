use clap::Parser;
use ordmon_cli::{emit, run, Cli, EXIT_FAIL};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if let Some(msg) = &outcome.message {
        eprintln!("ordmon: {msg}");
    }
    if let Err(e) = emit(&cli, &outcome) {
        eprintln!("ordmon: cannot write output: {e}");
        std::process::exit(EXIT_FAIL);
    }
    std::process::exit(outcome.code);
}
