use clap::Parser;
use dcorr_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        eprintln!("dcorr: {err}");
        std::process::exit(err.exit_code());
    }
}
