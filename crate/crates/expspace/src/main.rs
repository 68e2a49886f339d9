use clap::Parser;

use expspace::cli::{dispatch, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(error) = dispatch(cli) {
        eprintln!("error: {error}");
        std::process::exit(1);
    }
}
