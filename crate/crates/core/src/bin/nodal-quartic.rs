use clap::Parser;
use nodal_quartic::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
