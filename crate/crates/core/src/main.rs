use clap::Parser;

use trace_kernel::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
