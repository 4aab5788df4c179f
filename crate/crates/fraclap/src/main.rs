use std::process::ExitCode;

use clap::Parser;
use fraclap::cli::{run, Cli};

fn main() -> ExitCode {
    run(Cli::parse())
}
