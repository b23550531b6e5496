use std::process::ExitCode;

use clap::Parser;
use cubefree_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(cubefree_cli::run(&cli))
}
