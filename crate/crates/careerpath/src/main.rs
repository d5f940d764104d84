use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    careerpath::cli::run(careerpath::cli::Cli::parse())
}
