use std::process::ExitCode;

use clap::Parser;
use purify_qec::cli::{main_with, Cli};

fn main() -> ExitCode {
    main_with(Cli::parse())
}
