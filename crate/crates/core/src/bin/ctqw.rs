use std::process::ExitCode;

use clap::Parser;
use ctqw::cli::{run, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("WALK_LOG")).init();
    ExitCode::from(run(Cli::parse()))
}
