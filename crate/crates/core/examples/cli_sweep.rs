//! Drives the batch frontend in-process and prints its CSV.

use stein_steps::cli::{execute, Cli, Format};
use clap::Parser;

fn main() -> stein_steps::Result<()> {
    let cli = Cli::parse_from(["stein-steps", "normal-sn", "--n", "6", "--partitions", "5,1;4,2;3,3;4,1,1"]);
    let (table, _) = execute(&cli.experiment)?;
    print!("{}", table.render(Format::Csv)?);
    Ok(())
}
