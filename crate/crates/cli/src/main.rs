use std::process::ExitCode;

use clap::Parser;
use downset_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(record) => {
            if cli.json {
                println!("{}", record.to_json());
            } else {
                print!("{}", record.to_text());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("downset: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
