use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use perfiso_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // usage errors share exit code 1 with config errors; 2 is reserved for findings
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let code = match run(&RunConfig::from(cli), &mut std::io::stdout()) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("perfiso: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
