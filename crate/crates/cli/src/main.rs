use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use eggert_cli::{run, Cli, EXIT_FAILED, EXIT_IO};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_FAILED as u8 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("eggert: {e}");
            e.exit_code()
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(EXIT_IO as u8);
    }
    ExitCode::from(code as u8)
}
