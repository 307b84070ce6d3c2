use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use grs_hull::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let status = match run(&cli, &mut out, &mut err) {
        Ok(status) => status as u8,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit() as u8
        }
    };
    let _ = out.flush();
    ExitCode::from(status)
}
