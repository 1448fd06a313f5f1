mod args;
mod commands;
mod error;
mod output;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use dirichlet_lab::verify::Verdict;

use args::{Cli, Command};
use error::{CliError, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE};

fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let code = match &cli.command {
        Command::Gen(a) => commands::gen(a, out).map(|_| 0)?,
        Command::Convolve(a) => commands::convolve(a, out).map(|_| 0)?,
        Command::Sum(a) => commands::sum(a, out).map(|_| 0)?,
        Command::Series(a) => commands::series(a, out).map(|_| 0)?,
        Command::Constants(a) => commands::constants(a, out).map(|_| 0)?,
        Command::Verify(a) => match commands::verify(a, out)? {
            Verdict::Pass => 0,
            Verdict::Fail => EXIT_FAIL,
            Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        },
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("dirichlet-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
