use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use qiota_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli).and_then(|out| emit(&cli, &out).map(|()| out.exit_code)) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("qiota: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(cli: &Cli, out: &qiota_cli::Output) -> Result<(), CliError> {
    let text = if cli.json { out.record.to_line() } else { out.text.clone() };
    // a closed pipe (`| head`) is not an error
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    if let Some(path) = &cli.out {
        fs::write(path, format!("{text}\n"))?;
    }
    Ok(())
}
