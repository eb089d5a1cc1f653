use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use histoq::{render, Cli, CliError, Format};

fn emit(cli: &Cli) -> Result<(), CliError> {
    let report = cli.run()?;
    let text = render(&report, cli.format);
    match &cli.out {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Config(e.to_string()))?;
        }
    }
    if cli.format == Format::Csv && !report.summary.is_empty() {
        eprint!("{}", report.summary_lines());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match emit(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("histoq: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
