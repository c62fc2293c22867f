use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use poscomp_cli::{run, Cli, Item, Report};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let kind = match e.kind() {
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => "UnknownVerb",
                _ => "ParseError",
            };
            let args: Vec<String> = std::env::args().skip(1).collect();
            let report = Report::new(
                &args.join(" "),
                0,
                vec![Item::error(kind, e.to_string())],
                None,
            );
            println!("{}", report.to_json());
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let mut report = run(&cli);
    report.timing_ms = start.elapsed().as_millis() as u64;
    let text = report.to_json();
    match &cli.flags.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
