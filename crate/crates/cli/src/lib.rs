//! The `hopfind` command line: instance files, the built-in catalog and
//! report-producing subcommands.

pub mod catalog;
pub mod commands;
pub mod instance;
pub mod report;

use std::time::Instant;

use clap::Parser;
use hopfind::Error;

use commands::{Cli, Command, Format};
pub use instance::Instance;
pub use report::{CommandReport, Status};

pub const THREADS_VAR: &str = "HOPFIND_THREADS";

/// Parses `argv` (without the program name) and runs it. Returns the exit code
/// and what would be printed on stdout.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> (i32, String) {
    let args = std::iter::once("hopfind").chain(argv.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let threads = match std::env::var(THREADS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => return input_error(&cli, format!("{THREADS_VAR} must be a positive integer, got {v:?}")),
        },
        Err(_) => None,
    };
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => input_error(&cli, e.to_string()),
        },
        None => dispatch(&cli),
    }
}

fn input_error(cli: &Cli, msg: String) -> (i32, String) {
    let mut r = CommandReport::new("setup");
    r.error(&Error::Input(msg));
    (r.exit_code(), render(cli.format, &r))
}

fn render(format: Format, r: &CommandReport) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Text => r.to_text(),
    }
}

fn dispatch(cli: &Cli) -> (i32, String) {
    if let Command::Catalog { export, .. } = &cli.command {
        return match export {
            Some(name) => match catalog::instance(name) {
                Ok(inst) => (0, inst.render()),
                Err(e) => {
                    let mut r = CommandReport::new(format!("catalog export {name}"));
                    r.error(&e);
                    (r.exit_code(), render(cli.format, &r))
                }
            },
            None => {
                let names = catalog::names();
                let out = match cli.format {
                    Format::Json => serde_json::to_string_pretty(&names).expect("names serialize") + "\n",
                    Format::Text => names.iter().map(|n| format!("{n}\n")).collect(),
                };
                (0, out)
            }
        };
    }
    let start = Instant::now();
    let mut report = commands::execute(&cli.command);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    (report.exit_code(), render(cli.format, &report))
}
