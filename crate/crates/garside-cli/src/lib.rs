//! Command-line front-end for the `garside` library.

pub mod commands;
pub mod input;

use std::ffi::OsString;
use std::io::Read;

use clap::error::ErrorKind;
use clap::Parser;
use garside::reversing::DEFAULT_FUEL;

use crate::commands::{dispatch, CliError, Command, Options, Workspace, USAGE};

#[derive(Parser, Debug)]
#[command(name = "garside", version, about = "Garside calculus: reversing, normal forms, word problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Reversing budget in elementary steps.
    #[arg(long, global = true, env = "GARSIDE_FUEL", default_value_t = DEFAULT_FUEL)]
    pub fuel: u64,
    /// Bound on closure sizes and word lengths.
    #[arg(long, global = true, default_value_t = 64)]
    pub cap: usize,
    /// Comma-separated Garside family for presentation inputs (default:
    /// the smallest one containing the generators).
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Structured output.
    #[arg(long, global = true)]
    pub json: bool,
}

/// Exit code and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let text = read_input(cli.command.input(), stdin)?;
    let source = input::parse_input(&text).map_err(CliError::Parse)?;
    let ws = Workspace::new(source, Options { fuel: cli.fuel, cap: cli.cap, family: cli.family.clone() });
    let report = dispatch(&cli.command, &ws)?;
    let stdout = if cli.json {
        let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        report.text
    };
    Ok(Outcome { code: report.code, stdout, stderr: String::new() })
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: shown, stderr: String::new() }
                }
                _ => Outcome { code: USAGE, stdout: String::new(), stderr: shown },
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(out) => out,
        Err(e) => {
            let mut stdout = String::new();
            if cli.json {
                stdout =
                    serde_json::to_string_pretty(&serde_json::json!({ "error": e.to_string(), "exit_code": e.code() }))
                        .expect("JSON values serialize");
                stdout.push('\n');
            }
            Outcome { code: e.code(), stdout, stderr: format!("error: {e}\n") }
        }
    }
}
