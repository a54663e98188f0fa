//! Library side of the `merobound` binary: argument model, subcommands and
//! run manifests. The binary only parses, configures threads and writes.

use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Serialize;

pub mod args;
pub mod commands;

use args::{Cli, Command, Format};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_FALSIFIED: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(PathBuf, std::io::Error),
}

/// Everything needed to reproduce a run. Deliberately free of timestamps so
/// that identical invocations produce identical manifests.
#[derive(Serialize)]
struct RunManifest<'a> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'static str,
    seed: u64,
    format: Format,
    output: Option<&'a Path>,
    threads: Option<usize>,
    invocation: &'a Cli,
}

/// Output of one subcommand run.
#[derive(Debug)]
pub struct Execution {
    pub text: String,
    pub status: u8,
    /// Single-line JSON manifest.
    pub manifest: String,
}

pub fn parse<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Runs the subcommand without touching stdout or the filesystem.
pub fn execute(cli: &Cli, threads: Option<usize>) -> Result<Execution, Failure> {
    let default_format = match cli.command {
        Command::Bounds(_) => Format::Csv,
        _ => Format::Json,
    };
    let format = cli.format.unwrap_or(default_format);
    let outcome = match &cli.command {
        Command::Bounds(a) => commands::bounds(a, format)?,
        Command::Verify(a) => commands::verify(a, cli.seed, format)?,
        Command::Invert(a) => commands::invert(a, cli.order, format)?,
        Command::Member(a) => commands::member(a, cli.order, format)?,
        Command::Search(a) => commands::search_cmd(a, cli.seed, cli.order, format)?,
    };
    let manifest = RunManifest {
        tool: "merobound",
        version: env!("CARGO_PKG_VERSION"),
        subcommand: cli.command.name(),
        seed: cli.seed,
        format,
        output: cli.out.as_deref(),
        threads,
        invocation: cli,
    };
    Ok(Execution {
        text: outcome.text,
        status: outcome.status,
        manifest: serde_json::to_string(&manifest).expect("serializable"),
    })
}
