use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use merobound::Variant;
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "merobound", version, about = "Coefficient bounds for meromorphic bi-univalent function classes")]
pub struct Cli {
    /// Output format; defaults to csv for `bounds` and json elsewhere
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write results here instead of stdout; the run manifest goes to
    /// `<PATH>.manifest.json`
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Master seed for randomized subcommands
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Truncation order
    #[arg(long, global = true)]
    pub order: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantArg {
    Starlike,
    #[value(name = "strongly_starlike", alias = "strongly-starlike")]
    StronglyStarlike,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Starlike => Variant::Starlike,
            VariantArg::StronglyStarlike => Variant::StronglyStarlike,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Tabulate the closed-form bounds over a parameter grid
    Bounds(BoundsArgs),
    /// Check every coefficient identity at random rational points
    Verify(VerifyArgs),
    /// Compositional inverse of a normalized series
    Invert(InvertArgs),
    /// Sampled membership test for a meromorphic series
    Member(MemberArgs),
    /// Randomized search for members with large |b0| and |b1|
    Search(SearchArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bounds(_) => "bounds",
            Command::Verify(_) => "verify",
            Command::Invert(_) => "invert",
            Command::Member(_) => "member",
            Command::Search(_) => "search",
        }
    }
}

/// Grids are `start:stop:step`, a comma list, or a single value; numbers may
/// be decimals or `a/b` and are read exactly.
#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    /// Variants to tabulate (default: both)
    #[arg(long, value_enum, value_delimiter = ',')]
    pub variant: Vec<VariantArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub mu: String,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Random rational points per variant
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Variants to check (default: both)
    #[arg(long, value_enum, value_delimiter = ',')]
    pub variant: Vec<VariantArg>,
    /// Negate one identity's right-hand side; the run must then fail
    #[arg(long, hide = true, value_name = "IDENTITY")]
    pub inject_mutant: Option<String>,
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct InvertArgs {
    /// `b_0,b_1,...` of `z + b_0 + b_1/z + ...`
    #[arg(long, allow_hyphen_values = true)]
    pub mero: Option<String>,
    /// `a_2,a_3,...` of `z + a_2 z^2 + ...`
    #[arg(long, allow_hyphen_values = true)]
    pub analytic: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct ClassArgs {
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub mu: String,
}

#[derive(Debug, Args, Serialize)]
pub struct GridArgs {
    /// Sample radii (default: 1+2^-j for j=1..12, then 2, 5, 10, 100)
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    /// Sample points per circle
    #[arg(long, default_value_t = 720)]
    pub angles: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct MemberArgs {
    /// `b_0,b_1,...`, padded with zeros up to the order
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    #[command(flatten)]
    pub class: ClassArgs,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SearchArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[arg(long, default_value_t = merobound::search::DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, default_value_t = merobound::search::DEFAULT_REFINE_STEPS)]
    pub refine_steps: usize,
    /// Atoms per Carathéodory function
    #[arg(long, default_value_t = merobound::caratheodory::DEFAULT_ATOMS)]
    pub atoms: usize,
    #[command(flatten)]
    pub grid: GridArgs,
}
