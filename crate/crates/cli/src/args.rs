use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Tables,
    Sum1d,
    Sum2d,
    Partition,
    Sweep,
    Fig2,
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    Well1d,
    Rotator,
    Well2d,
}

impl From<SystemArg> for memf::sweep::System {
    fn from(s: SystemArg) -> Self {
        match s {
            SystemArg::Well1d => Self::Well1D,
            SystemArg::Rotator => Self::Rotator,
            SystemArg::Well2d => Self::Well2D,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Gaussian,
    Rational,
    Expcos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Tsv,
}

impl Format {
    pub fn separator(self) -> char {
        match self {
            Format::Csv => ',',
            Format::Tsv => '\t',
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Tsv => "tsv",
        }
    }
}

/// Modified Euler-Maclaurin summation with certified remainder bounds.
#[derive(Debug, Clone, Parser)]
#[command(name = "memf", version)]
pub struct RunConfig {
    #[arg(long, value_enum)]
    pub command: Command,

    /// System for `partition` and `sweep`; `sweep` runs all three when omitted.
    #[arg(long, value_enum)]
    pub system: Option<SystemArg>,

    /// Inverse temperature (`Bc` for the rotator).
    #[arg(long = "B", alias = "Bc", allow_negative_numbers = true)]
    pub b: Option<f64>,

    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    /// Order along y for `sum2d`; defaults to `--n`.
    #[arg(long)]
    pub n2: Option<u32>,
    /// Modes along y for `sum2d`; defaults to `--p`.
    #[arg(long)]
    pub p2: Option<u32>,

    #[arg(long = "B-min", allow_negative_numbers = true)]
    pub b_min: Option<f64>,
    #[arg(long = "B-max", allow_negative_numbers = true)]
    pub b_max: Option<f64>,
    #[arg(long = "B-step", allow_negative_numbers = true)]
    pub b_step: Option<f64>,

    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub jobs: Option<usize>,

    /// Output file, or directory for `tables`. Standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Function family for `sum1d` / `sum2d`.
    #[arg(long, value_enum, default_value_t = Family::Gaussian)]
    pub family: Family,

    /// Exponent of the rational family `(1 + x^2)^{-s}`.
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,

    /// Decay rate of the exp-cos family.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,

    /// Frequency of the exp-cos family.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,

    /// First summation index (x for `sum2d`).
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub from: i64,

    /// Last summation index, inclusive; `sum1d` sums to infinity when omitted.
    #[arg(long, allow_negative_numbers = true)]
    pub to: Option<i64>,

    /// First y index for `sum2d`; defaults to `--from`.
    #[arg(long, allow_negative_numbers = true)]
    pub from_y: Option<i64>,

    /// Last y index for `sum2d`, inclusive; defaults to `--to`.
    #[arg(long, allow_negative_numbers = true)]
    pub to_y: Option<i64>,

    /// Explicit lattice points for `sum2d` as `i,j;i,j;...`, replacing the rectangle.
    #[arg(long)]
    pub cells: Option<String>,

    /// Largest Hermite degree scanned by `conjecture`.
    #[arg(long, default_value_t = 20)]
    pub n_max: u32,

    /// Grid spacing of the `conjecture` scan.
    #[arg(long, default_value_t = 1e-3)]
    pub grid_step: f64,

    /// Negate the derivative corrections in `sweep` (harness self-test).
    #[arg(long, hide = true)]
    pub inject_sign_fault: bool,
}
