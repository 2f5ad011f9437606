use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::format::Format;

/// Integer compositions counted by congruence successions.
#[derive(Debug, Parser)]
#[command(name = "congruence", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact counts c(n, d, a) by enumeration and/or generating function.
    Count(CountArgs),
    /// Coefficients of the generating function up to a truncation order.
    Series(SeriesArgs),
    /// Run the self-checking suites.
    Verify(VerifyArgs),
    /// Dominant root, amplitude and growth rate.
    Asympt(AsymptArgs),
    /// Minimum-modulus circle scan with a certified lower bound.
    Scan(ScanArgs),
    /// Diagonal coefficient against its first-order approximation.
    Diagonal(DiagonalArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Modulus {
    /// Modulus of the succession congruence.
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// Shift: a succession is a step with next ≡ prev + r (mod m).
    #[arg(long, default_value_t = 0)]
    pub r: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Oracle,
    Gf,
    Both,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("size").required(true).args(["n", "n_max"])))]
pub struct CountArgs {
    #[command(flatten)]
    pub modulus: Modulus,
    /// A single size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Every size from 0 up to this.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Only this number of parts.
    #[arg(long)]
    pub d: Option<usize>,
    /// Only this number of successions.
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long, value_enum, default_value_t = Source::Both)]
    pub source: Source,
    /// Count compositions without any succession.
    #[arg(long, conflicts_with_all = ["carlitz", "d", "a"])]
    pub alternating: bool,
    /// Count Carlitz compositions (no two adjacent parts equal).
    #[arg(long, conflicts_with_all = ["d", "a"])]
    pub carlitz: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub modulus: Modulus,
    /// Truncation order in x.
    #[arg(long = "N", default_value_t = 20)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only this suite.
    #[arg(long)]
    pub suite: Option<String>,
    /// Size budget for every suite run (and the trace).
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Write a bijection trace to this file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Check a bijection trace instead of running suites.
    #[arg(long, conflicts_with_all = ["trace", "suite"])]
    pub check_trace: Option<PathBuf>,
    /// Corrupt each suite's comparison; the suites must then fail.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AsymptArgs {
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// Tolerance on |H_m(rho)|.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Compare with the exact count at this size.
    #[arg(long)]
    pub compare: Option<usize>,
    /// Report the Carlitz limit instead.
    #[arg(long, conflicts_with = "compare")]
    pub carlitz: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Truncation of the Carlitz denominator.
    #[arg(long, default_value_t = 7)]
    pub k: usize,
    /// Circle radius.
    #[arg(long, default_value_t = 0.7)]
    pub c: f64,
    /// Number of sample points.
    #[arg(long = "N", default_value_t = 1000)]
    pub points: usize,
    /// Derivative bound to use instead of the computed one.
    #[arg(long)]
    pub bound: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DiagonalArgs {
    #[arg(long, default_value_t = 8)]
    pub t: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}
