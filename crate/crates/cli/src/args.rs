use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "hyperellipsoid",
    version,
    about = "Uniform hyperellipsoid sampling and uniformity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a batch of points and write it as CSV, JSON or SVG.
    Sample(SampleArgs),
    /// Run uniformity tests on a freshly drawn batch.
    Check(CheckArgs),
    /// Closed-form volume, optionally cross-checked by Monte Carlo.
    Volume(VolumeArgs),
}

/// Where the ellipsoid comes from. Without any shape source the unit ball of
/// dimension `--dim` is used.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").args(["spec", "radii", "shape", "quadratic"]).multiple(false)))]
pub struct EllipsoidArgs {
    /// JSON ellipsoid spec.
    #[arg(long, value_name = "FILE.json", conflicts_with_all = ["centre", "foci", "rotation"])]
    pub spec: Option<PathBuf>,

    /// Axis radii, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub radii: Option<Vec<f64>>,

    /// Rotation applied after scaling by --radii (matrix text file).
    #[arg(long, value_name = "FILE", requires = "radii")]
    pub rotation: Option<String>,

    /// Shape factor L of x = L u + c (matrix text file, or I<n> for the identity).
    #[arg(long, value_name = "FILE")]
    pub shape: Option<String>,

    /// Quadratic form M of (x - c)^T M (x - c) <= 1 (matrix text file, or I<n>).
    #[arg(long, value_name = "FILE")]
    pub quadratic: Option<String>,

    /// Centre, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "foci"
    )]
    pub centre: Option<Vec<f64>>,

    /// JSON file holding two foci [[...], [...]]; the centre is their midpoint.
    #[arg(long, value_name = "FILE")]
    pub foci: Option<PathBuf>,

    /// Dimension of the default unit ball; checked against any other source.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Transform,
    Reject,
    Biased,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestKind {
    /// One-sample chi-square over equal-probability cells.
    Chi2,
    /// Radial Kolmogorov-Smirnov.
    Ks,
    /// Numerical density and Jacobian identities.
    Proof,
    /// Two-sample chi-square against a box-rejection batch.
    Oracle,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    #[command(flatten)]
    pub ellipsoid: EllipsoidArgs,

    #[arg(long, default_value_t = 10_000)]
    pub count: usize,

    #[arg(long, required = true)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = MethodArg::Transform)]
    pub method: MethodArg,

    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub batch: BatchArgs,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub batch: BatchArgs,

    #[arg(long, default_value_t = 0.001)]
    pub alpha: f64,

    #[arg(long, default_value_t = 4)]
    pub shells: usize,

    /// Tests to run, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [TestKind::Chi2, TestKind::Ks, TestKind::Proof])]
    pub tests: Vec<TestKind>,

    /// Random points per ellipsoid for the identity check.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct VolumeArgs {
    #[command(flatten)]
    pub ellipsoid: EllipsoidArgs,

    /// Also estimate the volume from this many box-rejection draws.
    #[arg(long, value_name = "N", requires = "seed")]
    pub mc: Option<usize>,

    #[arg(long)]
    pub seed: Option<u64>,

    #[arg(long)]
    pub out: Option<PathBuf>,
}
