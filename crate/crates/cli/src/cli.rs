use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monochrome::ring::{RingSpec, WindowParams};

/// Search and verify monochromatic {xy} ∪ {x+f(y)} configurations over
/// finite windows of Z, Z[i] and GF(q)[x].
#[derive(Debug, Parser)]
#[command(name = "monochrome", version)]
pub struct Cli {
    /// `key = value` file supplying defaults for the subcommand's flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads for commands that can split their work.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List monochromatic pattern instances under a coloring.
    Scan(ScanArgs),
    /// Per-color sets X_y^i = {x : instance at (x, y) has color i}.
    Abundance(AbundanceArgs),
    #[command(subcommand)]
    Largeness(LargenessCommand),
    /// Least N at which every r-coloring of [t]^N has a monochromatic line.
    Hj(HjArgs),
    /// Check the σ-embedding line identity for every member of a family.
    Sigma(SigmaArgs),
    #[command(subcommand)]
    Search(SearchCommand),
    #[command(subcommand)]
    Cnf(CnfCommand),
    #[command(subcommand)]
    Ufp(UfpCommand),
    /// Merge JSON reports into one CSV table.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct ConstraintArgs {
    /// Replace the excluded y values (default: 0, 1).
    #[arg(long, value_name = "LIST")]
    pub exclude_y: Option<String>,
    /// Replace the excluded x values (default: 0).
    #[arg(long, value_name = "LIST")]
    pub exclude_x: Option<String>,
    /// Judge instances on their in-window part instead of skipping them.
    #[arg(long)]
    pub allow_outside: bool,
    /// Keep instances whose elements all coincide.
    #[arg(long)]
    pub allow_degenerate: bool,
}

/// A coloring, either loaded from a file or drawn from a seed.
#[derive(Debug, Args)]
pub struct ColoringArgs {
    #[arg(long, default_value = "Z")]
    pub ring: RingSpec,
    /// Window, e.g. N=50, N=20,signed, B=3, d=4. Taken from the file with --coloring.
    #[arg(long)]
    pub window: Option<WindowParams>,
    #[arg(long)]
    pub colors: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Coloring file to load instead of a seeded random coloring.
    #[arg(long, value_name = "FILE")]
    pub coloring: Option<PathBuf>,
    /// Polynomial family, e.g. "t" or "0; t; 2t^2+t".
    #[arg(long = "F", value_name = "FAMILY")]
    pub family: String,
    #[command(flatten)]
    pub constraints: ConstraintArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub source: ColoringArgs,
    /// Stop after this many witnesses.
    #[arg(long)]
    pub limit: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AbundanceArgs {
    #[command(flatten)]
    pub source: ColoringArgs,
    /// y values to profile (default: every admissible y in the window).
    #[arg(long, value_name = "LIST")]
    pub y: Option<String>,
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    #[arg(long, default_value = "Z")]
    pub ring: RingSpec,
    #[arg(long)]
    pub window: WindowParams,
}

#[derive(Debug, Subcommand)]
pub enum LargenessCommand {
    /// Whether G-translates of A cover the window.
    Syndetic(SyndeticArgs),
    /// Least anchor x with (G, B, x) a piecewise-syndetic witness for A.
    PsWitness(PsArgs),
    /// Random search for a finite-sums set missing A.
    Ipstar(IpstarArgs),
    /// Find a witness for A and move it by dilation or division.
    Transport(TransportArgs),
}

#[derive(Debug, Args)]
pub struct SyndeticArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Set literal: {..}, all, evens, odds or ideal(m).
    #[arg(long = "A", value_name = "SET")]
    pub a: String,
    #[arg(long = "G", value_name = "LIST")]
    pub gaps: String,
}

#[derive(Debug, Args)]
pub struct PsArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long = "A", value_name = "SET")]
    pub a: String,
    #[arg(long = "G", value_name = "LIST")]
    pub gaps: String,
    #[arg(long = "B", value_name = "LIST")]
    pub block: String,
}

#[derive(Debug, Args)]
pub struct IpstarArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long = "A", value_name = "SET")]
    pub a: String,
    /// Window the sequence entries are drawn from (default: --window).
    #[arg(long)]
    pub entries: Option<WindowParams>,
    /// Sequence length.
    #[arg(long)]
    pub len: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransportMode {
    Dilate,
    Divide,
}

#[derive(Debug, Args)]
pub struct TransportArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long = "A", value_name = "SET")]
    pub a: String,
    #[arg(long = "G", value_name = "LIST")]
    pub gaps: String,
    #[arg(long = "B", value_name = "LIST")]
    pub block: String,
    /// Element to dilate or divide by.
    #[arg(long)]
    pub scalar: String,
    #[arg(long, value_enum, default_value_t = TransportMode::Dilate)]
    pub mode: TransportMode,
}

#[derive(Debug, Args)]
pub struct HjArgs {
    #[arg(long)]
    pub colors: u32,
    /// Alphabet size t.
    #[arg(long)]
    pub alphabet: u32,
    #[arg(long = "maxN")]
    pub max_n: u32,
    /// Cap on t^N * r^(t^N) per dimension.
    #[arg(long, env = "MONOCHROME_BUDGET", default_value_t = 1 << 30)]
    pub budget: u128,
}

#[derive(Debug, Args)]
pub struct SigmaArgs {
    #[arg(long, default_value = "Z")]
    pub ring: RingSpec,
    #[arg(long = "F", value_name = "FAMILY")]
    pub family: String,
    /// Base values y_1..y_N; products give the higher y's.
    #[arg(long, value_name = "LIST")]
    pub y: String,
    /// Wildcard set, 1-based indices.
    #[arg(long, value_name = "LIST")]
    pub gamma: String,
    /// Point letters, factor 1 first (default: all 1).
    #[arg(long, value_name = "LIST")]
    pub u: Option<String>,
    #[arg(long, default_value = "0")]
    pub r0: String,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long)]
    pub colors: u32,
    #[arg(long = "F", value_name = "FAMILY")]
    pub family: String,
    #[command(flatten)]
    pub constraints: ConstraintArgs,
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// Backtracking search for a coloring with no monochromatic instance.
    Avoid(AvoidArgs),
    /// Least N such that every r-coloring of {1..N} has a monochromatic instance.
    Moreira(MoreiraArgs),
}

#[derive(Debug, Args)]
pub struct AvoidArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Node budget.
    #[arg(long, env = "MONOCHROME_BUDGET", default_value_t = 1 << 24)]
    pub budget: u64,
    /// Write the avoiding coloring here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MoreiraArgs {
    #[arg(long)]
    pub colors: u32,
    #[arg(long = "F", value_name = "FAMILY")]
    pub family: String,
    #[arg(long = "maxN")]
    pub max_n: u64,
    /// Node budget per probed N.
    #[arg(long, env = "MONOCHROME_BUDGET", default_value_t = 1 << 24)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum CnfCommand {
    /// Write the DIMACS encoding of an avoidance instance.
    Export(ExportArgs),
    /// Turn a solver model back into a coloring and validate it.
    Decode(DecodeArgs),
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Output file; without it the CNF goes to standard output.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Model file (`v` lines or one literal per line); `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub model: PathBuf,
    /// Write the decoded coloring here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum UfpCommand {
    /// Check uniqueness of finite products for a sequence.
    Verify(VerifyArgs),
    /// Grow a sequence with unique finite products from a window.
    Grow(GrowArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "Z")]
    pub ring: RingSpec,
    #[arg(long, value_name = "LIST")]
    pub seq: String,
}

#[derive(Debug, Args)]
pub struct GrowArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long)]
    pub start: String,
    /// Target length.
    #[arg(long)]
    pub m: usize,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// JSON reports written by other subcommands.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}
