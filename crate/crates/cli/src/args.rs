use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "kuniform",
    version,
    about = "Extremal constant-weight column families over GF(q)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a closed form.
    Formula(FormulaArgs),
    /// Build an extremal family and write it with a report sidecar.
    Construct(ConstructArgs),
    /// Scan every rank-r subspace for the largest admissible column set.
    Oracle(OracleArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Emit the acceptance grid as CSV.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormulaKind {
    Ex,
    Coex,
    Labeled,
    Aex,
    Downset,
    BoundWeight,
    BoundCoweight,
    LabeledBound,
    Spacecount,
    Orthogonal,
    Hamming,
    Gaussian,
}

#[derive(Args, Debug)]
pub struct FormulaArgs {
    #[arg(long, value_enum)]
    pub kind: FormulaKind,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    /// Weight of the fixed vector (spacecount).
    #[arg(long)]
    pub i: Option<u64>,
    /// Right-hand side 0 or 1 (orthogonal).
    #[arg(long)]
    pub beta: Option<u8>,
    /// Length (orthogonal) or ambient dimension (gaussian).
    #[arg(long)]
    pub n: Option<u64>,
    /// Label system as inline JSON or a path: {"q", "lists", "kappa"?, "downset"?}.
    #[arg(long)]
    pub labels: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Weight,
    Coweight,
    Labeled,
    Affine,
    DualHamming,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: ConstructKind,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub labels: Option<String>,
    /// Matrix output path; the report goes to `<stem>.report.json` beside it.
    #[arg(short, long)]
    pub output: PathBuf,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeKind {
    Weight,
    Coweight,
    Labeled,
    Downset,
    Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub mode: ModeKind,
    #[arg(long)]
    pub q: Option<u64>,
    /// Rank bound; a list `2,3` or range `2..4` sweeps.
    #[arg(long)]
    pub r: String,
    /// Weight or co-weight; a list or range sweeps.
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub labels: Option<String>,
    /// Column lengths to scan, e.g. `2,3` or `3..5` (default r..r+2).
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Enumeration budget (also read from KUNIFORM_SUBSPACE_BUDGET).
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = 64)]
    pub witness_limit: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    FieldAxioms,
    CountingLemmas,
    Recursion,
    FormulaVsOracle,
    Uniqueness,
    Construction,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Field order(s), e.g. `3` or `2,3,4`.
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long, default_value_t = 3)]
    pub max_r: usize,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Label system with kappa (recursion).
    #[arg(long)]
    pub labels: Option<String>,
    /// Ranks for the recursion, e.g. `4..5`.
    #[arg(long)]
    pub r: Option<String>,
    /// Uniqueness: `weight` or `coweight` scan.
    #[arg(long, value_enum)]
    pub mode: Option<ModeKind>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<String>,
    /// Uniqueness: expected number of nonzero rows.
    #[arg(long)]
    pub expected_support: Option<usize>,
    /// Uniqueness: compare rows up to scalar multiples instead of raw support.
    #[arg(long)]
    pub row_classes: bool,
    /// Construction: matrix file to re-verify.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Construction: report file (default: the matrix's sidecar).
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub scan: ScanArgs,
}
