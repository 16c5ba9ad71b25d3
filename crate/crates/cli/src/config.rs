//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "delsarte",
    version,
    about = "Turán and Delsarte extremal constants on finite abelian groups and torus grids"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Directory for JSON and CSV artifacts. Nothing is written without it.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Solve one extremal problem and print its value.
    Solve(SolveArgs),
    /// Solve the discretization of a real set on several grids.
    Sweep(SweepArgs),
    /// Report the topology of a real set literal.
    CheckSet(CheckSetArgs),
    /// Test a function against the class of a problem.
    Classes(ClassesArgs),
    /// Solve on the group and on the subgroups generated by the sets.
    Reduce(ReduceArgs),
}

/// Problem description shared by the solving commands. Flags override the
/// fields of `--problem`.
#[derive(Debug, Clone, Default, Args)]
pub struct ProblemArgs {
    /// JSON problem file.
    #[arg(long, value_name = "FILE")]
    pub problem: Option<PathBuf>,

    /// Group literal such as `Z8` or `Z4xZ3 weight=1/4`.
    #[arg(long, conflicts_with = "torus")]
    pub group: Option<String>,

    /// Torus circumference L; selects the real-line path.
    #[arg(long, value_name = "L")]
    pub torus: Option<String>,

    /// Grid points on the torus.
    #[arg(long, value_name = "N")]
    pub grid: Option<u64>,

    /// `{...}` on a group, an interval union on a torus.
    #[arg(long = "omega-plus", value_name = "SET", allow_hyphen_values = true)]
    pub omega_plus: Option<String>,

    /// A set literal, `FULL` or `SAME` (the default).
    #[arg(long = "omega-minus", value_name = "SET", allow_hyphen_values = true)]
    pub omega_minus: Option<String>,

    /// `general`, `turan` or `delsarte`.
    #[arg(long)]
    pub mode: Option<String>,

    /// `float` or `exact`.
    #[arg(long)]
    pub arithmetic: Option<String>,

    /// Tolerance for class, gap and certificate checks.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,

    /// `primal` or `fourier`.
    #[arg(long, default_value = "primal")]
    pub formulation: String,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,

    /// Comma-separated grid counts.
    #[arg(long = "grid-list", value_delimiter = ',', value_name = "N1,N2,...")]
    pub grid_list: Vec<u64>,

    /// Add a wall-clock column to the table (breaks byte-for-byte reproducibility).
    #[arg(long)]
    pub runtime: bool,

    /// Write one plot-data CSV per grid into the output directory.
    #[arg(long)]
    pub figures: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CheckSetArgs {
    /// Real set literal such as `(-2,-1)u(-1,1)u(1,2)`.
    #[arg(allow_hyphen_values = true)]
    pub set: String,
}

#[derive(Debug, Clone, Args)]
pub struct ClassesArgs {
    /// Function CSV with columns `index, x0, ..., value`.
    #[arg(long, value_name = "FILE")]
    pub check: PathBuf,

    #[command(flatten)]
    pub problem: ProblemArgs,

    /// Also check the interior/closure containment chain (torus path only).
    #[arg(long)]
    pub chain: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,

    /// Print the reduced values next to the value on the whole group.
    #[arg(long)]
    pub compare: bool,
}
