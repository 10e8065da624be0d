//! `superlie`: build Lie superalgebras, evaluate invariant operators and verify
//! their identities with exact arithmetic. Reports are JSON on stdout.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "superlie",
    version,
    about = "Exact invariants of Lie superalgebras and loop algebras"
)]
pub struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect, validate or export an algebra.
    Algebra {
        #[arg(value_enum)]
        action: AlgebraAction,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Print the PBW normal form of an expression.
    Eval {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        op: OpArgs,
    },
    /// Check centrality, even-centrality or anti-invariance of an operator.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Computations on an evaluation module.
    Module {
        #[arg(value_enum)]
        action: ModuleAction,
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        module: ModuleArgs,
        /// Operator for `act`.
        #[arg(long)]
        op: Option<String>,
        /// Weight for `hwv`, comma separated values on the Cartan basis.
        #[arg(long)]
        weight: Option<String>,
        /// Order of the Gelfand invariant (`stability`, `gelfand-sum`), or the
        /// largest S_k order for `even-hwv`.
        #[arg(long)]
        k: Option<usize>,
        /// 1-based indices into the points, e.g. `1,2`, for `stability`.
        #[arg(long)]
        tuple: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// Built-in algebra: sl2, gl11, osp12 or gl:M,N.
    #[arg(long, conflicts_with = "algebra")]
    pub builtin: Option<String>,
    /// Algebra description file (JSON).
    #[arg(long)]
    pub algebra: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct OpArgs {
    /// Operator expression.
    #[arg(long, conflicts_with = "batch")]
    pub op: Option<String>,
    /// File with one expression per line; `#` starts a comment.
    #[arg(long)]
    pub batch: Option<PathBuf>,
    /// Evaluation points; binds p1..pn to the Lagrange basis.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub points: Vec<String>,
    /// Allow D[l] on gl(M,N) with M+N < 3.
    #[arg(long)]
    pub allow_small: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ModuleArgs {
    /// Tensor factors, e.g. natural,natural.
    #[arg(long, value_delimiter = ',', conflicts_with = "module")]
    pub factors: Vec<String>,
    /// Evaluation points, one per factor.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub points: Vec<String>,
    /// Module spec file: {"factors": [...], "points": [...]}.
    #[arg(long)]
    pub module: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraAction {
    Info,
    Validate,
    /// Print the algebra description document instead of a report.
    Export,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Central,
    EvenCentral,
    Anti,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleAction {
    Act,
    Weights,
    Hwv,
    Stability,
    GelfandSum,
    EvenHwv,
}

fn configure_threads() {
    if let Some(n) = std::env::var("SUPERLIE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let (report, code) = commands::run(&cli, echo);
    let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    print!("{text}");
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
