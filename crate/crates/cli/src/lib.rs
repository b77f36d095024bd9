//! Config-driven front-end: load a workspace file, run its tasks (or a
//! single ad hoc one), and print a deterministic report.

pub mod config;
pub mod report;
pub mod tasks;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{ConfigError, ResolvedCode, TaskConfig, Workspace, WorkspaceConfig};
use report::AnalysisReport;

#[derive(Debug, Parser)]
#[command(name = "mpcode", version, about = "Matrix-product and skew-polynomial code analysis")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Workspace file (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on codewords enumerated per code.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Also write the report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every task in the config, or analyze one code.
    Analyze {
        #[arg(long)]
        code: Option<String>,
    },
    /// Bound, distance, witness and dual checks for matrix-product codes.
    Mpc {
        /// Defaults to every matrix-product code in the config.
        #[arg(long)]
        code: Option<String>,
    },
    /// Skew polynomial operations; without `--op`, the config's skew tasks.
    Skew(SkewArgs),
    /// Check the built-in worked examples.
    VerifyExamples,
    /// Randomized property suites.
    Prop {
        /// bound, dual, self-dual, division, ore or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct SkewArgs {
    /// mul, right-divmod, left-divmod, reciprocal, generator, parity, criteria or companion.
    #[arg(long)]
    pub op: Option<String>,
    #[arg(long)]
    pub left: Option<String>,
    #[arg(long)]
    pub right: Option<String>,
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long)]
    pub h: Option<String>,
    #[arg(long)]
    pub f: Option<String>,
    /// Element (literal or constant name) for `criteria`.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
}

fn load(global: &GlobalOpts, required: bool) -> Result<Workspace, ConfigError> {
    let cfg = match &global.config {
        Some(path) => WorkspaceConfig::load(path)?,
        None if required => {
            return Err(ConfigError::Invalid {
                section: "cli",
                name: "config".into(),
                reason: "this subcommand needs --config".into(),
            })
        }
        None => WorkspaceConfig::default(),
    };
    Workspace::resolve(&cfg, global.budget)
}

fn task(kind: &str) -> TaskConfig {
    TaskConfig {
        kind: kind.to_string(),
        ..Default::default()
    }
}

/// Builds the workspace and task list for a command, then runs the tasks
/// in order. Only configuration problems are errors; task failures are
/// recorded in the report.
pub fn run(cli: &Cli) -> Result<AnalysisReport, ConfigError> {
    let g = &cli.global;
    let (ws, tasks): (Workspace, Vec<TaskConfig>) = match &cli.command {
        Command::Analyze { code } => {
            let ws = load(g, true)?;
            let tasks = match code {
                Some(c) => vec![TaskConfig {
                    code: Some(c.clone()),
                    ..task("analyze")
                }],
                None => ws.tasks.clone(),
            };
            (ws, tasks)
        }
        Command::Mpc { code } => {
            let ws = load(g, true)?;
            let names: Vec<String> = match code {
                Some(c) => vec![c.clone()],
                None => ws
                    .codes
                    .iter()
                    .filter(|(_, c)| matches!(c, ResolvedCode::Mpc(_)))
                    .map(|(n, _)| n.clone())
                    .collect(),
            };
            let tasks = names
                .into_iter()
                .map(|n| TaskConfig {
                    code: Some(n),
                    ..task("mpc")
                })
                .collect();
            (ws, tasks)
        }
        Command::Skew(a) => {
            let ws = load(g, true)?;
            let tasks = match &a.op {
                Some(op) => vec![TaskConfig {
                    op: Some(op.clone()),
                    left: a.left.clone(),
                    right: a.right.clone(),
                    poly: a.poly.clone(),
                    g: a.g.clone(),
                    h: a.h.clone(),
                    f: a.f.clone(),
                    a: a.a.clone(),
                    n: a.n,
                    ..task("skew")
                }],
                None => ws.tasks.iter().filter(|t| t.kind == "skew").cloned().collect(),
            };
            (ws, tasks)
        }
        Command::VerifyExamples => (load(g, false)?, vec![task("verify-examples")]),
        Command::Prop { suite, count } => {
            let t = TaskConfig {
                suite: Some(suite.clone()),
                count: Some(*count),
                ..task("prop")
            };
            (load(g, false)?, vec![t])
        }
    };
    let records = tasks
        .iter()
        .enumerate()
        .map(|(i, t)| tasks::run_task(&ws, t, i + 1, g.seed))
        .collect();
    Ok(AnalysisReport { records })
}

pub fn render(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Text => report.render_text(),
        Format::Csv => report.render_csv(),
    }
}
