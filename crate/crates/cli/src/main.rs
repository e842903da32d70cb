mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::{append_record, Format, RunRecord};

/// Exact cops-and-robbers solving and random-graph experiments.
///
/// Graphs are read as graph6 strings. Exit status: 0 on success, 1 on invalid
/// input, 2 when a state or work budget is exceeded.
#[derive(Debug, Parser)]
#[command(name = "copwin", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,

    /// Append a JSON line describing this run to PATH.
    #[arg(long, value_name = "PATH", env = "COPWIN_RECORD", global = true)]
    record: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
enum Command {
    /// Solve the k-cop game and report the optimal placement.
    Solve(SolveArgs),
    /// Compute the cop number.
    Copnumber(CopNumberArgs),
    /// Find a dismantling order by deleting corners.
    Dismantle(DismantleArgs),
    /// Minimum undominated count over k-sets, or the domination number without --k.
    Dominate(DominateArgs),
    /// Evaluate the greedy-escape and evasion certificates.
    Certify(CertifyArgs),
    /// Play a match between cop and robber strategies.
    Match(MatchArgs),
    /// Count labelled graphs on n vertices with an event.
    Enumerate(EnumerateArgs),
    /// Monte Carlo estimate of an event probability in G(n, p).
    Estimate(EstimateArgs),
    /// Evaluate the k-domination formulas.
    Formulas(FormulasArgs),
    /// Tabulate P(k-cop-win), P(k-dom) and the first moment over a range of n.
    Sweep(SweepArgs),
    /// Draw one G(n, p) sample and print it as graph6.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphInput {
    /// Graph in graph6 format.
    #[arg(value_name = "GRAPH6", required_unless_present_any = ["graph_flag", "file"])]
    pub graph: Option<String>,

    /// Same as the positional argument.
    #[arg(long = "graph", id = "graph_flag", value_name = "GRAPH6", conflicts_with_all = ["graph", "file"])]
    pub graph_flag: Option<String>,

    /// Read one graph6 string per line; results keep input order.
    #[arg(long, value_name = "PATH", conflicts_with = "graph")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct Limits {
    /// Largest number of game positions the solver may allocate.
    #[arg(long, default_value_t = copwin_core::game::DEFAULT_STATE_BUDGET)]
    pub state_budget: u64,

    /// Largest number of vertex subsets an exhaustive search may visit.
    #[arg(long, default_value_t = copwin_core::domination::DEFAULT_WORK_LIMIT)]
    pub work_limit: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, short)]
    pub k: usize,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args, Serialize)]
pub struct CopNumberArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args, Serialize)]
pub struct DismantleArgs {
    #[command(flatten)]
    pub input: GraphInput,
}

#[derive(Debug, Args, Serialize)]
pub struct DominateArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, short)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, short)]
    pub k: usize,
    /// Danger threshold for the evasion certificate [default: k + 1].
    #[arg(long, short)]
    pub q: Option<usize>,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CopStrategy {
    Optimal,
    Domset,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RobberStrategy {
    Optimal,
    Greedy,
    Evasion,
}

#[derive(Debug, Args, Serialize)]
pub struct MatchArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, short)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "optimal")]
    pub cop_strategy: CopStrategy,
    #[arg(long, value_enum, default_value = "optimal")]
    pub robber_strategy: RobberStrategy,
    #[arg(long, default_value_t = 1000)]
    pub max_rounds: usize,
    /// Danger threshold for the evasion robber [default: k + 1].
    #[arg(long, short)]
    pub q: Option<usize>,
    /// Random seed; a fresh one is generated and printed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Include every round in the output.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args, Serialize)]
pub struct EnumerateArgs {
    #[arg(long, short)]
    pub n: usize,
    /// kcopwin, kdom, universal or dismantlable.
    #[arg(long, short)]
    pub event: String,
    #[arg(long, short, default_value_t = 1)]
    pub k: usize,
    /// Permit n = 7 (2^21 graphs).
    #[arg(long)]
    pub allow_large: bool,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args, Serialize)]
pub struct EstimateArgs {
    #[arg(long, short)]
    pub n: usize,
    #[arg(long, short, default_value_t = 0.5)]
    pub p: f64,
    /// kcopwin, kdom, universal or dismantlable.
    #[arg(long, short)]
    pub event: String,
    #[arg(long, short, default_value_t = 1)]
    pub k: usize,
    #[arg(long, short, default_value_t = 10_000)]
    pub trials: u64,
    /// Random seed; a fresh one is generated and printed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args, Serialize)]
pub struct FormulasArgs {
    #[arg(long, short)]
    pub n: usize,
    #[arg(long, short)]
    pub k: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, short)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: usize,
    /// Estimate by Monte Carlo with this many trials per n instead of enumerating.
    #[arg(long, short)]
    pub trials: Option<u64>,
    #[arg(long, short, default_value_t = 0.5)]
    pub p: f64,
    /// Random seed for estimates; a fresh one is generated and printed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Permit exact enumeration at n = 7.
    #[arg(long)]
    pub allow_large: bool,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long, short)]
    pub n: usize,
    #[arg(long, short, default_value_t = 0.5)]
    pub p: f64,
    /// Random seed; a fresh one is generated and printed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Copnumber(_) => "copnumber",
            Command::Dismantle(_) => "dismantle",
            Command::Dominate(_) => "dominate",
            Command::Certify(_) => "certify",
            Command::Match(_) => "match",
            Command::Enumerate(_) => "enumerate",
            Command::Estimate(_) => "estimate",
            Command::Formulas(_) => "formulas",
            Command::Sweep(_) => "sweep",
            Command::Sample(_) => "sample",
        }
    }

    fn seed_slot(&mut self) -> Option<&mut Option<u64>> {
        match self {
            Command::Match(a) => Some(&mut a.seed),
            Command::Estimate(a) => Some(&mut a.seed),
            Command::Sweep(a) if a.trials.is_some() => Some(&mut a.seed),
            Command::Sample(a) => Some(&mut a.seed),
            _ => None,
        }
    }
}

fn fresh_seed() -> u64 {
    use std::hash::{BuildHasher, Hasher};
    let mut h = std::collections::hash_map::RandomState::new().build_hasher();
    h.write_u128(std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_nanos()));
    h.finish()
}

fn main() -> ExitCode {
    let mut cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(slot) = cli.command.seed_slot() {
        if slot.is_none() {
            let seed = fresh_seed();
            eprintln!("copwin: no --seed given, using --seed {seed}");
            *slot = Some(seed);
        }
    }

    let start = Instant::now();
    let report = match commands::run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("copwin: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    print!("{}", report.render(cli.format));

    if let Some(path) = &cli.record {
        let record = RunRecord {
            command: cli.command.name(),
            params: serde_json::to_value(&cli.command).expect("serializable parameters"),
            version: env!("CARGO_PKG_VERSION"),
            duration_ms: start.elapsed().as_secs_f64() * 1e3,
            result: report.to_json(),
        };
        if let Err(e) = append_record(path, &record) {
            eprintln!("copwin: cannot write record to {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::SUCCESS
}
