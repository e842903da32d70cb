use std::fmt;

use copwin_core::dismantle::dismantling_order;
use copwin_core::domination::{delta_k_with_limit, domination_number};
use copwin_core::experiments::{
    enumerate_events, enumerate_labelled_with, estimate_events, sample_gnp, EnumerateOptions, EventKind,
    EventSpec, SamplerConfig, DEFAULT_ENUMERATION_CAP, MAX_ENUMERATION_CAP,
};
use copwin_core::formulas::{
    eta, kdom_first_moment, kdom_first_moment_exact, labelled_count_formula, pair_domination_bound,
    pair_domination_probability,
};
use copwin_core::game::{
    cop_number_with, play_match, solve_game_with, CopController, DominatingSetCops, MatchOutcome,
    OptimalCops, OptimalRobber, RandomCops, RobberController, SolveOptions,
};
use copwin_core::rng::derive_seed;
use copwin_core::strategy::{
    dangerous_vertices_with_limit, evasion_certificate_with_limit, greedy_escape_certificate_with_limit,
    GreedyContext, GreedyRobber, EvasionRobber, Witness,
};
use copwin_core::{graph6, Error, Graph};
use rayon::prelude::*;

use crate::report::Report;
use crate::{
    CertifyArgs, Command, CopNumberArgs, CopStrategy, DismantleArgs, DominateArgs, EnumerateArgs, EstimateArgs,
    FormulasArgs, GraphInput, Limits, MatchArgs, RobberStrategy, SampleArgs, SolveArgs, SweepArgs,
};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Input(String),
    Line { line: usize, source: Box<CliError> },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_limit() => 2,
            CliError::Line { source, .. } => source.exit_code(),
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(s) => f.write_str(s),
            CliError::Line { line, source } => write!(f, "line {line}: {source}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Solve(a) => per_graph(&a.input, |g| solve(g, a)),
        Command::Copnumber(a) => per_graph(&a.input, |g| copnumber(g, a)),
        Command::Dismantle(a) => per_graph(&a.input, |g| dismantle(g, a)),
        Command::Dominate(a) => per_graph(&a.input, |g| dominate(g, a)),
        Command::Certify(a) => per_graph(&a.input, |g| certify(g, a)),
        Command::Match(a) => per_graph(&a.input, |g| play(g, a)),
        Command::Enumerate(a) => enumerate(a),
        Command::Estimate(a) => estimate(a),
        Command::Formulas(a) => formulas(a),
        Command::Sweep(a) => sweep(a),
        Command::Sample(a) => sample(a),
    }
}

fn solve_options(l: &Limits) -> SolveOptions {
    SolveOptions { state_budget: l.state_budget, work_limit: l.work_limit }
}

fn read_graphs(input: &GraphInput) -> Result<Vec<(usize, String)>> {
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let lines: Vec<_> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim().to_string()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        if lines.is_empty() {
            return Err(CliError::Input(format!("{} contains no graphs", path.display())));
        }
        return Ok(lines);
    }
    match input.graph.as_ref().or(input.graph_flag.as_ref()) {
        Some(g) => Ok(vec![(1, g.trim().to_string())]),
        None => Err(CliError::Input("no graph given".into())),
    }
}

/// Maps `f` over every input graph in parallel, keeping input order.
fn per_graph<F>(input: &GraphInput, f: F) -> Result<Report>
where
    F: Fn(&Graph) -> Result<Report> + Sync,
{
    let graphs = read_graphs(input)?;
    let batch = input.file.is_some();
    let rows: Vec<Result<Report>> = graphs
        .par_iter()
        .map(|(line, text)| {
            let row = graph6::decode(text.as_bytes())
                .map_err(CliError::from)
                .and_then(|g| Ok(Report::row().put("graph", text).put("n", g.n()).merge(f(&g)?)));
            row.map_err(|e| if batch { CliError::Line { line: *line, source: Box::new(e) } } else { e })
        })
        .collect();
    let mut out = Report::default();
    for row in rows {
        out.push_row(row?);
    }
    Ok(out)
}

fn solve(g: &Graph, a: &SolveArgs) -> Result<Report> {
    let t = solve_game_with(g, a.k, &solve_options(&a.limits))?;
    let (placement, capture) = match t.winning_placement() {
        Some((p, rank)) => (p, Some(rank)),
        None => (t.best_losing_placement(), None),
    };
    Ok(Report::row()
        .put("k", a.k)
        .put("cop_win", t.is_k_cop_win())
        .put("positions", t.state_count())
        .put("cop_win_positions", t.cop_win_count())
        .put("placement", placement)
        .put("capture_moves", capture))
}

fn copnumber(g: &Graph, a: &CopNumberArgs) -> Result<Report> {
    let c = cop_number_with(g, &solve_options(&a.limits))?;
    Ok(Report::row().put("cop_number", c.value).put("domination_number", c.domination_number))
}

fn dismantle(g: &Graph, _a: &DismantleArgs) -> Result<Report> {
    let d = dismantling_order(g);
    let order: Vec<[usize; 2]> = d.order.iter().map(|c| [c.vertex, c.witness]).collect();
    Ok(Report::row().put("dismantlable", d.success).put("order", order))
}

fn dominate(g: &Graph, a: &DominateArgs) -> Result<Report> {
    match a.k {
        Some(k) => {
            let d = delta_k_with_limit(g, k, a.limits.work_limit)?;
            Ok(Report::row().put("k", k).put("delta_k", d.value).put("witness", d.witness))
        }
        None => {
            let d = domination_number(g, a.limits.work_limit)?;
            Ok(Report::row().put("domination_number", d.k).put("witness", d.witness))
        }
    }
}

fn certify(g: &Graph, a: &CertifyArgs) -> Result<Report> {
    let q = a.q.unwrap_or(a.k + 1);
    let greedy = greedy_escape_certificate_with_limit(g, a.k, a.limits.work_limit)?;
    let evasion = evasion_certificate_with_limit(g, a.k, q, a.limits.work_limit)?;
    let Witness::Greedy { s, v } = greedy.witness else { unreachable!("greedy witness") };
    let Witness::Evasion { dangerous, delta_k, .. } = evasion.witness else { unreachable!("evasion witness") };
    Ok(Report::row()
        .put("k", a.k)
        .put("q", q)
        .put("greedy", greedy.verdict)
        .put("greedy_s", s)
        .put("greedy_v", v)
        .put("evasion", evasion.verdict)
        .put("dangerous", dangerous)
        .put("delta_k", delta_k))
}

fn play(g: &Graph, a: &MatchArgs) -> Result<Report> {
    let seed = a.seed.expect("seed resolved before dispatch");
    let opts = solve_options(&a.limits);
    let needs_table = a.cop_strategy == CopStrategy::Optimal || a.robber_strategy == RobberStrategy::Optimal;
    let table = if needs_table { Some(solve_game_with(g, a.k, &opts)?) } else { None };

    let mut cops: Box<dyn CopController + '_> = match a.cop_strategy {
        CopStrategy::Optimal => Box::new(OptimalCops { table: table.as_ref().expect("solved") }),
        CopStrategy::Domset => Box::new(DominatingSetCops),
        CopStrategy::Random => Box::new(RandomCops),
    };
    let mut robber: Box<dyn RobberController + '_> = match a.robber_strategy {
        RobberStrategy::Optimal => Box::new(OptimalRobber { table: table.as_ref().expect("solved") }),
        RobberStrategy::Greedy => {
            let c = greedy_escape_certificate_with_limit(g, a.k, a.limits.work_limit)?;
            match c.witness {
                Witness::Greedy { s: Some(s), v: Some(v) } => {
                    Box::new(GreedyRobber { ctx: GreedyContext::new(g, s, v)? })
                }
                _ => return Err(CliError::Input(format!("graph has no greedy-escape certificate for k = {}", a.k))),
            }
        }
        RobberStrategy::Evasion => {
            let q = a.q.unwrap_or(a.k + 1);
            Box::new(EvasionRobber { report: dangerous_vertices_with_limit(g, a.k, q, a.limits.work_limit)? })
        }
    };

    let trace = play_match(g, a.k, cops.as_mut(), robber.as_mut(), a.max_rounds, seed)?;
    let (outcome, rounds, fault) = match &trace.outcome {
        MatchOutcome::Captured(r) => ("captured", *r, None),
        MatchOutcome::Survived(r) => ("survived", *r, None),
        MatchOutcome::Fault { round, side, reason } => ("fault", *round, Some(format!("{side:?}: {reason}"))),
    };
    let mut row = Report::row()
        .put("k", a.k)
        .put("seed", seed)
        .put("outcome", outcome)
        .put("rounds", rounds)
        .put("cop_start", &trace.cop_start)
        .put("robber_start", trace.robber_start)
        .put("fault", fault);
    if a.trace {
        row = row.put("trace", &trace.rounds);
    }
    Ok(row)
}

fn event(name: &str, k: usize) -> Result<EventSpec> {
    let kind: EventKind = name.parse()?;
    Ok(EventSpec::new(kind, k)?)
}

fn enumerate_options(allow_large: bool, limits: &Limits) -> EnumerateOptions {
    if allow_large {
        eprintln!("copwin: n = 7 enumerates 2^21 graphs and may take a while");
    }
    let max_n = if allow_large { MAX_ENUMERATION_CAP } else { DEFAULT_ENUMERATION_CAP };
    EnumerateOptions { max_n, solve: solve_options(limits) }
}

fn enumerate(a: &EnumerateArgs) -> Result<Report> {
    let e = event(&a.event, a.k)?;
    let c = enumerate_labelled_with(a.n, &e, &enumerate_options(a.allow_large, &a.limits))?;
    Ok(Report::row()
        .put("n", c.n)
        .put("event", e.kind)
        .put("k", e.k)
        .put("count", c.count)
        .put("total", c.total)
        .put("ratio", c.count as f64 / c.total as f64))
}

fn estimate(a: &EstimateArgs) -> Result<Report> {
    let seed = a.seed.expect("seed resolved before dispatch");
    let e = event(&a.event, a.k)?;
    let cfg = SamplerConfig::new(a.n, a.p, seed)?;
    let est = estimate_events(&cfg, &[e], a.trials, &solve_options(&a.limits))?.remove(0);
    Ok(Report::row()
        .put("n", a.n)
        .put("p", a.p)
        .put("event", e.kind)
        .put("k", e.k)
        .put("seed", seed)
        .put("trials", est.trials)
        .put("successes", est.successes)
        .put("point", est.point)
        .put("ci_low", est.ci_low)
        .put("ci_high", est.ci_high))
}

fn formulas(a: &FormulasArgs) -> Result<Report> {
    let fm = kdom_first_moment(a.n, a.k)?;
    let exact = kdom_first_moment_exact(a.n, a.k)?;
    let mut pair = Vec::new();
    let mut etas = Vec::new();
    for l in 0..a.k {
        pair.push(pair_domination_probability(a.k, l)?.to_string());
        etas.push(eta(a.k, l)?.to_string());
    }
    Ok(Report::row()
        .put("n", a.n)
        .put("k", a.k)
        .put("first_moment", fm.value)
        .put("first_moment_log2", fm.log2)
        .put("first_moment_exact", exact.to_string())
        .put("labelled_count_log2", labelled_count_formula(a.n, a.k)?)
        .put("pair_domination", pair)
        .put("pair_domination_bound", pair_domination_bound(a.k).to_string())
        .put("eta", etas))
}

fn sweep(a: &SweepArgs) -> Result<Report> {
    if a.n_min > a.n_max {
        return Err(CliError::Input(format!("empty sweep: n-min {} > n-max {}", a.n_min, a.n_max)));
    }
    if a.k == 0 || a.n_min < a.k {
        return Err(CliError::Input(format!("sweep needs 1 <= k <= n-min, got k = {}", a.k)));
    }
    if a.trials.is_none() && a.p != 0.5 {
        return Err(CliError::Input("exact sweeps enumerate G(n, 1/2); pass --trials to estimate at other p".into()));
    }
    let events = [EventSpec::k_cop_win(a.k), EventSpec::k_dom(a.k)];
    let mut out = Report::default();
    for n in a.n_min..=a.n_max {
        let (p_cw, p_dom, lo, hi) = match a.trials {
            None => {
                let t = enumerate_events(n, &events, &enumerate_options(a.allow_large, &a.limits))?;
                let p = |c: u64| c as f64 / t.total as f64;
                (p(t.counts[0]), p(t.counts[1]), p(t.counts[0]), p(t.counts[0]))
            }
            Some(trials) => {
                let seed = a.seed.expect("seed resolved before dispatch");
                let cfg = SamplerConfig::new(n, a.p, derive_seed(seed, n as u64))?;
                let est = estimate_events(&cfg, &events, trials, &solve_options(&a.limits))?;
                (est[0].point, est[1].point, est[0].ci_low, est[0].ci_high)
            }
        };
        let fm = kdom_first_moment(n, a.k)?.value;
        out.push_row(
            Report::row()
                .put("n", n)
                .put("p_kcopwin", p_cw)
                .put("p_kdom", p_dom)
                .put("first_moment", fm)
                .put("ratio_copwin_over_first_moment", p_cw / fm)
                .put("ci_low", lo)
                .put("ci_high", hi),
        );
    }
    Ok(out)
}

fn sample(a: &SampleArgs) -> Result<Report> {
    let seed = a.seed.expect("seed resolved before dispatch");
    let g = sample_gnp(&SamplerConfig::new(a.n, a.p, seed)?)?;
    Ok(Report::row()
        .put("n", a.n)
        .put("p", a.p)
        .put("seed", seed)
        .put("edges", g.edge_count())
        .put("graph", graph6::encode(&g)?))
}
