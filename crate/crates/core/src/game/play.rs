//! Match simulation between pluggable controllers.

use serde::Serialize;

use super::solver::{GameTable, Move};
use super::{Position, Side};
use crate::domination::{delta_k_with_limit, DEFAULT_WORK_LIMIT};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SplitMix64;

/// Chooses cop placements and moves. Moves list one destination per cop,
/// aligned with the sorted `cops` slice passed in.
pub trait CopController {
    fn place(&mut self, g: &Graph, k: usize, rng: &mut SplitMix64) -> Result<Vec<usize>>;
    fn step(&mut self, g: &Graph, cops: &[usize], robber: usize, rng: &mut SplitMix64)
        -> Result<Vec<usize>>;
}

pub trait RobberController {
    fn place(&mut self, g: &Graph, cops: &[usize], rng: &mut SplitMix64) -> Result<usize>;
    /// `previous` holds the cops before their latest move; equal to `cops` when all passed.
    fn step(
        &mut self,
        g: &Graph,
        cops: &[usize],
        previous: &[usize],
        robber: usize,
        rng: &mut SplitMix64,
    ) -> Result<usize>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Round {
    pub cops: Vec<usize>,
    /// `None` when the cops captured before the robber could reply.
    pub robber: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MatchOutcome {
    /// Capture during round `0` (placement) or during the given cop round.
    Captured(usize),
    Survived(usize),
    /// A controller failed or proposed an illegal move.
    Fault { round: usize, side: Side, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchTrace {
    pub cop_start: Vec<usize>,
    pub robber_start: Option<usize>,
    pub rounds: Vec<Round>,
    pub outcome: MatchOutcome,
}

/// Plays cops against robber: placements, then up to `max_rounds` rounds of
/// cop move followed by robber move. Every move is checked against the
/// mover's closed neighbourhood.
pub fn play_match(
    g: &Graph,
    k: usize,
    cops_ctl: &mut dyn CopController,
    robber_ctl: &mut dyn RobberController,
    max_rounds: usize,
    seed: u64,
) -> Result<MatchTrace> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut trace = MatchTrace {
        cop_start: Vec::new(),
        robber_start: None,
        rounds: Vec::new(),
        outcome: MatchOutcome::Survived(max_rounds),
    };
    let fault = |round, side, reason: String| MatchOutcome::Fault { round, side, reason };

    let mut cops = match cops_ctl.place(g, k, &mut rng) {
        Ok(c) if c.len() != k => {
            trace.outcome = fault(0, Side::Cops, format!("placed {} cops, expected {k}", c.len()));
            return Ok(trace);
        }
        Ok(c) if c.iter().any(|&v| v >= g.n()) => {
            trace.outcome = fault(0, Side::Cops, format!("placement {c:?} out of range"));
            return Ok(trace);
        }
        Ok(mut c) => {
            c.sort_unstable();
            c
        }
        Err(e) => {
            trace.outcome = fault(0, Side::Cops, e.to_string());
            return Ok(trace);
        }
    };
    trace.cop_start = cops.clone();

    let mut robber = match robber_ctl.place(g, &cops, &mut rng) {
        Ok(r) if r < g.n() => r,
        Ok(r) => {
            trace.outcome = fault(0, Side::Robber, format!("placement {r} out of range"));
            return Ok(trace);
        }
        Err(e) => {
            trace.outcome = fault(0, Side::Robber, e.to_string());
            return Ok(trace);
        }
    };
    trace.robber_start = Some(robber);
    if cops.contains(&robber) {
        trace.outcome = MatchOutcome::Captured(0);
        return Ok(trace);
    }

    for round in 1..=max_rounds {
        let dest = match cops_ctl.step(g, &cops, robber, &mut rng) {
            Ok(d) => d,
            Err(e) => {
                trace.outcome = fault(round, Side::Cops, e.to_string());
                return Ok(trace);
            }
        };
        if dest.len() != cops.len()
            || cops.iter().zip(&dest).any(|(&c, &d)| d >= g.n() || !g.closed_neighbors(c).contains(d))
        {
            trace.outcome = fault(round, Side::Cops, format!("illegal move {cops:?} -> {dest:?}"));
            return Ok(trace);
        }
        let previous = std::mem::replace(&mut cops, dest);
        cops.sort_unstable();
        if cops.contains(&robber) {
            trace.rounds.push(Round { cops, robber: None });
            trace.outcome = MatchOutcome::Captured(round);
            return Ok(trace);
        }

        let next = match robber_ctl.step(g, &cops, &previous, robber, &mut rng) {
            Ok(r) => r,
            Err(e) => {
                trace.rounds.push(Round { cops, robber: None });
                trace.outcome = fault(round, Side::Robber, e.to_string());
                return Ok(trace);
            }
        };
        if next >= g.n() || !g.closed_neighbors(robber).contains(next) {
            trace.rounds.push(Round { cops, robber: None });
            trace.outcome = fault(round, Side::Robber, format!("illegal move {robber} -> {next}"));
            return Ok(trace);
        }
        robber = next;
        let captured = cops.contains(&robber);
        trace.rounds.push(Round { cops: cops.clone(), robber: Some(robber) });
        if captured {
            trace.outcome = MatchOutcome::Captured(round);
            return Ok(trace);
        }
    }
    Ok(trace)
}

/// Cops playing the solved table.
pub struct OptimalCops<'a> {
    pub table: &'a GameTable,
}

impl CopController for OptimalCops<'_> {
    fn place(&mut self, _g: &Graph, _k: usize, _rng: &mut SplitMix64) -> Result<Vec<usize>> {
        Ok(match self.table.winning_placement() {
            Some((c, _)) => c,
            None => self.table.best_losing_placement(),
        })
    }

    fn step(&mut self, g: &Graph, cops: &[usize], robber: usize, _rng: &mut SplitMix64) -> Result<Vec<usize>> {
        let p = Position::new(g, cops.to_vec(), robber, Side::Cops)?;
        match self.table.optimal_move(g, &p)? {
            Move::Cops(d) => Ok(d),
            Move::Robber(_) => unreachable!("cops to move"),
        }
    }
}

/// Robber playing the solved table.
pub struct OptimalRobber<'a> {
    pub table: &'a GameTable,
}

impl RobberController for OptimalRobber<'_> {
    fn place(&mut self, _g: &Graph, cops: &[usize], _rng: &mut SplitMix64) -> Result<usize> {
        self.table.robber_placement(cops)
    }

    fn step(
        &mut self,
        g: &Graph,
        cops: &[usize],
        _previous: &[usize],
        robber: usize,
        _rng: &mut SplitMix64,
    ) -> Result<usize> {
        let p = Position::new(g, cops.to_vec(), robber, Side::Robber)?;
        match self.table.optimal_move(g, &p)? {
            Move::Robber(r) => Ok(r),
            Move::Cops(_) => unreachable!("robber to move"),
        }
    }
}

/// Cops sitting on a `k`-element dominating set; the lowest cop adjacent to the
/// robber steps onto it.
#[derive(Debug, Default)]
pub struct DominatingSetCops;

impl CopController for DominatingSetCops {
    fn place(&mut self, g: &Graph, k: usize, _rng: &mut SplitMix64) -> Result<Vec<usize>> {
        let d = delta_k_with_limit(g, k.min(g.n()), DEFAULT_WORK_LIMIT)?;
        if d.value != 0 {
            return Err(Error::InvalidParameter(format!("no dominating set of size {k}")));
        }
        let mut c = d.witness.to_vec();
        // k > n: stack the spare cops on the lowest vertex
        c.resize(k, c[0]);
        Ok(c)
    }

    fn step(&mut self, g: &Graph, cops: &[usize], robber: usize, _rng: &mut SplitMix64) -> Result<Vec<usize>> {
        let mut dest = cops.to_vec();
        if let Some(i) = cops.iter().position(|&c| g.closed_neighbors(c).contains(robber)) {
            dest[i] = robber;
        }
        Ok(dest)
    }
}

/// Cops moving uniformly at random within their closed neighbourhoods.
#[derive(Debug, Default)]
pub struct RandomCops;

impl CopController for RandomCops {
    fn place(&mut self, g: &Graph, k: usize, rng: &mut SplitMix64) -> Result<Vec<usize>> {
        Ok((0..k).map(|_| rng.below(g.n() as u64) as usize).collect())
    }

    fn step(&mut self, g: &Graph, cops: &[usize], _robber: usize, rng: &mut SplitMix64) -> Result<Vec<usize>> {
        Ok(cops
            .iter()
            .map(|&c| {
                let opts = g.closed_neighbors(c).to_vec();
                opts[rng.below(opts.len() as u64) as usize]
            })
            .collect())
    }
}

/// Replays a fixed placement and move list; passes once the script runs out.
#[derive(Debug, Clone)]
pub struct ScriptedCops {
    pub placement: Vec<usize>,
    pub moves: Vec<Vec<usize>>,
    next: usize,
}

impl ScriptedCops {
    pub fn new(placement: Vec<usize>, moves: Vec<Vec<usize>>) -> Self {
        ScriptedCops { placement, moves, next: 0 }
    }
}

impl CopController for ScriptedCops {
    fn place(&mut self, _g: &Graph, _k: usize, _rng: &mut SplitMix64) -> Result<Vec<usize>> {
        Ok(self.placement.clone())
    }

    fn step(&mut self, _g: &Graph, cops: &[usize], _robber: usize, _rng: &mut SplitMix64) -> Result<Vec<usize>> {
        let m = self.moves.get(self.next).cloned().unwrap_or_else(|| cops.to_vec());
        self.next += 1;
        Ok(m)
    }
}

#[derive(Debug, Clone)]
pub struct ScriptedRobber {
    pub placement: usize,
    pub moves: Vec<usize>,
    next: usize,
}

impl ScriptedRobber {
    pub fn new(placement: usize, moves: Vec<usize>) -> Self {
        ScriptedRobber { placement, moves, next: 0 }
    }
}

impl RobberController for ScriptedRobber {
    fn place(&mut self, _g: &Graph, _cops: &[usize], _rng: &mut SplitMix64) -> Result<usize> {
        Ok(self.placement)
    }

    fn step(
        &mut self,
        _g: &Graph,
        _cops: &[usize],
        _previous: &[usize],
        robber: usize,
        _rng: &mut SplitMix64,
    ) -> Result<usize> {
        let m = self.moves.get(self.next).copied().unwrap_or(robber);
        self.next += 1;
        Ok(m)
    }
}
