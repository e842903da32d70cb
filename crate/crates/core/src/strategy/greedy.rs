//! The greedy escape strategy: the robber keeps to a vertex `v` that a fixed
//! `k`-set `S` fails to dominate, or to a position from which she can reach it.

use std::ops::ControlFlow;

use serde::Serialize;

use super::escape::{escape_candidates, EscapeMode};
use super::{Certificate, CertificateKind, Witness};
use crate::combinatorics::for_each_combination;
use crate::domination::{for_each_k_set, DEFAULT_WORK_LIMIT};
use crate::error::{Error, Result};
use crate::game::RobberController;
use crate::graph::{Graph, VertexSet};
use crate::rng::SplitMix64;

/// A `k`-set `s` together with a vertex `v` it does not dominate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GreedyContext {
    pub s: VertexSet,
    pub v: usize,
    pub k: usize,
}

impl GreedyContext {
    pub fn new(g: &Graph, s: VertexSet, v: usize) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        g.check_set(s)?;
        g.check_vertex(v)?;
        if g.closed_neighborhood_of(s).contains(v) {
            return Err(Error::InvalidParameter(format!("{v} is dominated by {s}")));
        }
        Ok(GreedyContext { s, v, k: s.len() })
    }
}

/// Destination chosen by the greedy strategy.
///
/// `current = None` asks for the initial placement. With cops on all of `S`
/// the robber goes to `v`; otherwise she picks the lowest vertex adjacent to
/// no cop in `N(v)` (no cop on `v`) or in `N^c(v) \ S` (a cop on `v`),
/// restricted to `N[current]` once the game is under way. If every cop passed,
/// she passes too.
pub fn greedy_robber_move(
    g: &Graph,
    ctx: &GreedyContext,
    cops: &[usize],
    current: Option<usize>,
    cops_passed: bool,
) -> Result<usize> {
    let occupied: VertexSet = cops.iter().collect();
    g.check_set(occupied)?;
    if let Some(cur) = current {
        g.check_vertex(cur)?;
        if cops_passed {
            return Ok(cur);
        }
    }
    let reachable = current.map_or(g.vertices(), |cur| g.closed_neighbors(cur));

    if ctx.s.is_subset(occupied) {
        return if reachable.contains(ctx.v) {
            Ok(ctx.v)
        } else {
            Err(Error::NoSafeMove(format!("cops hold S but v = {} is out of reach", ctx.v)))
        };
    }
    let watched = g.closed_neighborhood_of(occupied);
    let side = if occupied.contains(ctx.v) {
        g.non_neighbors(ctx.v).difference(ctx.s)
    } else {
        g.neighbors(ctx.v)
    };
    side.difference(watched)
        .intersection(reachable)
        .first()
        .ok_or_else(|| Error::NoSafeMove(format!("no unwatched escape from {current:?} with cops at {cops:?}")))
}

pub fn greedy_escape_certificate(g: &Graph, k: usize) -> Result<Certificate> {
    greedy_escape_certificate_with_limit(g, k, DEFAULT_WORK_LIMIT)
}

/// Searches `(S, v)` in lexicographic order for a pair where, for every proper
/// `T ⊊ S` and `U ⊆ W = V \ (S ∪ {v})` with `|T| + |U| ≤ k`, and every robber
/// vertex `w ∈ W \ U`, an escape exists both with no cop on `v` (into `N(v)`)
/// and with a cop on `v` (into `N^c(v) ∩ W`). Placement and the robber standing
/// on `v` itself need an escape with no adjacency to `w`; those are checked too.
///
/// `work_limit` bounds the number of `(T, U)` blocker sets examined.
pub fn greedy_escape_certificate_with_limit(g: &Graph, k: usize, work_limit: u64) -> Result<Certificate> {
    let n = g.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..{n}")));
    }
    let mut work = 0u64;
    let mut found: Option<(VertexSet, usize)> = None;
    let mut failure: Option<Error> = None;

    let _ = for_each_k_set(g, k, VertexSet::EMPTY, |s| {
        let undominated = g.vertices().difference(g.closed_neighborhood_of(s));
        for v in undominated {
            match escapes_everywhere(g, s, v, k, &mut work, work_limit) {
                Ok(true) => {
                    found = Some((s, v));
                    return ControlFlow::Break(());
                }
                Ok(false) => {}
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Certificate {
        kind: CertificateKind::GreedyEscape,
        k,
        verdict: found.is_some(),
        witness: Witness::Greedy { s: found.map(|f| f.0), v: found.map(|f| f.1) },
    })
}

fn escapes_everywhere(
    g: &Graph,
    s: VertexSet,
    v: usize,
    k: usize,
    work: &mut u64,
    limit: u64,
) -> Result<bool> {
    let mut sv = s;
    sv.insert(v);
    let w_set = g.vertices().difference(sv);
    let w_items = w_set.to_vec();
    let s_items = s.to_vec();

    let mut over_budget = false;
    let mut check = |blockers: VertexSet, u: VertexSet| -> ControlFlow<()> {
        *work += 1;
        if *work > limit {
            over_budget = true;
            return ControlFlow::Break(());
        }
        for mode in [EscapeMode::Neighbor, EscapeMode::NonNeighbor] {
            let cand = escape_candidates(g, v, blockers, mode, w_set);
            if cand.is_empty() {
                return ControlFlow::Break(());
            }
            for w in w_set.difference(u) {
                if cand.intersection(g.neighbors(w)).difference(VertexSet::singleton(w)).is_empty() {
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    };

    let mut ok = true;
    'outer: for t_size in 0..k {
        let mut flow = ControlFlow::Continue(());
        let _ = for_each_combination(&s_items, t_size, |t| {
            let t: VertexSet = t.iter().collect();
            for u_size in 0..=k - t_size {
                flow = for_each_combination(&w_items, u_size, |u| {
                    let u: VertexSet = u.iter().collect();
                    check(t.union(u), u)
                });
                if flow.is_break() {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            ok = false;
            break 'outer;
        }
    }
    if over_budget {
        return Err(Error::WorkBudgetExceeded { needed: *work as u128, budget: limit });
    }
    Ok(ok)
}

/// Robber controller following [`greedy_robber_move`].
#[derive(Debug, Clone)]
pub struct GreedyRobber {
    pub ctx: GreedyContext,
}

impl RobberController for GreedyRobber {
    fn place(&mut self, g: &Graph, cops: &[usize], _rng: &mut SplitMix64) -> Result<usize> {
        greedy_robber_move(g, &self.ctx, cops, None, false)
    }

    fn step(
        &mut self,
        g: &Graph,
        cops: &[usize],
        previous: &[usize],
        robber: usize,
        _rng: &mut SplitMix64,
    ) -> Result<usize> {
        greedy_robber_move(g, &self.ctx, cops, Some(robber), cops == previous)
    }
}
