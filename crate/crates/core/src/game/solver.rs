use serde::Serialize;

use super::{Position, Side};
use crate::combinatorics::binomial;
use crate::domination::{domination_number, DEFAULT_WORK_LIMIT};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on `C(n+k-1, k) * n * 2` position slots.
pub const DEFAULT_STATE_BUDGET: u64 = 50_000_000;

const UNRESOLVED: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub state_budget: u64,
    /// Subset budget for the domination-number cap used by [`cop_number_with`].
    pub work_limit: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { state_budget: DEFAULT_STATE_BUDGET, work_limit: DEFAULT_WORK_LIMIT }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    CopWin,
    RobberWin,
}

/// A move for the side to move. Cop moves list one destination per cop, aligned
/// with the sorted cops of the position they were computed for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Move {
    Cops(Vec<usize>),
    Robber(usize),
}

/// Solved game: status and capture-rank of every position of `(G, k)`.
///
/// The capture-rank of a cop-win position is the number of further cop moves
/// needed to capture under optimal play by both sides.
#[derive(Clone)]
pub struct GameTable {
    graph: Graph,
    k: usize,
    /// Cop multisets indexed by colex rank, `k` entries each.
    multisets: Vec<u8>,
    /// Multiset indices in lexicographic order of the sorted tuples.
    lex: Vec<u32>,
    binom: Vec<Vec<u64>>,
    cops_rank: Vec<u32>,
    robber_rank: Vec<u32>,
}

impl std::fmt::Debug for GameTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GameTable")
            .field("n", &self.graph.n())
            .field("k", &self.k)
            .field("states", &self.state_count())
            .finish()
    }
}

pub fn solve_game(g: &Graph, k: usize) -> Result<GameTable> {
    solve_game_with(g, k, &SolveOptions::default())
}

pub fn solve_game_with(g: &Graph, k: usize, opts: &SolveOptions) -> Result<GameTable> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = g.n();
    let m = binomial((n + k - 1) as u64, k as u64);
    let needed = m.saturating_mul(n as u128).saturating_mul(2);
    if needed > opts.state_budget as u128 || needed >= UNRESOLVED as u128 {
        return Err(Error::StateBudgetExceeded { needed, budget: opts.state_budget });
    }
    let m = m as usize;

    let binom: Vec<Vec<u64>> = (0..n + k)
        .map(|a| (0..=k).map(|b| binomial(a as u64, b as u64) as u64).collect())
        .collect();
    let mut multisets = vec![0u8; m * k];
    let mut lex = Vec::with_capacity(m);
    let mut tuple = vec![0usize; k];
    loop {
        let r = rank_of(&binom, &tuple);
        for (slot, &c) in multisets[r * k..(r + 1) * k].iter_mut().zip(&tuple) {
            *slot = c as u8;
        }
        lex.push(r as u32);
        if !next_multiset(&mut tuple, n) {
            break;
        }
    }
    debug_assert_eq!(lex.len(), m);

    let successors = cop_successors(g, k, &binom, &multisets);

    let mut table = GameTable {
        graph: g.clone(),
        k,
        multisets,
        lex,
        binom,
        cops_rank: vec![UNRESOLVED; m * n],
        robber_rank: vec![UNRESOLVED; m * n],
    };
    table.retrograde(&successors);
    Ok(table)
}

/// Colex rank of a sorted multiset via the shift `c_i + i`.
fn rank_of(binom: &[Vec<u64>], sorted: &[usize]) -> usize {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &c)| binom[c + i][i + 1] as usize)
        .sum()
}

/// Advances a sorted tuple to its lexicographic successor.
fn next_multiset(t: &mut [usize], n: usize) -> bool {
    let k = t.len();
    let Some(i) = (0..k).rev().find(|&i| t[i] + 1 < n) else {
        return false;
    };
    let v = t[i] + 1;
    for x in &mut t[i..] {
        *x = v;
    }
    true
}

/// Calls `f` with every joint move (one closed-neighbourhood choice per cop),
/// in lexicographic order of the per-cop destination tuple.
fn for_each_joint_move(g: &Graph, cops: &[usize], mut f: impl FnMut(&[usize])) {
    let options: Vec<Vec<usize>> = cops.iter().map(|&c| g.closed_neighbors(c).to_vec()).collect();
    let mut idx = vec![0usize; cops.len()];
    let mut dest: Vec<usize> = options.iter().map(|o| o[0]).collect();
    loop {
        f(&dest);
        let mut i = cops.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < options[i].len() {
                dest[i] = options[i][idx[i]];
                break;
            }
            idx[i] = 0;
            dest[i] = options[i][0];
        }
    }
}

fn cop_successors(g: &Graph, k: usize, binom: &[Vec<u64>], multisets: &[u8]) -> Vec<Vec<u32>> {
    let m = multisets.len() / k;
    let mut sorted = vec![0usize; k];
    (0..m)
        .map(|i| {
            let cops: Vec<usize> = multisets[i * k..(i + 1) * k].iter().map(|&c| c as usize).collect();
            let mut out = Vec::new();
            for_each_joint_move(g, &cops, |dest| {
                sorted.copy_from_slice(dest);
                sorted.sort_unstable();
                out.push(rank_of(binom, &sorted) as u32);
            });
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect()
}

impl GameTable {
    /// Level-by-level backward induction. Cop positions of rank `r` settle the
    /// robber positions all of whose moves are now losing (rank `r`); those in
    /// turn give their cop-side predecessors rank `r + 1`. Cop moves are
    /// symmetric, so successor lists double as predecessor lists.
    fn retrograde(&mut self, successors: &[Vec<u32>]) {
        let n = self.graph.n();
        let k = self.k;
        let m = self.multisets.len() / k;
        let closed: Vec<Vec<usize>> = (0..n).map(|v| self.graph.closed_neighbors(v).to_vec()).collect();

        let mut remaining: Vec<u32> = Vec::with_capacity(m * n);
        let mut cop_frontier = Vec::new();
        let mut robber_frontier = Vec::new();
        for ci in 0..m {
            let cops = &self.multisets[ci * k..(ci + 1) * k];
            for r in 0..n {
                remaining.push(closed[r].len() as u32);
                if cops.contains(&(r as u8)) {
                    let idx = ci * n + r;
                    self.cops_rank[idx] = 0;
                    self.robber_rank[idx] = 0;
                    cop_frontier.push(idx);
                    robber_frontier.push(idx);
                }
            }
        }

        let mut level = 0u32;
        while !cop_frontier.is_empty() || !robber_frontier.is_empty() {
            for &idx in &cop_frontier {
                let (ci, x) = (idx / n, idx % n);
                for &y in &closed[x] {
                    let p = ci * n + y;
                    if self.robber_rank[p] == UNRESOLVED {
                        remaining[p] -= 1;
                        if remaining[p] == 0 {
                            self.robber_rank[p] = level;
                            robber_frontier.push(p);
                        }
                    }
                }
            }
            let mut next = Vec::new();
            for &idx in &robber_frontier {
                let (ci, y) = (idx / n, idx % n);
                for &cj in &successors[ci] {
                    let p = cj as usize * n + y;
                    if self.cops_rank[p] == UNRESOLVED {
                        self.cops_rank[p] = level + 1;
                        next.push(p);
                    }
                }
            }
            cop_frontier = next;
            robber_frontier.clear();
            level += 1;
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of position slots, `C(n+k-1, k) * n * 2`.
    pub fn state_count(&self) -> usize {
        self.cops_rank.len() * 2
    }

    pub fn multiset_count(&self) -> usize {
        self.lex.len()
    }

    pub fn cop_win_count(&self) -> usize {
        self.cops_rank
            .iter()
            .chain(&self.robber_rank)
            .filter(|&&r| r != UNRESOLVED)
            .count()
    }

    fn cops_at(&self, ci: usize) -> Vec<usize> {
        self.multisets[ci * self.k..(ci + 1) * self.k].iter().map(|&c| c as usize).collect()
    }

    fn index_of(&self, sorted: &[usize]) -> usize {
        rank_of(&self.binom, sorted)
    }

    fn check(&self, p: &Position) -> Result<usize> {
        if p.cops.len() != self.k {
            return Err(Error::PositionMismatch(format!(
                "{} cops in position, table solved for k = {}",
                p.cops.len(),
                self.k
            )));
        }
        let n = self.graph.n();
        if let Some(&v) = p.cops.iter().chain([&p.robber]).find(|&&v| v >= n) {
            return Err(Error::PositionMismatch(format!("vertex {v} outside graph on {n} vertices")));
        }
        Ok(self.index_of(&p.cops) * n + p.robber)
    }

    fn rank_at(&self, side: Side, idx: usize) -> Option<u32> {
        let r = match side {
            Side::Cops => self.cops_rank[idx],
            Side::Robber => self.robber_rank[idx],
        };
        (r != UNRESOLVED).then_some(r)
    }

    pub fn rank(&self, p: &Position) -> Result<Option<u32>> {
        let idx = self.check(p)?;
        Ok(self.rank_at(p.to_move, idx))
    }

    pub fn status(&self, p: &Position) -> Result<Status> {
        Ok(match self.rank(p)? {
            Some(_) => Status::CopWin,
            None => Status::RobberWin,
        })
    }

    /// Worst-case capture-rank over robber placements against cops placed on
    /// multiset `ci`, or `None` if some placement lets the robber win.
    fn placement_rank(&self, ci: usize) -> Option<u32> {
        let n = self.graph.n();
        let mut worst = 0;
        for r in 0..n {
            match self.cops_rank[ci * n + r] {
                UNRESOLVED => return None,
                x => worst = worst.max(x),
            }
        }
        Some(worst)
    }

    /// Cops place first, then the robber: true iff some placement wins against
    /// every robber reply.
    pub fn is_k_cop_win(&self) -> bool {
        (0..self.multiset_count()).any(|ci| self.placement_rank(ci).is_some())
    }

    /// Lexicographically smallest winning placement with the smallest worst-case
    /// capture-rank.
    pub fn winning_placement(&self) -> Option<(Vec<usize>, u32)> {
        let mut best: Option<(u32, usize)> = None;
        for &ci in &self.lex {
            if let Some(r) = self.placement_rank(ci as usize) {
                if best.is_none_or(|(b, _)| r < b) {
                    best = Some((r, ci as usize));
                }
            }
        }
        best.map(|(r, ci)| (self.cops_at(ci), r))
    }

    /// Placement used when no winning one exists: fewest robber-winning replies,
    /// ties broken lexicographically.
    pub fn best_losing_placement(&self) -> Vec<usize> {
        let n = self.graph.n();
        let mut best = (usize::MAX, 0usize);
        for &ci in &self.lex {
            let ci = ci as usize;
            let losses = (0..n).filter(|&r| self.cops_rank[ci * n + r] == UNRESOLVED).count();
            if losses < best.0 {
                best = (losses, ci);
            }
        }
        self.cops_at(best.1)
    }

    /// Robber placement against announced cops: lowest robber-winning vertex,
    /// else the lowest vertex with the largest capture-rank.
    pub fn robber_placement(&self, cops: &[usize]) -> Result<usize> {
        let p = Position::new(&self.graph, cops.to_vec(), 0, Side::Cops)?;
        let base = self.check(&p)? - p.robber;
        let n = self.graph.n();
        if let Some(r) = (0..n).find(|&r| self.cops_rank[base + r] == UNRESOLVED) {
            return Ok(r);
        }
        Ok((0..n).rev().max_by_key(|&r| self.cops_rank[base + r]).expect("n >= 1"))
    }

    /// Table-optimal move for the side to move in `p`; see [`Move`].
    ///
    /// Winning cops take the lexicographically smallest destination multiset
    /// that lowers the rank. A winning robber takes the lowest vertex that keeps
    /// the position robber-winning; a losing robber stalls by maximising rank.
    pub fn optimal_move(&self, g: &Graph, p: &Position) -> Result<Move> {
        if g != &self.graph {
            return Err(Error::PositionMismatch("graph differs from the solved graph".into()));
        }
        let idx = self.check(p)?;
        let n = self.graph.n();
        if p.is_capture() {
            return Ok(match p.to_move {
                Side::Cops => Move::Cops(p.cops.clone()),
                Side::Robber => Move::Robber(p.robber),
            });
        }
        match p.to_move {
            Side::Cops => {
                let target = self.rank_at(Side::Cops, idx).map(|r| r - 1);
                let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
                let mut sorted = vec![0usize; self.k];
                for_each_joint_move(g, &p.cops, |dest| {
                    sorted.copy_from_slice(dest);
                    sorted.sort_unstable();
                    let after = self.index_of(&sorted) * n + p.robber;
                    let ok = match target {
                        Some(t) => self.rank_at(Side::Robber, after).is_some_and(|r| r <= t),
                        None => true,
                    };
                    if ok && best.as_ref().is_none_or(|(s, _)| sorted < *s) {
                        best = Some((sorted.clone(), dest.to_vec()));
                    }
                });
                let (_, dest) = best.expect("cop-win positions have a rank-lowering move");
                Ok(Move::Cops(dest))
            }
            Side::Robber => {
                let base = idx - p.robber;
                let options = g.closed_neighbors(p.robber);
                if self.rank_at(Side::Robber, idx).is_none() {
                    let r = options
                        .iter()
                        .find(|&r| self.cops_rank[base + r] == UNRESOLVED)
                        .expect("robber-win positions have a robber-win successor");
                    return Ok(Move::Robber(r));
                }
                let r = options
                    .iter()
                    .fold(None::<(u32, usize)>, |acc, r| {
                        let rank = self.cops_rank[base + r];
                        match acc {
                            Some((b, _)) if b >= rank => acc,
                            _ => Some((rank, r)),
                        }
                    })
                    .expect("closed neighbourhood is nonempty")
                    .1;
                Ok(Move::Robber(r))
            }
        }
    }
}

pub fn is_k_cop_win(g: &Graph, k: usize) -> Result<bool> {
    is_k_cop_win_with(g, k, &SolveOptions::default())
}

pub fn is_k_cop_win_with(g: &Graph, k: usize, opts: &SolveOptions) -> Result<bool> {
    Ok(solve_game_with(g, k, opts)?.is_k_cop_win())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CopNumber {
    pub value: usize,
    /// Smallest `k` with a `k`-element dominating set; an upper bound on `value`.
    pub domination_number: usize,
}

pub fn cop_number(g: &Graph) -> Result<CopNumber> {
    cop_number_with(g, &SolveOptions::default())
}

/// Ascending search from `k = 1`, capped by the domination number.
pub fn cop_number_with(g: &Graph, opts: &SolveOptions) -> Result<CopNumber> {
    let gamma = domination_number(g, opts.work_limit)?.k;
    for k in 1..gamma {
        if is_k_cop_win_with(g, k, opts)? {
            return Ok(CopNumber { value: k, domination_number: gamma });
        }
    }
    Ok(CopNumber { value: gamma, domination_number: gamma })
}
