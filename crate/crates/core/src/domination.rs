//! Neighbourhood and domination primitives.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default cap on the number of subsets an exhaustive search may visit.
pub const DEFAULT_WORK_LIMIT: u64 = 1 << 28;

/// The partition of `V` induced by a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Neighborhoods {
    pub open: VertexSet,
    pub closed: VertexSet,
    pub non: VertexSet,
}

pub fn neighborhoods(g: &Graph, v: usize) -> Result<Neighborhoods> {
    g.check_vertex(v)?;
    Ok(Neighborhoods {
        open: g.neighbors(v),
        closed: g.closed_neighbors(v),
        non: g.non_neighbors(v),
    })
}

/// `N^c(S)`: vertices dominated by no member of `s`.
pub fn common_non_neighborhood(g: &Graph, s: VertexSet) -> Result<VertexSet> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    g.check_set(s)?;
    Ok(g.vertices().difference(g.closed_neighborhood_of(s)))
}

pub fn is_dominating_set(g: &Graph, s: VertexSet) -> Result<bool> {
    g.check_set(s)?;
    Ok(g.closed_neighborhood_of(s) == g.vertices())
}

/// Minimum of `|N^c(S)|` over `k`-sets together with the first minimiser in
/// lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeltaK {
    pub k: usize,
    pub value: usize,
    pub witness: VertexSet,
}

pub fn delta_k(g: &Graph, k: usize) -> Result<DeltaK> {
    delta_k_with_limit(g, k, DEFAULT_WORK_LIMIT)
}

/// Exhaustive `delta_k`; errors if `C(n, k)` exceeds `work_limit`.
pub fn delta_k_with_limit(g: &Graph, k: usize, work_limit: u64) -> Result<DeltaK> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={n}")));
    }
    let needed = binomial(n as u64, k as u64);
    if needed > work_limit as u128 {
        return Err(Error::WorkBudgetExceeded { needed, budget: work_limit });
    }
    let closed: Vec<VertexSet> = (0..n).map(|v| g.closed_neighbors(v)).collect();
    let full = g.vertices();
    let mut best = DeltaK { k, value: usize::MAX, witness: VertexSet::EMPTY };
    // depth-first over lexicographic k-subsets, carrying the covered set
    fn go(
        closed: &[VertexSet],
        full: VertexSet,
        start: usize,
        left: usize,
        chosen: VertexSet,
        covered: VertexSet,
        best: &mut DeltaK,
    ) -> ControlFlow<()> {
        if left == 0 {
            let missed = full.difference(covered).len();
            if missed < best.value {
                best.value = missed;
                best.witness = chosen;
                if missed == 0 {
                    return ControlFlow::Break(());
                }
            }
            return ControlFlow::Continue(());
        }
        for u in start..=closed.len() - left {
            let mut next = chosen;
            next.insert(u);
            go(closed, full, u + 1, left - 1, next, covered.union(closed[u]), best)?;
        }
        ControlFlow::Continue(())
    }
    let _ = go(&closed, full, 0, k, VertexSet::EMPTY, VertexSet::EMPTY, &mut best);
    Ok(best)
}

/// Smallest `k` with `delta_k = 0`.
pub fn domination_number(g: &Graph, work_limit: u64) -> Result<DeltaK> {
    for k in 1..=g.n() {
        let d = delta_k_with_limit(g, k, work_limit)?;
        if d.value == 0 {
            return Ok(d);
        }
    }
    unreachable!("V itself dominates")
}

/// Lowest-indexed vertex adjacent to every other vertex.
pub fn has_universal_vertex(g: &Graph) -> Option<usize> {
    let full = g.vertices();
    (0..g.n()).find(|&v| g.closed_neighbors(v) == full)
}

/// Visits the `k`-subsets of the vertices of `g` outside `exclude`.
pub(crate) fn for_each_k_set<B>(
    g: &Graph,
    k: usize,
    exclude: VertexSet,
    mut f: impl FnMut(VertexSet) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let items = g.vertices().difference(exclude).to_vec();
    for_each_combination(&items, k, |c| f(c.iter().collect()))
}
