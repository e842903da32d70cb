//! Corners and greedy dismantling.

use serde::Serialize;

use crate::graph::{Graph, VertexSet};

/// A corner `vertex` with the lowest-indexed `witness` satisfying `N[vertex] ⊆ N[witness]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Corner {
    pub vertex: usize,
    pub witness: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DismantlingResult {
    /// Deleted corners with their witnesses, in deletion order (original labels).
    pub order: Vec<Corner>,
    pub success: bool,
}

/// Corner of the subgraph induced by `alive`, scanning from the lowest vertex.
fn first_corner_in(g: &Graph, alive: VertexSet) -> Option<Corner> {
    alive.iter().find_map(|u| corner_witness(g, alive, u).map(|w| Corner { vertex: u, witness: w }))
}

fn corner_witness(g: &Graph, alive: VertexSet, u: usize) -> Option<usize> {
    let nu = g.closed_neighbors(u).intersection(alive);
    // any witness must lie in N[u]
    nu.iter()
        .filter(|&w| w != u)
        .find(|&w| nu.is_subset(g.closed_neighbors(w)))
}

pub fn corners(g: &Graph) -> Vec<Corner> {
    let alive = g.vertices();
    (0..g.n())
        .filter_map(|u| corner_witness(g, alive, u).map(|w| Corner { vertex: u, witness: w }))
        .collect()
}

/// Repeatedly deletes the lowest-indexed corner. Deleting any corner preserves
/// (non-)dismantlability, so the greedy order decides the question exactly.
pub fn dismantling_order(g: &Graph) -> DismantlingResult {
    let mut alive = g.vertices();
    let mut order = Vec::with_capacity(g.n().saturating_sub(1));
    while alive.len() > 1 {
        match first_corner_in(g, alive) {
            Some(c) => {
                alive.remove(c.vertex);
                order.push(c);
            }
            None => return DismantlingResult { order, success: false },
        }
    }
    DismantlingResult { order, success: true }
}

/// Replays `order` on `g`, checking each deletion is a corner at its step.
pub fn validate_order(g: &Graph, order: &[Corner]) -> bool {
    let mut alive = g.vertices();
    for c in order {
        if c.vertex == c.witness || !alive.contains(c.vertex) || !alive.contains(c.witness) {
            return false;
        }
        let nu = g.closed_neighbors(c.vertex).intersection(alive);
        let nw = g.closed_neighbors(c.witness).intersection(alive);
        if !nu.is_subset(nw) {
            return false;
        }
        alive.remove(c.vertex);
    }
    true
}
