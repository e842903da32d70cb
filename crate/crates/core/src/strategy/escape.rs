use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Which side of `v` the escape vertex must lie on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EscapeMode {
    /// `w' ∈ N(v)`.
    Neighbor,
    /// `w' ∈ N^c(v)`, used when a cop sits on `v`.
    NonNeighbor,
}

/// Lowest `w'` on the `mode` side of `v` that is adjacent to `w`, outside
/// `{v, w} ∪ blockers`, and adjacent to no blocker.
pub fn escape_vertex(
    g: &Graph,
    v: usize,
    blockers: VertexSet,
    w: usize,
    mode: EscapeMode,
) -> Result<Option<usize>> {
    escape_vertex_within(g, v, blockers, w, mode, g.vertices())
}

/// [`escape_vertex`] restricted to candidates in `allowed`.
pub fn escape_vertex_within(
    g: &Graph,
    v: usize,
    blockers: VertexSet,
    w: usize,
    mode: EscapeMode,
    allowed: VertexSet,
) -> Result<Option<usize>> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    g.check_set(blockers)?;
    if blockers.contains(w) || blockers.contains(v) || v == w {
        return Err(Error::InvalidParameter(format!(
            "escape needs w ∉ blockers and v ∉ blockers ∪ {{w}} (v = {v}, w = {w}, blockers = {blockers})"
        )));
    }
    Ok(escape_candidates(g, v, blockers, mode, allowed)
        .intersection(g.neighbors(w))
        .difference(VertexSet::singleton(w))
        .first())
}

/// Candidates ignoring `w`: the `mode` side of `v`, minus `N[blockers]`.
#[inline]
pub(crate) fn escape_candidates(
    g: &Graph,
    v: usize,
    blockers: VertexSet,
    mode: EscapeMode,
    allowed: VertexSet,
) -> VertexSet {
    let side = match mode {
        EscapeMode::Neighbor => g.neighbors(v),
        EscapeMode::NonNeighbor => g.non_neighbors(v),
    };
    side.intersection(allowed).difference(g.closed_neighborhood_of(blockers))
}
