//! Robber strategies that certify lower bounds on the cop number.
//!
//! Each certificate is sufficient only: a `true` verdict means the matching
//! robber controller never loses with `k` cops; `false` carries no claim.

mod escape;
mod evasion;
mod greedy;

pub use escape::{escape_vertex, escape_vertex_within, EscapeMode};
pub use evasion::{
    dangerous_vertices, dangerous_vertices_with_limit, evasion_certificate,
    evasion_certificate_with_limit, evasion_robber_move, safe_vertices, DangerReport, EvasionRobber,
};
pub use greedy::{
    greedy_escape_certificate, greedy_escape_certificate_with_limit, greedy_robber_move,
    GreedyContext, GreedyRobber,
};

use serde::Serialize;

use crate::graph::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    GreedyEscape,
    Evasion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// Lowest `(S, v)` satisfying every escape condition, when one exists.
    Greedy { s: Option<VertexSet>, v: Option<usize> },
    Evasion { q: usize, dangerous: usize, delta_k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub k: usize,
    pub verdict: bool,
    pub witness: Witness,
}
