//! Exact cops-and-robbers analysis on small graphs.
//!
//! * [`graph`], [`graph6`], [`domination`], [`dismantle`]: bitset graphs,
//!   neighbourhood and domination primitives, corners and dismantling.
//! * [`game`]: the `k`-cop game solved by backward induction, cop number,
//!   strategy extraction and match play.
//! * [`strategy`]: the greedy-escape and evasion robber strategies with their
//!   sufficient-condition certificates.
//! * [`experiments`] and [`formulas`]: seeded `G(n, p)` sampling, exact
//!   enumeration, Monte Carlo estimates, and the closed-form probabilities
//!   they are compared against.

pub mod combinatorics;
pub mod dismantle;
pub mod domination;
pub mod dyadic;
pub mod error;
pub mod experiments;
pub mod formulas;
pub mod game;
pub mod graph;
pub mod graph6;
pub mod rng;
pub mod strategy;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
