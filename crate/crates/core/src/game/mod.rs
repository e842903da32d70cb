//! Exact solution of the `k`-cop pursuit game.

mod play;
mod solver;

pub use play::{
    play_match, CopController, DominatingSetCops, MatchOutcome, MatchTrace, OptimalCops,
    OptimalRobber, RandomCops, RobberController, Round, ScriptedCops, ScriptedRobber,
};
pub use solver::{
    cop_number, cop_number_with, is_k_cop_win, is_k_cop_win_with, solve_game, solve_game_with,
    CopNumber, GameTable, Move, SolveOptions, Status, DEFAULT_STATE_BUDGET,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Cops,
    Robber,
}

/// A game state. Cops form a sorted multiset; several cops may share a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Position {
    cops: Vec<usize>,
    pub robber: usize,
    pub to_move: Side,
}

impl Position {
    pub fn new(g: &Graph, mut cops: Vec<usize>, robber: usize, to_move: Side) -> Result<Self> {
        if cops.is_empty() {
            return Err(Error::InvalidParameter("at least one cop is required".into()));
        }
        for &c in &cops {
            g.check_vertex(c)?;
        }
        g.check_vertex(robber)?;
        cops.sort_unstable();
        Ok(Position { cops, robber, to_move })
    }

    pub fn cops(&self) -> &[usize] {
        &self.cops
    }

    pub fn is_capture(&self) -> bool {
        self.cops.contains(&self.robber)
    }
}
