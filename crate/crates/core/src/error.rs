use thiserror::Error;

/// Errors raised by graph operations, the solver and the experiment harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph has {n} vertices, at most {max} are supported")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("state budget exceeded: {needed} position slots needed, budget is {budget}")]
    StateBudgetExceeded { needed: u128, budget: u64 },

    #[error("work budget exceeded: {needed} units needed, budget is {budget}")]
    WorkBudgetExceeded { needed: u128, budget: u64 },

    #[error("no safe move for the robber: {0}")]
    NoSafeMove(String),

    #[error("position does not match the solved table: {0}")]
    PositionMismatch(String),

    #[error("{failed} of {trials} trials failed; first failure: {first}")]
    TrialsFailed {
        failed: u64,
        trials: u64,
        first: Box<Error>,
    },
}

impl Error {
    /// True for errors caused by a configured resource limit rather than bad input.
    pub fn is_limit(&self) -> bool {
        match self {
            Error::StateBudgetExceeded { .. } | Error::WorkBudgetExceeded { .. } => true,
            Error::TrialsFailed { first, .. } => first.is_limit(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
