use thiserror::Error;

use crate::engine::RunStats;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    /// The complex cannot serve as a game position (no empty face).
    #[error("invalid position: {0}")]
    InvalidPosition(String),

    /// A reduction's hypotheses do not hold for this input.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("memo table limit of {limit} entries exceeded after {} positions visited", stats.positions_visited)]
    MemoLimit { limit: usize, stats: RunStats },

    #[error("memo table belongs to valuation `{table}`, not `{requested}`")]
    ValuationMismatch {
        table: &'static str,
        requested: &'static str,
    },

    /// The request is outside what exhaustive computation can handle.
    #[error("refused: {0}")]
    Refused(String),
}
