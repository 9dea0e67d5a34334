use thiserror::Error;

use crate::exactnum::AlgebraError;

#[derive(Debug, Clone, Error)]
pub enum RatMapError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("map reduces to a constant")]
    DegreeZero,
    #[error("operation needs degree at least 2, map has degree {0}")]
    DegreeTooSmall(usize),
    #[error("point is not fixed by the map")]
    NotFixed,
    #[error("period {0} is not supported (only 2 and 3)")]
    UnsupportedPeriod(usize),
    #[error("root of {0} generates an extension and tower growth is disabled")]
    UnrepresentableRoot(String),
    #[error("extension of degree {needed} exceeds the tower budget {budget}")]
    TowerBudgetExceeded { needed: usize, budget: usize },
    #[error("Mobius transformation is singular")]
    SingularMobius,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, RatMapError>;
