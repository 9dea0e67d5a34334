use std::any::Any;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A failed inversion in an extension context exposed a factorization of
/// its modulus. The factors are kept type-erased so the error stays usable
/// at every level of a tower; [`crate::exactnum::split_eval`] recovers them.
#[derive(Clone)]
pub struct SplitInfo {
    pub generator: String,
    pub left: String,
    pub right: String,
    pub(crate) factors: Arc<dyn Any + Send + Sync>,
}

impl SplitInfo {
    pub fn factors<T: 'static>(&self) -> Option<&T> {
        self.factors.downcast_ref::<T>()
    }
}

impl fmt::Debug for SplitInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SplitInfo")
            .field("generator", &self.generator)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

#[derive(Debug, Clone, Error)]
pub enum AlgebraError {
    #[error("modulus of {} splits as ({}) * ({})", .0.generator, .0.left, .0.right)]
    SplitRequired(SplitInfo),
    #[error("attempted to invert zero")]
    ZeroInversion,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("form degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("operands live in different contexts")]
    ContextMismatch,
    #[error("dynamic evaluation exceeded {0} branches")]
    BranchBudget(usize),
}
