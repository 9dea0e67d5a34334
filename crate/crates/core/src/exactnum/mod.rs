//! Exact arithmetic: rationals, univariate polynomials over a field,
//! homogeneous binary forms, and extension towers with dynamic evaluation.

mod alg;
mod biform;
mod error;
mod field;
mod poly;
pub mod zpoly;

pub use alg::{generator, lift, split_eval, AlgElem, Branches, ExtContext, SplitFactors};
pub use biform::BiForm;
pub use error::{AlgebraError, SplitInfo};
pub use field::{int, rat, rational_content, Field, Rational};
pub use poly::UniPoly;
