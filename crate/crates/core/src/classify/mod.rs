//! Membership in the exceptional families of maps, and Kisaka's catalog.

mod family;
mod kisaka;

pub use family::{
    conj_inverse_square, in_b, in_e, in_f1, in_f2, in_f3, in_t, is_infinity_two_cycle, lemma5_case,
    FamilyKind, FamilyTag, Lemma5Case,
};
pub use kisaka::{
    catalog_entry, catalog_extension, kisaka_map, kisaka_map_in, sample_params, CatalogEntry,
    CATALOG,
};

use crate::ratmap::RatMapError;

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Map(#[from] RatMapError),
    #[error("unknown catalog case '{0}'")]
    UnknownCase(String),
    #[error("{case}: expected {expected} parameter(s), got {got}")]
    ParamCount {
        case: String,
        expected: usize,
        got: usize,
    },
    #[error("{case}: parameter constraint violated: {constraint}")]
    ParamViolation { case: String, constraint: String },
    #[error("{0} has irrational coefficients; use kisaka_map")]
    NeedsExtension(String),
}
