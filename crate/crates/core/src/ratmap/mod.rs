//! Rational maps as values: normalization, iteration, conjugation, and the
//! fixed-point, ramification and periodic-point algebra built on them.

mod error;
mod fixed;
mod map;
mod parse;
mod period;

pub use error::{RatMapError, Result};
pub use fixed::{
    critical_point_count, delta_form, fixed_points, multiplier, root_loci, totally_ramified_points,
    FixedPointRecord, Locus, Multiplier,
};
pub use map::{FormPair, Mobius, ProjPoint, RationalMap};
pub use parse::{
    parse_field_decl, parse_fraction, parse_map, parse_map_in, parse_point, parse_rational_map,
    AlgebraicContext, AnyMap,
};
pub use period::{
    exact_period_form, find_marginal_preperiodic, has_exact_period_point, ExactPeriod, Marginal,
    SearchOptions, DEFAULT_TOWER_BUDGET,
};

use crate::exactnum::{BiForm, Field};

/// Distinct linear factors of a nonzero form over an algebraic closure.
pub fn distinct_linear_factor_count<K: Field>(f: &BiForm<K>) -> Result<usize> {
    Ok(f.distinct_linear_factor_count()?)
}
