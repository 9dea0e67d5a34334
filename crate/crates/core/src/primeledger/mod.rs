//! Budgeted factorization and the ledgers of primitive, super-primitive
//! and doubly primitive prime factors along an orbit.

mod factor;
mod ledger;

pub use factor::{
    factor, factor_biguint, is_prime, is_prime_u64, multiplicative_order, primes_up_to,
    FactorBudget, Factorization, RHO_ITERATIONS_PER_MS,
};
pub use ledger::{
    density_count, doubly_primitive_factors, fermat_order_oracle, power_persistence,
    primitive_factors, primitive_report, primitive_status, valuation, DiffLedger, LedgerEntry,
    LedgerMode, PersistenceReport, PrimitiveReport, PrimitiveStatus, ReportRow, SuperPrimitiveRow,
    TermLedger, TermPart,
};
