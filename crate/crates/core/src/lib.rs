//! Exact arithmetic dynamics of rational maps over Q and small number fields.

pub mod classify;
pub mod dec;
pub mod exactnum;
pub mod orbit;
pub mod par;
pub mod primeledger;
pub mod ratmap;
