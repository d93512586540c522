//! Exact-arithmetic workbench for q-series identities.
//!
//! The crate expands both sides of Rogers–Ramanujan-type identities as
//! truncated Laurent series over exact rationals and compares coefficients
//! through a configurable order. Everything is certified: series track the
//! largest exponent they can prove, sums carry formal-convergence
//! certificates, and partition statements are checked against brute-force
//! enumeration.

pub mod catalog;
pub mod coeff;
pub mod dsl;
pub mod error;
pub mod forms;
pub mod monomial;
pub mod partitions;
pub mod pochhammer;
pub mod series;
pub mod sums;
