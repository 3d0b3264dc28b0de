//! Schulte's primality criterion and the number theory around it.
//!
//! `A_n = T_1 T_2 ... T_(n-1)` is the product of the first `n - 1` triangular
//! numbers (OEIS A006472). For every `n > 1`, `n` divides `2 A_(n-1) + 4`
//! exactly when `n` is prime. This crate evaluates that criterion, checks it
//! against trial division, Wilson's test, and Fermat's test, and provides the
//! p-adic valuation tools used to reason about it.

pub mod bignat;
pub mod cli;
pub mod criterion;
pub mod error;
mod parallel;
pub mod sequence;
pub mod valuation;

pub use bignat::BigNat;
pub use criterion::{classify, residue_exact, residue_fast, verify_range, CriterionVerdict, RangeReport, Strategy};
pub use error::{Error, Result};
pub use valuation::{PrimeBase, Valuation};
