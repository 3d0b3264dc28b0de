//! Schulte's criterion: for `n > 1`, `n` divides `E(n) = 2 A_(n-1) + 4`
//! exactly when `n` is prime.
//!
//! `E(n) mod n` is computed two ways. The fast route multiplies the
//! triangular numbers `T_1 .. T_(n-2)` modulo `n`; each `T_j` is formed
//! exactly before reduction, so no division by 2 happens modulo an even `n`.
//! The exact route builds `A_(n-1)` as a big integer and reduces it.
//!
//! For composite `n` the residue is always 4, except at `n = 4` where
//! `E(4) = 10` leaves 2.

mod oracles;
pub(crate) mod range;

pub use oracles::{
    factorial_mod, fermat_test, fermat_test_detailed, gcd, mul_mod, pow_mod, trial_division,
    wilson_test, FermatOutcome, DEFAULT_FERMAT_BASES,
};
pub use range::{verify_range, RangeReport, ResidueDisagreement, VerifyOptions};

use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::Generator;

pub const DEFAULT_EXACT_LIMIT: u64 = 5000;

const FAST_BOUND: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Strategy {
    Fast,
    Exact,
    Both,
}

impl Strategy {
    pub fn needs_exact(self) -> bool {
        matches!(self, Strategy::Exact | Strategy::Both)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Fast => "fast",
            Strategy::Exact => "exact",
            Strategy::Both => "both",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    PrimeByCriterion,
    CompositeByCriterion,
}

impl Classification {
    pub fn from_residue(residue: u64) -> Self {
        if residue == 0 {
            Classification::PrimeByCriterion
        } else {
            Classification::CompositeByCriterion
        }
    }

    pub fn is_prime(self) -> bool {
        self == Classification::PrimeByCriterion
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::PrimeByCriterion => "prime",
            Classification::CompositeByCriterion => "composite",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CriterionVerdict {
    pub n: u64,
    /// `E(n) mod n`.
    pub residue: u64,
    pub classification: Classification,
    /// Primality according to trial division.
    pub oracle_prime: bool,
    pub agree: bool,
}

impl CriterionVerdict {
    pub fn new(n: u64, residue: u64, oracle_prime: bool) -> Self {
        let classification = Classification::from_residue(residue);
        CriterionVerdict {
            n,
            residue,
            classification,
            oracle_prime,
            agree: classification.is_prime() == oracle_prime,
        }
    }

    /// `n,residue,classification,oracle_prime,agree`
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n, self.residue, self.classification, self.oracle_prime, self.agree
        )
    }
}

fn check_fast_domain(n: u64) -> Result<()> {
    if !(2..FAST_BOUND).contains(&n) {
        return Err(Error::domain(format!("criterion needs 2 <= n < 2^31, got {n}")));
    }
    Ok(())
}

/// `(2 * prod(T_j mod n) + 4) mod n` over `j = 1 ..= n-2`, for `2 <= n < 2^31`.
pub fn residue_fast(n: u64) -> Result<u64> {
    check_fast_domain(n)?;
    let mut acc = 1 % n;
    for j in 1..n.saturating_sub(1) {
        if acc == 0 {
            break;
        }
        // j(j+1) < 2^62 for j < 2^31.
        let t = j * (j + 1) / 2;
        acc = acc * (t % n) % n;
    }
    Ok((2 * acc + 4) % n)
}

/// `E(n) mod n` given `A_(n-1) mod n`.
#[inline]
pub(crate) fn residue_from_term_mod(term_mod_n: u64, n: u64) -> u64 {
    ((2 * term_mod_n as u128 + 4) % n as u128) as u64
}

/// `E(n) mod n` from the exact big-integer `A_(n-1)`, for `2 <= n <= exact_limit`.
pub fn residue_exact(n: u64, exact_limit: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::domain(format!("criterion needs n >= 2, got {n}")));
    }
    if n > exact_limit {
        return Err(Error::ResourceLimit {
            what: "exact criterion index",
            requested: n,
            limit: exact_limit,
        });
    }
    let term = Generator::with_limit(exact_limit).term_product(n - 1)?;
    Ok(residue_from_term_mod(term.value.mod_small(n)?, n))
}

/// Fast residue plus the trial-division oracle for a single `n`.
pub fn classify(n: u64) -> Result<CriterionVerdict> {
    let residue = residue_fast(n)?;
    Ok(CriterionVerdict::new(n, residue, trial_division(n)?))
}

/// The congruences behind the prime case, evaluated for one `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeCaseCongruences {
    pub p: u64,
    /// `(p-1)! mod p`; Wilson gives `p - 1`.
    pub factorial_p_minus_1: u64,
    /// `(p-2)! mod p`; Wilson gives 1.
    pub factorial_p_minus_2: u64,
    /// `2^(p-1) mod p`; Fermat gives 1.
    pub power_of_two: u64,
    /// `2 A_(p-1) mod p`; expected `p - 4`.
    pub twice_term: u64,
}

impl PrimeCaseCongruences {
    pub fn evaluate(p: u64) -> Result<Self> {
        check_fast_domain(p)?;
        let factorial_p_minus_2 = factorial_mod(p - 2, p);
        Ok(PrimeCaseCongruences {
            p,
            factorial_p_minus_1: mul_mod(factorial_p_minus_2, p - 1, p),
            factorial_p_minus_2,
            power_of_two: pow_mod(2, p - 1, p),
            twice_term: (residue_fast(p)? + (p - 4 % p)) % p,
        })
    }

    /// All four congruences hold: `p | (p-1)!+1`, `p | (p-2)!-1`,
    /// `p | 2^(p-1)-1`, and `2 A_(p-1) = -4 (mod p)`.
    pub fn all_hold(&self) -> bool {
        let p = self.p;
        (self.factorial_p_minus_1 + 1) % p == 0
            && self.factorial_p_minus_2 == 1 % p
            && self.power_of_two == 1 % p
            && (self.twice_term + 4) % p == 0
    }
}
