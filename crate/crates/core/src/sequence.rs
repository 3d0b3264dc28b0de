//! Triangular numbers `T_s = s(s+1)/2` and the product sequence
//! `A_n = T_1 T_2 ... T_(n-1) = (n-1)! n! / 2^(n-1)` (OEIS A006472).

use std::io::Write;

use crate::bignat::BigNat;
use crate::error::{Error, Result};

pub const DEFAULT_TERM_LIMIT: u64 = 10_000;

const TRIANGULAR_INDEX_BOUND: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangularNumber {
    pub index: u64,
    pub value: u64,
}

/// `T_s` for `1 <= s < 2^31`.
pub fn triangular(s: u64) -> Result<TriangularNumber> {
    if s == 0 || s >= TRIANGULAR_INDEX_BOUND {
        return Err(Error::domain(format!(
            "triangular index {s} outside [1, 2^31)"
        )));
    }
    let value = s as u128 * (s as u128 + 1) / 2;
    if value >= 1u128 << 63 {
        return Err(Error::domain(format!("T_{s} does not fit below 2^63")));
    }
    Ok(TriangularNumber {
        index: s,
        value: value as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTerm {
    pub index: u64,
    pub value: BigNat,
}

/// `n!` as an exact running product.
pub fn factorial(n: u64) -> BigNat {
    let mut acc = BigNat::one();
    for k in 2..=n {
        acc.mul_small_assign(k);
    }
    acc
}

/// Generates exact terms of `A_n`, refusing indices above `limit`.
#[derive(Clone, Copy, Debug)]
pub struct Generator {
    limit: u64,
}

impl Default for Generator {
    fn default() -> Self {
        Generator {
            limit: DEFAULT_TERM_LIMIT,
        }
    }
}

impl Generator {
    pub fn with_limit(limit: u64) -> Self {
        Generator { limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn check(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::domain("sequence indices start at 1"));
        }
        if n > self.limit {
            return Err(Error::ResourceLimit {
                what: "sequence index",
                requested: n,
                limit: self.limit,
            });
        }
        Ok(())
    }

    /// `A_n` as the running product `T_1 ... T_(n-1)`.
    pub fn term_product(&self, n: u64) -> Result<SequenceTerm> {
        self.check(n)?;
        let mut value = BigNat::one();
        for j in 1..n {
            value.mul_small_assign(triangular(j)?.value);
        }
        Ok(SequenceTerm { index: n, value })
    }

    /// `A_n` from the closed form `(n-1)! n! / 2^(n-1)`.
    pub fn term_closed(&self, n: u64) -> Result<SequenceTerm> {
        self.check(n)?;
        let lower = factorial(n - 1);
        let upper = lower.mul_small(n);
        let value = lower.mul(&upper).shr_exact(n - 1)?;
        Ok(SequenceTerm { index: n, value })
    }

    /// Terms `A_lo ..= A_hi` in order. The first term comes from the closed
    /// form and each later one from `A_(k+1) = A_k T_k`.
    pub fn terms(&self, lo: u64, hi: u64) -> Result<Terms> {
        if lo > hi {
            return Err(Error::domain(format!("empty range {lo}:{hi}")));
        }
        self.check(lo)?;
        self.check(hi)?;
        Ok(Terms {
            next: Some(self.term_closed(lo)?),
            hi,
        })
    }

    /// Writes `A_lo ..= A_hi` in b-file format, one `"n A_n\n"` line per term.
    /// Returns the number of lines written.
    pub fn export_bfile<W: Write + ?Sized>(&self, lo: u64, hi: u64, sink: &mut W) -> Result<u64> {
        let mut lines = 0;
        for term in self.terms(lo, hi)? {
            writeln!(sink, "{} {}", term.index, term.value)?;
            lines += 1;
        }
        sink.flush()?;
        Ok(lines)
    }
}

pub struct Terms {
    next: Option<SequenceTerm>,
    hi: u64,
}

impl Iterator for Terms {
    type Item = SequenceTerm;

    fn next(&mut self) -> Option<SequenceTerm> {
        let current = self.next.take()?;
        if current.index < self.hi {
            let t = triangular(current.index).expect("index below the term limit").value;
            self.next = Some(SequenceTerm {
                index: current.index + 1,
                value: current.value.mul_small(t),
            });
        }
        Some(current)
    }
}
