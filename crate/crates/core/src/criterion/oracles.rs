//! Classical primality tests used as references for the criterion.
//!
//! Trial division is the ground truth. Wilson's test is an exact
//! characterization but costs O(n). Fermat's test is only a necessary
//! condition and never decides primality on its own.

use crate::error::{Error, Result};

pub const DEFAULT_FERMAT_BASES: [u64; 3] = [2, 3, 5];

const WORD_BOUND: u64 = 1 << 63;
const HALF_WORD_BOUND: u64 = 1 << 31;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

/// `base^exp mod m` by square-and-multiply. `m` must be nonzero.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m != 0, "modulus must be nonzero");
    if m == 1 {
        return 0;
    }
    let mut result = 1;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// True iff `n` has no divisor in `[2, sqrt(n)]`.
pub fn trial_division(n: u64) -> Result<bool> {
    if !(2..WORD_BOUND).contains(&n) {
        return Err(Error::domain(format!("trial division needs 2 <= n < 2^63, got {n}")));
    }
    if n % 2 == 0 {
        return Ok(n == 2);
    }
    let mut d = 3;
    while d <= n / d {
        if n % d == 0 {
            return Ok(false);
        }
        d += 2;
    }
    Ok(true)
}

/// `(n-1)! mod n` by a running modular product.
pub fn factorial_mod(k: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    for j in 2..=k {
        if acc == 0 {
            break;
        }
        acc = mul_mod(acc, j, n);
    }
    acc
}

/// Wilson's test: `n` is prime iff `(n-1)! + 1 = 0 (mod n)`.
pub fn wilson_test(n: u64) -> Result<bool> {
    if !(2..HALF_WORD_BOUND).contains(&n) {
        return Err(Error::domain(format!("Wilson test needs 2 <= n < 2^31, got {n}")));
    }
    Ok((factorial_mod(n - 1, n) + 1) % n == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermatOutcome {
    pub passed: bool,
    /// Bases actually exercised.
    pub tested: Vec<u64>,
    /// Bases dropped because they are outside `(1, n)` or share a factor with `n`.
    pub skipped: Vec<u64>,
}

/// Fermat test on odd `n >= 3`: `a^(n-1) = 1 (mod n)` for every usable base.
///
/// Passing is necessary for primality but not sufficient (341 passes base 2).
pub fn fermat_test_detailed(n: u64, bases: &[u64]) -> Result<FermatOutcome> {
    if n < 3 || n % 2 == 0 || n >= WORD_BOUND {
        return Err(Error::domain(format!("Fermat test needs an odd 3 <= n < 2^63, got {n}")));
    }
    let (tested, skipped): (Vec<u64>, Vec<u64>) = bases
        .iter()
        .partition(|&&a| 1 < a && a < n && gcd(a, n) == 1);
    if tested.is_empty() {
        return Err(Error::domain(format!("no usable Fermat base for n = {n}")));
    }
    let passed = tested.iter().all(|&a| pow_mod(a, n - 1, n) == 1);
    Ok(FermatOutcome {
        passed,
        tested,
        skipped,
    })
}

pub fn fermat_test(n: u64, bases: &[u64]) -> Result<bool> {
    fermat_test_detailed(n, bases).map(|o| o.passed)
}
