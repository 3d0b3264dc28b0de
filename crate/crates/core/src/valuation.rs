//! p-adic valuations of integers and factorials.
//!
//! `v_p(n!)` is available through three independent routes: Legendre's sum of
//! floors, the floor-division recurrence, and the base-`p` digit-sum identity
//! `(n - s_p(n)) / (p - 1)`. They must agree everywhere; the test suites rely
//! on that to cross-check each other.

use std::fmt;

use crate::error::{Error, Result};

/// A prime number used as the base of a valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeBase(u64);

impl PrimeBase {
    pub const TWO: PrimeBase = PrimeBase(2);

    /// Validates `p` by trial division up to `sqrt(p)`.
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::domain(format!("{p} is not a prime base (must be >= 2)")));
        }
        let mut d = 2u64;
        while d <= p / d {
            if p % d == 0 {
                return Err(Error::domain(format!("{p} is not prime (divisible by {d})")));
            }
            d += 1;
        }
        Ok(PrimeBase(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for PrimeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<u64> for PrimeBase {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        PrimeBase::new(p)
    }
}

/// The exponent `v_p(x)` of the largest power of `p` dividing some `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Valuation {
    pub base: PrimeBase,
    pub exponent: u64,
}

impl Valuation {
    pub fn new(base: PrimeBase, exponent: u64) -> Self {
        Valuation { base, exponent }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v_{}={}", self.base, self.exponent)
    }
}

/// `v_p(x)` by repeated division. `x = 0` is rejected: its valuation is not a
/// finite exponent.
pub fn valuation_of(p: PrimeBase, x: u64) -> Result<Valuation> {
    if x == 0 {
        return Err(Error::domain("valuation of zero is undefined"));
    }
    let p = p.get();
    let mut x = x;
    let mut exponent = 0;
    while x % p == 0 {
        x /= p;
        exponent += 1;
    }
    Ok(Valuation::new(PrimeBase(p), exponent))
}

/// `v_p(a / b)` for an exact divisor `b | a`, computed on the quotient.
///
/// Equals `v_p(a) - v_p(b)`; there is no rational type, so a non-divisor `b`
/// is a domain error.
pub fn quotient_valuation(p: PrimeBase, a: u64, b: u64) -> Result<Valuation> {
    if b == 0 || a % b != 0 {
        return Err(Error::domain(format!("{b} does not divide {a}")));
    }
    valuation_of(p, a / b)
}

/// Legendre's formula: `sum_{i >= 1} floor(n / p^i)`, stopping once `p^i > n`.
pub fn factorial_valuation_sum(p: PrimeBase, n: u64) -> Valuation {
    let mut exponent = 0;
    let mut power = p.get();
    while power <= n {
        exponent += n / power;
        match power.checked_mul(p.get()) {
            Some(next) => power = next,
            None => break,
        }
    }
    Valuation::new(p, exponent)
}

/// `v_p(n!) = floor(n/p) + v_p(floor(n/p)!)`, unrolled into a loop.
pub fn factorial_valuation_recurrence(p: PrimeBase, n: u64) -> Valuation {
    let mut exponent = 0;
    let mut m = n;
    while m > 0 {
        m /= p.get();
        exponent += m;
    }
    Valuation::new(p, exponent)
}

/// Sum of the base-`radix` digits of `n`. Any radix `>= 2` is accepted, not
/// just primes.
pub fn digit_sum(radix: u64, n: u64) -> Result<u64> {
    if radix < 2 {
        return Err(Error::domain(format!("radix {radix} must be >= 2")));
    }
    let mut sum = 0;
    let mut m = n;
    while m > 0 {
        sum += m % radix;
        m /= radix;
    }
    Ok(sum)
}

/// `v_p(n!) = (n - s_p(n)) / (p - 1)`.
///
/// # Panics
///
/// If the division is inexact, which cannot happen for a correct digit sum.
pub fn factorial_valuation_digits(p: PrimeBase, n: u64) -> Valuation {
    let s = digit_sum(p.get(), n).expect("prime base is a valid radix");
    let numerator = n - s;
    let denominator = p.get() - 1;
    assert!(
        numerator % denominator == 0,
        "digit-sum identity violated: ({n} - {s}) not divisible by {denominator}"
    );
    Valuation::new(p, numerator / denominator)
}

/// `v_2(2 * A_{n-1})` for even `n >= 6`, where `A_{n-1} = (n-2)! (n-1)! / 2^(n-2)`.
///
/// Since `n - 1` is odd, `v_2((n-1)!) = v_2((n-2)!)`, so the value is
/// `1 + 2 v_2((n-2)!) - (n-2)`, which simplifies to `n - 1 - 2 s_2(n-2)`.
///
/// This quantity is always `>= v_2(n)`, which is what the even composite case
/// needs. It is *not* always `>= n/2`: at `n = 8` it is 3.
pub fn even_case_valuation(n: u64) -> Result<Valuation> {
    if n % 2 != 0 || n < 6 {
        return Err(Error::domain(format!(
            "even-case valuation needs an even n >= 6, got {n}"
        )));
    }
    let v = factorial_valuation_sum(PrimeBase::TWO, n - 2).exponent;
    // 1 + 2v - (n - 2), reordered to stay unsigned; 2v >= n - 2 - log2(n) keeps it positive.
    let exponent = (1 + 2 * v)
        .checked_sub(n - 2)
        .expect("v_2(2 A_(n-1)) is non-negative");
    Ok(Valuation::new(PrimeBase::TWO, exponent))
}

/// `m^2 < 2^m`, the integer form of `m < 2^(m/2)`. Holds for every `m >= 5`.
///
/// Only defined while `2^m` fits in 128 bits (`m <= 127`).
pub fn square_below_power_of_two(m: u32) -> bool {
    assert!(m < 128, "2^{m} does not fit in u128");
    (m as u128) * (m as u128) < (1u128 << m)
}
