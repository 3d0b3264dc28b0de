//! Unbounded natural numbers with just enough arithmetic for factorials and
//! triangular-number products: multiplication, exact division by powers of
//! two, reduction by a machine-word modulus, and decimal conversion.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// 10^19, the largest power of ten that fits in a `u64`.
const DECIMAL_CHUNK: u64 = 10_000_000_000_000_000_000;
const DECIMAL_CHUNK_DIGITS: usize = 19;

/// Little-endian 64-bit limbs. Zero is the empty limb vector and no value
/// carries a high zero limb.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BigNat {
    limbs: Vec<u64>,
}

impl BigNat {
    pub fn zero() -> Self {
        BigNat { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        BigNat::from_small(1)
    }

    pub fn from_small(x: u64) -> Self {
        if x == 0 {
            BigNat::zero()
        } else {
            BigNat { limbs: vec![x] }
        }
    }

    /// Builds a value from little-endian limbs, dropping high zero limbs.
    pub fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut r = BigNat { limbs };
        r.normalize();
        r
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn bit_len(&self) -> u64 {
        match self.limbs.last() {
            None => 0,
            Some(top) => 64 * (self.limbs.len() as u64 - 1) + (64 - top.leading_zeros() as u64),
        }
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &BigNat) -> BigNat {
        if self.is_zero() || other.is_zero() {
            return BigNat::zero();
        }
        if other.limbs.len() == 1 {
            return self.mul_small(other.limbs[0]);
        }
        if self.limbs.len() == 1 {
            return other.mul_small(self.limbs[0]);
        }
        let mut out = vec![0u64; self.limbs.len() + other.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            let mut carry = 0u128;
            for (j, &b) in other.limbs.iter().enumerate() {
                let t = a as u128 * b as u128 + out[i + j] as u128 + carry;
                out[i + j] = t as u64;
                carry = t >> 64;
            }
            out[i + other.limbs.len()] = carry as u64;
        }
        let mut r = BigNat { limbs: out };
        r.normalize();
        r
    }

    pub fn mul_small(&self, m: u64) -> BigNat {
        let mut r = self.clone();
        r.mul_small_assign(m);
        r
    }

    pub fn mul_small_assign(&mut self, m: u64) {
        if m == 0 {
            self.limbs.clear();
            return;
        }
        let mut carry = 0u128;
        for limb in &mut self.limbs {
            let t = *limb as u128 * m as u128 + carry;
            *limb = t as u64;
            carry = t >> 64;
        }
        if carry != 0 {
            self.limbs.push(carry as u64);
        }
    }

    fn add_small_assign(&mut self, x: u64) {
        let mut carry = x;
        for limb in &mut self.limbs {
            if carry == 0 {
                return;
            }
            let (s, overflow) = limb.overflowing_add(carry);
            *limb = s;
            carry = overflow as u64;
        }
        if carry != 0 {
            self.limbs.push(carry);
        }
    }

    /// Divides in place by a nonzero word, returning the remainder.
    fn div_rem_small_assign(&mut self, d: u64) -> u64 {
        debug_assert!(d != 0);
        let mut rem = 0u128;
        for limb in self.limbs.iter_mut().rev() {
            let cur = (rem << 64) | *limb as u128;
            *limb = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
        self.normalize();
        rem as u64
    }

    /// `self mod m` for `m >= 2`.
    pub fn mod_small(&self, m: u64) -> Result<u64> {
        if m < 2 {
            return Err(Error::domain(format!("modulus {m} must be >= 2")));
        }
        let m = m as u128;
        let rem = self
            .limbs
            .iter()
            .rev()
            .fold(0u128, |rem, &limb| ((rem << 64) | limb as u128) % m);
        Ok(rem as u64)
    }

    /// Number of trailing zero bits, i.e. `v_2(self)`. `None` for zero.
    pub fn trailing_zeros(&self) -> Option<u64> {
        let idx = self.limbs.iter().position(|&l| l != 0)?;
        Some(64 * idx as u64 + self.limbs[idx].trailing_zeros() as u64)
    }

    /// `self / 2^k`, which must be exact.
    pub fn shr_exact(&self, k: u64) -> Result<BigNat> {
        if k == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        let tz = self.trailing_zeros().unwrap_or(0);
        if tz < k {
            return Err(Error::domain(format!(
                "2^{k} does not divide the operand (only 2^{tz} does)"
            )));
        }
        let word_shift = (k / 64) as usize;
        let bit_shift = (k % 64) as u32;
        let src = &self.limbs[word_shift..];
        let mut limbs = Vec::with_capacity(src.len());
        if bit_shift == 0 {
            limbs.extend_from_slice(src);
        } else {
            for (i, &lo) in src.iter().enumerate() {
                let hi = src.get(i + 1).copied().unwrap_or(0);
                limbs.push((lo >> bit_shift) | (hi << (64 - bit_shift)));
            }
        }
        let mut r = BigNat { limbs };
        r.normalize();
        Ok(r)
    }

    pub fn to_decimal(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut chunks = Vec::with_capacity(self.limbs.len() + 1);
        let mut rest = self.clone();
        while !rest.is_zero() {
            chunks.push(rest.div_rem_small_assign(DECIMAL_CHUNK));
        }
        let mut out = String::with_capacity(chunks.len() * DECIMAL_CHUNK_DIGITS);
        let mut iter = chunks.iter().rev();
        if let Some(top) = iter.next() {
            out.push_str(&top.to_string());
        }
        for chunk in iter {
            out.push_str(&format!("{chunk:019}"));
        }
        out
    }
}

impl From<u64> for BigNat {
    fn from(x: u64) -> Self {
        BigNat::from_small(x)
    }
}

impl Mul for &BigNat {
    type Output = BigNat;

    fn mul(self, rhs: &BigNat) -> BigNat {
        BigNat::mul(self, rhs)
    }
}

impl FromStr for BigNat {
    type Err = Error;

    /// Parses a non-empty string of ASCII decimal digits.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::domain(format!("not a decimal natural number: {s:?}")));
        }
        let mut r = BigNat::zero();
        let head = s.len() % DECIMAL_CHUNK_DIGITS;
        let (first, rest) = s.split_at(head);
        if !first.is_empty() {
            r.add_small_assign(first.parse().expect("validated digits"));
        }
        for chunk in rest.as_bytes().chunks(DECIMAL_CHUNK_DIGITS) {
            let chunk = std::str::from_utf8(chunk).expect("ascii");
            r.mul_small_assign(DECIMAL_CHUNK);
            r.add_small_assign(chunk.parse().expect("validated digits"));
        }
        r.normalize();
        Ok(r)
    }
}

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad_integral(true, "", &self.to_decimal())
    }
}

impl fmt::Debug for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigNat({})", self.to_decimal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigNat {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_zero() {
        assert!(BigNat::from_small(0).limbs().is_empty());
        assert_eq!(big("0000"), BigNat::zero());
        assert_eq!(BigNat::from_small(5).mul_small(0), BigNat::zero());
        assert_eq!(BigNat::zero().to_decimal(), "0");
    }

    #[test]
    fn from_small_roundtrip() {
        assert_eq!(BigNat::from_small(1).to_decimal(), "1");
        assert_eq!(BigNat::from_small(1 << 40).to_decimal(), (1u64 << 40).to_string());
        assert_eq!(BigNat::from_small(u64::MAX).to_decimal(), u64::MAX.to_string());
    }

    #[test]
    fn mul_examples() {
        let a = BigNat::from_small(56700);
        assert_eq!(a.mul(&BigNat::from_small(28)).to_decimal(), "1587600");
        let x = big("123456789012345678901234567890");
        assert_eq!(x.mul(&BigNat::one()), x);
        assert_eq!(
            big("12345678901234567890").mul(&big("98765432109876543210")).to_decimal(),
            "1219326311370217952237463801111263526900"
        );
    }

    #[test]
    fn mod_small_examples() {
        assert_eq!(BigNat::from_small(40).mod_small(5).unwrap(), 0);
        assert_eq!(BigNat::zero().mod_small(17).unwrap(), 0);
        assert_eq!(BigNat::from_small(113404).mod_small(8).unwrap(), 4);
        assert!(BigNat::from_small(3).mod_small(1).is_err());
        assert!(BigNat::from_small(3).mod_small(0).is_err());
    }

    #[test]
    fn shr_exact_examples() {
        assert_eq!(BigNat::from_small(1440).shr_exact(5).unwrap().to_decimal(), "45");
        assert_eq!(BigNat::from_small(7).shr_exact(0).unwrap().to_decimal(), "7");
        assert_eq!(BigNat::from_small(2880).shr_exact(4).unwrap().to_decimal(), "180");
        assert!(BigNat::from_small(1440).shr_exact(6).is_err());
        // Crosses limb boundaries.
        let x = big("340282366920938463463374607431768211456"); // 2^128
        assert_eq!(x.shr_exact(128).unwrap(), BigNat::one());
        assert_eq!(x.shr_exact(65).unwrap(), BigNat::from_small(1 << 63));
    }

    #[test]
    fn decimal_examples() {
        assert_eq!(BigNat::from_small(57153600).to_decimal(), "57153600");
        assert_eq!(format!("{:>6}", BigNat::from_small(42)), "    42");
        // Exercise an interior chunk with leading zeros.
        let s = "1000000000000000000000000000000000000007";
        assert_eq!(big(s).to_decimal(), s);
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "-1", "12a", " 1", "1.0"] {
            assert!(bad.parse::<BigNat>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn bit_len_and_trailing_zeros() {
        assert_eq!(BigNat::zero().bit_len(), 0);
        assert_eq!(BigNat::zero().trailing_zeros(), None);
        let x = BigNat::from_small(1 << 63).mul_small(4);
        assert_eq!(x.bit_len(), 66);
        assert_eq!(x.trailing_zeros(), Some(65));
    }
}
