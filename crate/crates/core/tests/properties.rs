//! Algebraic invariants checked against independent routes: num-bigint for
//! big-integer arithmetic, per-factor division for factorial valuations.

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;

use schulte::criterion::{residue_exact, residue_fast, DEFAULT_EXACT_LIMIT};
use schulte::sequence::{factorial, triangular, Generator};
use schulte::valuation::{
    even_case_valuation, factorial_valuation_digits, factorial_valuation_recurrence,
    factorial_valuation_sum, quotient_valuation, valuation_of, PrimeBase,
};
use schulte::BigNat;

const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn to_biguint(x: &BigNat) -> BigUint {
    let digits: Vec<u32> = x
        .limbs()
        .iter()
        .flat_map(|&l| [l as u32, (l >> 32) as u32])
        .collect();
    BigUint::new(digits)
}

fn base(p: u64) -> PrimeBase {
    PrimeBase::new(p).unwrap()
}

#[test]
fn valuation_additivity_random_pairs() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let a = rng.gen_range(1..1u64 << 31);
        let b = rng.gen_range(1..1u64 << 31);
        for &p in &SMALL_PRIMES {
            let va = valuation_of(base(p), a).unwrap().exponent;
            let vb = valuation_of(base(p), b).unwrap().exponent;
            assert_eq!(valuation_of(base(p), a * b).unwrap().exponent, va + vb, "p={p} a={a} b={b}");
        }
    }
}

#[test]
fn factorial_valuation_exact_against_bignat_factorial() {
    // p^v | n! and p^(v+1) does not, on the exact factorial.
    for n in 0..=200u64 {
        let f = to_biguint(&factorial(n));
        for &p in &SMALL_PRIMES {
            let v = factorial_valuation_sum(base(p), n).exponent as u32;
            let pv = BigUint::from(p).pow(v);
            assert_eq!(&f % &pv, BigUint::from(0u32), "p={p} n={n}");
            assert_ne!(&f % (pv * p), BigUint::from(0u32), "p={p} n={n}");
        }
    }
}

#[test]
fn product_and_closed_forms_agree() {
    let g = Generator::default();
    let running: Vec<_> = g.terms(1, 501).unwrap().collect();
    for n in 1..=500u64 {
        let product = g.term_product(n).unwrap();
        assert_eq!(product, g.term_closed(n).unwrap(), "n={n}");
        assert_eq!(product, running[(n - 1) as usize]);
        // A_(n+1) = A_n T_n
        let next = product.value.mul_small(triangular(n).unwrap().value);
        assert_eq!(next, running[n as usize].value, "n={n}");
    }
}

#[test]
fn two_adic_valuation_of_terms() {
    let two = PrimeBase::TWO;
    for term in Generator::default().terms(1, 300).unwrap() {
        let n = term.index;
        let expected = factorial_valuation_sum(two, n - 1).exponent + factorial_valuation_sum(two, n).exponent
            - (n - 1);
        assert_eq!(term.value.trailing_zeros(), Some(expected), "n={n}");
    }
}

#[test]
fn even_case_identity_and_bound() {
    for n in (6..=20_000u64).step_by(2) {
        let v = even_case_valuation(n).unwrap().exponent;
        let s = (n - 2).count_ones() as u64;
        assert_eq!(v, n - 1 - 2 * s, "n={n}");
        assert!(v >= valuation_of(PrimeBase::TWO, n).unwrap().exponent, "n={n}");
    }
}

#[test]
fn residue_routes_agree_on_spot_checks() {
    for n in [2u64, 3, 4, 8, 9, 15, 97, 341, 561, 1024, 1025, 2047] {
        assert_eq!(residue_fast(n).unwrap(), residue_exact(n, DEFAULT_EXACT_LIMIT).unwrap(), "n={n}");
    }
}

fn bignat_strategy(max_limbs: usize) -> impl Strategy<Value = BigNat> {
    prop::collection::vec(any::<u64>(), 0..=max_limbs).prop_map(BigNat::from_limbs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn divisibility_is_monotone(a in 1u64..1 << 20, k in 1u64..1 << 11, pi in 0usize..SMALL_PRIMES.len()) {
        let p = base(SMALL_PRIMES[pi]);
        let b = a * k;
        let va = valuation_of(p, a).unwrap().exponent;
        prop_assert!(va <= valuation_of(p, b).unwrap().exponent);
        // The stated side condition v_p(a) < a.
        prop_assert!(va < a);
        // Exact quotient: v_p(b / a) = v_p(b) - v_p(a).
        prop_assert_eq!(
            quotient_valuation(p, b, a).unwrap().exponent,
            valuation_of(p, b).unwrap().exponent - va
        );
    }

    #[test]
    fn legendre_forms_agree(n in any::<u64>(), pi in 0usize..SMALL_PRIMES.len()) {
        let p = base(SMALL_PRIMES[pi]);
        let s = factorial_valuation_sum(p, n);
        prop_assert_eq!(s, factorial_valuation_recurrence(p, n));
        prop_assert_eq!(s, factorial_valuation_digits(p, n));
    }

    #[test]
    fn mul_matches_reference(a in bignat_strategy(40), b in bignat_strategy(40)) {
        prop_assert_eq!(to_biguint(&a.mul(&b)), to_biguint(&a) * to_biguint(&b));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn mul_is_associative_mod_samples(
        a in bignat_strategy(12),
        b in bignat_strategy(12),
        c in bignat_strategy(12),
        moduli in prop::collection::vec(2u64..1 << 63, 10),
    ) {
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        for &m in &moduli {
            prop_assert_eq!(left.mod_small(m).unwrap(), right.mod_small(m).unwrap());
            prop_assert_eq!(a.mul(&b).mod_small(m).unwrap(), b.mul(&a).mod_small(m).unwrap());
        }
    }

    #[test]
    fn mod_small_is_a_ring_homomorphism(a in bignat_strategy(30), b in bignat_strategy(30), m in 2u64..u64::MAX) {
        let am = a.mod_small(m).unwrap() as u128;
        let bm = b.mod_small(m).unwrap() as u128;
        prop_assert_eq!(a.mul(&b).mod_small(m).unwrap() as u128, am * bm % m as u128);
        let reference = to_biguint(&a) % m;
        prop_assert_eq!(BigUint::from(am as u64), reference);
    }

    #[test]
    fn decimal_roundtrip(a in bignat_strategy(1000)) {
        let text = a.to_decimal();
        prop_assert_eq!(&text, &to_biguint(&a).to_string());
        prop_assert_eq!(text.parse::<BigNat>().unwrap(), a);
    }

    #[test]
    fn decimal_matches_native(x in 0u64..1 << 63) {
        prop_assert_eq!(BigNat::from_small(x).to_decimal(), x.to_string());
    }

    #[test]
    fn shr_exact_inverts_shift(a in bignat_strategy(20), k in 0u64..300) {
        let shifted = BigUint::from(1u32) << k;
        let limbs = (to_biguint(&a) * shifted).to_u64_digits();
        let product = BigNat::from_limbs(limbs);
        prop_assert_eq!(product.shr_exact(k).unwrap(), a.clone());
        if !a.is_zero() {
            let tz = product.trailing_zeros().unwrap();
            prop_assert!(product.shr_exact(tz + 1).is_err());
        }
    }
}
