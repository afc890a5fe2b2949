//! Miller-Rabin primality testing with deterministic witnesses.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::sync::OnceLock;

/// Witnesses proven sufficient for every input below 2^64
/// (Sorenson & Webster, and the earlier Jaeschke bounds).
const WITNESSES_64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Fixed witness set for inputs above 2^64: the first 25 primes. The test is
/// then a strong probable-prime test; with 25 independent bases the error
/// probability is below 4^-25 per input.
const WITNESSES_LARGE: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Bound for the trial-division stage of [`crate::arith::factorize`].
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

static SMALL_PRIMES: OnceLock<Vec<u32>> = OnceLock::new();

/// All primes below [`TRIAL_DIVISION_BOUND`], sieved once per process.
pub fn small_primes() -> &'static [u32] {
    SMALL_PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Deterministic below 2^64, strong probable-prime with the fixed
/// [`WITNESSES_LARGE`] base set above it.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    if *n == two {
        return true;
    }
    if (n % 2u32).is_zero() {
        return false;
    }
    // n - 1 = d * 2^s with d odd
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 1 is odd here");
    let d = &n_minus_1 >> s;

    let witnesses: &[u64] = if n.bits() <= 64 {
        &WITNESSES_64
    } else {
        &WITNESSES_LARGE
    };

    'witness: for &w in witnesses {
        let a = BigUint::from(w) % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Convenience wrapper for machine-word inputs.
pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}
