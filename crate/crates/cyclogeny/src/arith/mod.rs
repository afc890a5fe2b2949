//! Exact arbitrary-precision integer utilities: l-adic valuations, radicals,
//! factorization with an explicit completeness flag, primality testing,
//! multiplicative orders and prime-power decomposition.

mod factor;
mod primality;

pub use factor::{factorize, FactorBudget, Factorization};
pub use primality::{is_prime, is_prime_u64, small_primes, TRIAL_DIVISION_BOUND};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("{0} is not a prime power")]
    NotPrimePower(BigUint),
    #[error("prime power base must be at least 2, got {0}")]
    BaseTooSmall(BigUint),
    #[error("{z} is divisible by {l}, so it has no multiplicative order mod {l}")]
    NoOrder { z: BigInt, l: BigUint },
    #[error("cannot factor {0} completely within the configured effort")]
    IncompleteFactorization(BigUint),
}

/// Largest `m` with `l^m` dividing `z`, by exact repeated division.
pub fn valuation(l: &BigUint, z: &BigInt) -> Result<u64, ArithError> {
    if z.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    if !is_prime(l) {
        return Err(ArithError::NotPrime(l.clone()));
    }
    let l: BigUint = l.clone();
    let mut m = z.abs().to_biguint().expect("abs is nonnegative");
    let mut v = 0u64;
    loop {
        let (quot, rem) = m.div_rem(&l);
        if !rem.is_zero() {
            return Ok(v);
        }
        m = quot;
        v += 1;
    }
}

/// Valuation of a `u64`, for callers already in machine-word range.
pub fn valuation_u64(l: u64, z: u64) -> Result<u64, ArithError> {
    valuation(&BigUint::from(l), &BigInt::from(z))
}

/// Smallest `m >= 1` with `z^m = 1 (mod l)`, for prime `l` not dividing `z`.
///
/// Computed by factoring `l - 1` and stripping prime factors off the
/// exponent, so it needs a complete factorization of `l - 1`.
pub fn mult_order(z: &BigInt, l: &BigUint, budget: &FactorBudget) -> Result<BigUint, ArithError> {
    if !is_prime(l) {
        return Err(ArithError::NotPrime(l.clone()));
    }
    let l_int = BigInt::from(l.clone());
    let z_red = z.mod_floor(&l_int).to_biguint().expect("mod_floor >= 0");
    if z_red.is_zero() {
        return Err(ArithError::NoOrder {
            z: z.clone(),
            l: l.clone(),
        });
    }
    let phi = l - 1u32;
    let fac = factorize(&phi, budget)?;
    if !fac.is_complete() {
        return Err(ArithError::IncompleteFactorization(phi));
    }
    let mut order = phi.clone();
    for (p, e) in fac.factors() {
        for _ in 0..*e {
            let candidate = &order / p;
            if z_red.modpow(&candidate, l).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    debug_assert!(z_red.modpow(&order, l).is_one());
    Ok(order)
}

/// Write `q = p^r` with `p` prime, or report that no such form exists.
pub fn prime_power_decompose(q: &BigUint) -> Result<(BigUint, u32), ArithError> {
    if *q < BigUint::from(2u32) {
        return Err(ArithError::BaseTooSmall(q.clone()));
    }
    // The exponent is at most log2(q); try the largest first so that e.g.
    // 64 resolves to 2^6 rather than stopping at a non-prime root.
    let max_r = q.bits() as u32;
    for r in (1..=max_r).rev() {
        let root = q.nth_root(r);
        if root.pow(r) == *q && is_prime(&root) {
            return Ok((root, r));
        }
    }
    Err(ArithError::NotPrimePower(q.clone()))
}
