//! Shared helpers for the integration suites: reproducible random sampling
//! of valid ordinary classes and their usable primes.

use cyclogeny::arith::{factorize, small_primes, FactorBudget};
use cyclogeny::WeilCentralClass;
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Sample `count` valid ordinary classes with `1 <= g <= max_g` and
/// `q = p^r <= max_q`, uniformly over the admissible middle coefficients.
/// Deterministic in `seed`.
pub fn sample_ordinary_classes(
    seed: u64,
    count: usize,
    max_g: u32,
    max_q: u64,
) -> Vec<WeilCentralClass> {
    let primes: Vec<u64> = small_primes()
        .iter()
        .map(|&p| p as u64)
        .take_while(|&p| p <= max_q)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = rng.gen_range(1..=max_g);
        let p = primes[rng.gen_range(0..primes.len())];
        let mut max_r = 1u32;
        while p.pow(max_r + 1) <= max_q {
            max_r += 1;
        }
        let r = rng.gen_range(1..=max_r);
        let q = p.pow(r);
        // floor(2 sqrt(q^g)) by exact integer square root of 4 q^g
        let bound = (BigUint::from(q).pow(g) * 4u32)
            .sqrt()
            .to_i128()
            .expect("bound fits i128 for q <= 10^4, g <= 6");
        let a = rng.gen_range(-bound..=bound);
        if a.rem_euclid(p as i128) == 0 {
            continue; // not ordinary (p divides a); includes a = 0
        }
        let class = WeilCentralClass::new(BigInt::from(a), BigUint::from(q), g)
            .expect("sampled within the Weil bound over a prime power");
        assert!(class.is_ordinary());
        out.push(class);
    }
    out
}

/// Primes dividing `N_1`, smallest first; panics if `N_1` resists the
/// default factoring effort (it never does at the sampled magnitudes).
pub fn primes_of_base_count(class: &WeilCentralClass) -> Vec<BigUint> {
    let n1 = class
        .base_point_count()
        .to_biguint()
        .expect("point counts are positive");
    let fac = factorize(&n1, &FactorBudget::default()).expect("nonzero");
    assert!(fac.is_complete(), "N_1 = {n1} did not factor completely");
    fac.prime_factors().cloned().collect()
}
