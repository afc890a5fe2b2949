//! Integer factorization: trial division followed by Brent's variant of
//! Pollard rho, with an explicit completeness flag instead of silent failure.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::primality::{is_prime, small_primes};
use super::ArithError;

/// Effort cap for the rho stage, counted in iterations of the polynomial map
/// across all attempts of one [`factorize`] call. Trial division always runs
/// in full first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        // ~1.2*sqrt(p) iterations find a factor p, so this covers prime
        // factors up to roughly 4*10^10 on top of the 10^6 trial division.
        FactorBudget {
            rho_iterations: 1 << 18,
        }
    }
}

impl FactorBudget {
    pub fn new(rho_iterations: u64) -> Self {
        FactorBudget { rho_iterations }
    }
}

/// Multiset of prime factors with strictly increasing primes.
///
/// When a composite cofactor resists the configured effort it is kept in
/// `residual` and the factorization is marked incomplete; quantities that
/// need the full factorization (radical, radical quotient) then return
/// `None` rather than a guess.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
    residual: Option<BigUint>,
}

impl Factorization {
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_complete(&self) -> bool {
        self.residual.is_none()
    }

    /// The unfactored composite cofactor, if any.
    pub fn residual(&self) -> Option<&BigUint> {
        self.residual.as_ref()
    }

    pub fn prime_factors(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Product of `prime^exponent` over all listed factors times the
    /// residual; equals the absolute value of the factored integer.
    pub fn reconstruct(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        if let Some(r) = &self.residual {
            acc *= r;
        }
        acc
    }

    /// Product of the distinct primes dividing the integer.
    /// `None` while the factorization is incomplete.
    pub fn radical(&self) -> Option<BigUint> {
        if !self.is_complete() {
            return None;
        }
        Some(self.prime_factors().product())
    }

    /// The factored integer divided by its radical.
    /// `None` while the factorization is incomplete.
    pub fn radical_quotient(&self) -> Option<BigUint> {
        if !self.is_complete() {
            return None;
        }
        let mut acc = BigUint::one();
        for (p, e) in &self.factors {
            acc *= p.pow(e - 1);
        }
        Some(acc)
    }

    /// Exponent of `p` in the factored integer, counting the residual as
    /// opaque (a prime hidden in the residual reports 0).
    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

/// Factor `|n|` completely if trial division plus the budgeted rho stage
/// suffice, otherwise report the residual cofactor and `complete = false`.
pub fn factorize(n: &BigUint, budget: &FactorBudget) -> Result<Factorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut m = n.clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();

    // Trial division. Stop early once the cofactor is proven prime or the
    // square of the current prime exceeds it.
    let mut proven_prime = false;
    for (i, &p) in small_primes().iter().enumerate() {
        if m.is_one() {
            break;
        }
        let p_big = BigUint::from(p);
        if &p_big * &p_big > m {
            break;
        }
        if (&m % &p_big).is_zero() {
            let mut e = 0u32;
            while (&m % &p_big).is_zero() {
                m /= &p_big;
                e += 1;
            }
            factors.push((p_big, e));
            if !m.is_one() && is_prime(&m) {
                proven_prime = true;
                break;
            }
        }
        // One primality probe after the small-prime segment saves scanning
        // the rest of the sieve for inputs with a large prime cofactor.
        if i == 1228 && !m.is_one() && is_prime(&m) {
            proven_prime = true;
            break;
        }
    }

    let mut residuals: Vec<BigUint> = Vec::new();
    if !m.is_one() {
        if proven_prime || is_prime(&m) {
            factors.push((m, 1));
        } else {
            // Rho stage on the remaining composite(s).
            let mut remaining = budget.rho_iterations;
            let mut stack = vec![m];
            while let Some(c) = stack.pop() {
                if c.is_one() {
                    continue;
                }
                if is_prime(&c) {
                    merge_factor(&mut factors, c, 1);
                    continue;
                }
                match brent_rho(&c, &mut remaining) {
                    Some(d) => {
                        let q = &c / &d;
                        stack.push(d);
                        stack.push(q);
                    }
                    None => residuals.push(c),
                }
            }
        }
    }

    factors.sort_by(|(p, _), (q, _)| p.cmp(q));
    let residual = match residuals.len() {
        0 => None,
        _ => Some(residuals.iter().product()),
    };
    let fac = Factorization { factors, residual };
    debug_assert_eq!(fac.reconstruct(), *n);
    Ok(fac)
}

fn merge_factor(factors: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    if let Some(slot) = factors.iter_mut().find(|(q, _)| *q == p) {
        slot.1 += e;
    } else {
        factors.push((p, e));
    }
}

/// Brent's cycle-finding variant of Pollard rho with batched gcds.
///
/// Deterministic: the seed is always 2 and the polynomial constant walks
/// c = 1, 2, 3, ... so repeated runs factor identically. Returns a
/// nontrivial divisor of the odd composite `n`, or `None` once `remaining`
/// iterations are exhausted.
fn brent_rho(n: &BigUint, remaining: &mut u64) -> Option<BigUint> {
    const BATCH: u64 = 128;
    let one = BigUint::one();
    let mut c = BigUint::one();
    while *remaining > 0 {
        let step = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut q = BigUint::one();
        let mut r: u64 = 1;
        let mut x;
        let mut found: Option<BigUint> = None;
        'attempt: loop {
            if !consume(remaining, r) {
                break 'attempt;
            }
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0u64;
            while k < r {
                let ys = y.clone();
                let window = BATCH.min(r - k);
                if !consume(remaining, window) {
                    break 'attempt;
                }
                for _ in 0..window {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                let d = q.gcd(n);
                if d > one {
                    if &d < n {
                        found = Some(d);
                    } else {
                        // Overshot: replay the last window one step at a time.
                        let mut ys = ys;
                        loop {
                            ys = step(&ys);
                            let diff = if x > ys { &x - &ys } else { &ys - &x };
                            let d = diff.gcd(n);
                            if d > one {
                                if &d < n {
                                    found = Some(d);
                                }
                                break;
                            }
                        }
                    }
                    break 'attempt;
                }
                k += window;
            }
            r *= 2;
        }
        if found.is_some() {
            return found;
        }
        c += 1u32;
    }
    None
}

fn consume(remaining: &mut u64, amount: u64) -> bool {
    if *remaining < amount {
        *remaining = 0;
        return false;
    }
    *remaining -= amount;
    true
}
