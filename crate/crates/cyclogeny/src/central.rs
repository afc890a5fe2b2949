//! Weil-central isogeny classes `(a, q)_g` and their base-field extensions:
//! validation against the Weil bound, power sums of the quadratic resolvent,
//! the binomial recursion for the middle coefficient, exact extension Weil
//! polynomials through companion-matrix powers, and the geometric-sum
//! polynomial `P_n(x) = 1 + x + ... + x^{n-1}` used by the growth bound.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{prime_power_decompose, ArithError};
use crate::companion::{char_poly_from_traces, IntMatrix};
use crate::poly::WeilPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentralError {
    #[error("Weil bound violated: a^2 = {a_squared} exceeds 4q^g = {four_q_g}")]
    WeilBound {
        a_squared: BigInt,
        four_q_g: BigInt,
    },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error(transparent)]
    BadFieldSize(#[from] ArithError),
    #[error("the recursion for a_n assumes gcd(a, p) = 1; this class has p | a")]
    NotOrdinary,
    #[error("index must be odd, got {0}")]
    EvenIndex(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtension,
}

/// Isogeny class with Weil polynomial `t^{2g} + a t^g + q^g`, written
/// `(a, q)_g`. Immutable after validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilCentralClass {
    a: BigInt,
    q: BigUint,
    g: u32,
    p: BigUint,
    r: u32,
    ordinary: bool,
}

impl WeilCentralClass {
    /// Validate `(a, q)_g`: `q` a prime power, `g >= 1`, and the Weil bound
    /// `a^2 <= 4 q^g` (so all roots have absolute value sqrt(q)).
    pub fn new(a: BigInt, q: BigUint, g: u32) -> Result<Self, CentralError> {
        if g == 0 {
            return Err(CentralError::ZeroDimension);
        }
        let (p, r) = prime_power_decompose(&q)?;
        let a_squared = &a * &a;
        let four_q_g = BigInt::from(q.pow(g)) * 4;
        if a_squared > four_q_g {
            return Err(CentralError::WeilBound {
                a_squared,
                four_q_g,
            });
        }
        let ordinary = a.abs().to_biguint().expect("abs").gcd(&p).is_one();
        Ok(WeilCentralClass {
            a,
            q,
            g,
            p,
            r,
            ordinary,
        })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Size of the base field.
    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    /// Characteristic of the base field.
    pub fn p(&self) -> &BigUint {
        &self.p
    }

    /// Exponent in `q = p^r`.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// `gcd(a, p) = 1`: the class has maximal p-rank.
    pub fn is_ordinary(&self) -> bool {
        self.ordinary
    }

    /// `q^g`, the constant term of the Weil polynomial.
    pub fn q_pow_g(&self) -> BigUint {
        self.q.pow(self.g)
    }

    /// The Weil polynomial of the class itself.
    pub fn weil_poly(&self) -> WeilPolynomial {
        WeilPolynomial::central(&self.a, &self.q, self.g)
            .expect("validated class always yields a well-formed polynomial")
    }

    /// `N_1 = q^g + a + 1` by direct evaluation.
    pub fn base_point_count(&self) -> BigInt {
        BigInt::from(self.q_pow_g()) + &self.a + 1
    }
}

impl std::fmt::Display for WeilCentralClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})_{}", self.a, self.q, self.g)
    }
}

/// Memoized power sums `p_n = x^n + y^n` for `x`, `y` the roots of
/// `u^2 + a u + q^g`, satisfying `p_0 = 2`, `p_1 = -a` and
/// `p_n = -a p_{n-1} - q^g p_{n-2}`.
///
/// This two-term recurrence is the independent oracle for the binomial
/// recursion implemented by [`a_n`].
#[derive(Debug, Clone)]
pub struct PowerSumSequence {
    a: BigInt,
    z: BigInt,
    values: Vec<BigInt>,
}

impl PowerSumSequence {
    pub fn new(class: &WeilCentralClass) -> Self {
        PowerSumSequence {
            a: class.a.clone(),
            z: BigInt::from(class.q_pow_g()),
            values: vec![BigInt::from(2), -class.a.clone()],
        }
    }

    pub fn get(&mut self, n: u64) -> BigInt {
        let n = n as usize;
        while self.values.len() <= n {
            let k = self.values.len();
            let next = -(&self.a) * &self.values[k - 1] - &self.z * &self.values[k - 2];
            self.values.push(next);
        }
        self.values[n].clone()
    }
}

/// `p_n = x^n + y^n` for the roots of `u^2 + a u + q^g`; exact integer.
pub fn power_sum(class: &WeilCentralClass, n: u64) -> BigInt {
    PowerSumSequence::new(class).get(n)
}

/// Middle coefficient `a_n` of the extension polynomial via the binomial
/// recursion
///
/// `a_n = (-1)^{n+1} a_1^n - sum_{i=1}^{floor(n/2)} C(n,i) a_{n-2i} q^{gi}`
///
/// seeded with `a_0 = -1`, which absorbs the unpaired middle term of the
/// binomial expansion at even `n`. Computed bottom-up along the parity chain
/// of `n`, which memoizes every subterm exactly once. Equals
/// `-power_sum(class, n)` for every `n >= 1`; requires an ordinary class.
pub fn a_n(class: &WeilCentralClass, n: u64) -> Result<BigInt, CentralError> {
    if !class.ordinary {
        return Err(CentralError::NotOrdinary);
    }
    if n == 0 {
        return Err(CentralError::ZeroExtension);
    }
    let z = BigInt::from(class.q_pow_g());
    // table[j] holds a_k for k walking the parity chain of n; floor division
    // by 2 maps k to j for both parities.
    let mut table: Vec<BigInt> = Vec::new();
    let parity = n % 2;
    if parity == 0 {
        // a_0 = -1 absorbs the unpaired central term of the even-index
        // binomial expansion; it is a sentinel, not -(x^0 + y^0).
        table.push(BigInt::from(-1));
    } else {
        table.push(class.a.clone()); // a_1
    }
    let mut k = parity;
    while k < n {
        k += 2;
        let lead = if k % 2 == 0 {
            -class.a.pow(k as u32)
        } else {
            class.a.pow(k as u32)
        };
        let mut acc = lead;
        let mut z_pow = BigInt::one();
        for i in 1..=(k / 2) {
            z_pow *= &z;
            let idx = ((k - 2 * i) / 2) as usize;
            acc -= binomial(k, i) * &table[idx] * &z_pow;
        }
        table.push(acc);
    }
    Ok(table.last().expect("table is nonempty").clone())
}

/// Exact binomial coefficient by the multiplicative formula; every
/// intermediate division is exact.
pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Whether the degree-`n` extension of a Weil-central class is again
/// Weil-central, i.e. `gcd(n, g) = 1`. (For ordinary classes this is exactly
/// the condition under which the extension polynomial is
/// `t^{2g} + a_n t^g + q^{ng}`.)
pub fn is_central_extension(class: &WeilCentralClass, n: u64) -> bool {
    n.gcd(&(class.g as u64)) == 1
}

/// Exact Weil polynomial of the degree-`n` extension of an arbitrary
/// isogeny class given by its Weil polynomial (roots go to their n-th
/// powers).
///
/// Builds the `2g x 2g` integer companion matrix `C` of `f`, computes `C^n`
/// by binary powering, reads off the trace power sums `tr(C^{nm})` for
/// `m = 1..=2g`, and recovers the coefficients through Newton's identities.
/// Panics (never returns garbage) if an internal division is inexact or the
/// result violates the Weil-polynomial invariants; both would indicate a
/// bug, not bad input.
pub fn extend_poly(f: &WeilPolynomial, n: u64) -> WeilPolynomial {
    assert!(n >= 1, "extension degree must be at least 1");
    let dim = f.degree() as usize;
    let low = f.coeffs()[..dim].to_vec();
    let companion = IntMatrix::companion(&low);

    let power = companion.pow(n);
    let mut traces = Vec::with_capacity(dim);
    let mut running = power.clone();
    traces.push(running.trace());
    for _ in 1..dim {
        running = running.mul(&power);
        traces.push(running.trace());
    }

    let coeffs = char_poly_from_traces(&traces);
    let base = f
        .base()
        .pow(u32::try_from(n).expect("extension degree fits u32"));
    WeilPolynomial::new(base, coeffs)
        .expect("internal: extension polynomial must satisfy the Weil invariants")
}

/// Exact Weil polynomial of the degree-`n` extension of a Weil-central
/// class, for any `n >= 1` and any class (no ordinariness hypothesis).
pub fn extension_weil_poly(class: &WeilCentralClass, n: u64) -> WeilPolynomial {
    extend_poly(&class.weil_poly(), n)
}

/// `N_n = f_{A_n}(1)`, the cardinality of the rational-point group over the
/// degree-`n` extension field, from the exact matrix route.
pub fn point_count(class: &WeilCentralClass, n: u64) -> BigUint {
    let value = extension_weil_poly(class, n).value_at_one();
    value
        .to_biguint()
        .expect("point counts of Weil polynomials are positive")
}

/// `P_n(x) = sum_{i=0}^{n-1} x^i` by direct Horner evaluation.
pub fn geom_sum(x: &BigInt, n: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for _ in 0..n {
        acc = acc * x + 1;
    }
    acc
}

/// `P_n(x)` for odd `n` through the binomial recursion
///
/// `P_n(x) = (x+1)^{n-1} - sum_{i=1}^{(n-1)/2} [C(n,i) - 2 C(n-1,i-1)] x^i P_{n-2i}(x)`
///
/// with `P_1(x) = 1`. Must agree with [`geom_sum`] everywhere it is defined.
pub fn geom_sum_recursive(x: &BigInt, n: u64) -> Result<BigInt, CentralError> {
    if n % 2 == 0 {
        return Err(CentralError::EvenIndex(n));
    }
    // table[j] = P_{2j+1}(x)
    let count = ((n - 1) / 2 + 1) as usize;
    let mut table: Vec<BigInt> = Vec::with_capacity(count);
    table.push(BigInt::one());
    let x_plus_1: BigInt = x + 1;
    for j in 1..count {
        let k = 2 * j as u64 + 1;
        let mut acc = x_plus_1.pow(k as u32 - 1);
        let mut x_pow = BigInt::one();
        for i in 1..=(k - 1) / 2 {
            x_pow *= x;
            let weight = binomial(k, i) - 2 * binomial(k - 1, i - 1);
            let idx = ((k - 2 * i - 1) / 2) as usize;
            acc -= weight * &x_pow * &table[idx];
        }
        table.push(acc);
    }
    Ok(table.pop().expect("table is nonempty"))
}
