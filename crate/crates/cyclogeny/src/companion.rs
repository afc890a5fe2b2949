//! Exact integer companion-matrix powers and recovery of characteristic
//! polynomials from trace power sums via Newton's identities.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense square matrix over the integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = BigInt::one();
        }
        IntMatrix { dim, data }
    }

    /// Companion matrix of the monic polynomial with coefficients
    /// `c_0 ... c_{d-1}` (the leading 1 is implicit): ones on the
    /// subdiagonal, `-c_i` down the last column.
    pub fn companion(low_coeffs: &[BigInt]) -> Self {
        let dim = low_coeffs.len();
        assert!(dim >= 1);
        let mut data = vec![BigInt::zero(); dim * dim];
        for i in 1..dim {
            data[i * dim + (i - 1)] = BigInt::one();
        }
        for (i, c) in low_coeffs.iter().enumerate() {
            data[i * dim + (dim - 1)] = -c;
        }
        IntMatrix { dim, data }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut data = vec![BigInt::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = &self.data[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &rhs.data[k * d + j];
                    if !b.is_zero() {
                        data[i * d + j] += a * b;
                    }
                }
            }
        }
        IntMatrix { dim: d, data }
    }

    /// Exact binary powering; `pow(0)` is the identity.
    pub fn pow(&self, mut n: u64) -> IntMatrix {
        let mut result = IntMatrix::identity(self.dim);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| &self.data[i * self.dim + i]).sum()
    }
}

/// Reconstruct the monic characteristic polynomial of a matrix from the
/// traces of its powers: `traces[m-1]` must be `tr(M^m)` for m = 1..=d.
/// Returns coefficients `c_0 ... c_d` lowest degree first, `c_d = 1`.
///
/// Newton's identity `k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i` divides
/// by `k`; over the integers that division is exact, and the panic on a
/// nonzero remainder flags an implementation bug rather than bad input.
pub(crate) fn char_poly_from_traces(traces: &[BigInt]) -> Vec<BigInt> {
    let d = traces.len();
    let mut elementary = Vec::with_capacity(d + 1);
    elementary.push(BigInt::one());
    for k in 1..=d {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &elementary[k - i] * &traces[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let k_big = BigInt::from(k);
        let (quot, rem) = num_integer::Integer::div_rem(&acc, &k_big);
        assert!(
            rem.is_zero(),
            "inexact division by {k} in Newton's identities: power sums are inconsistent"
        );
        elementary.push(quot);
    }
    // char(t) = t^d - e_1 t^(d-1) + e_2 t^(d-2) - ... + (-1)^d e_d
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for (k, e) in elementary.iter().enumerate() {
        let signed = if k % 2 == 0 { e.clone() } else { -e };
        coeffs[d - k] = signed;
    }
    coeffs
}
