//! Exact Weil polynomials: monic degree-2g integer polynomials whose
//! coefficients satisfy the functional equation over the field of definition.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("field size must be at least 2, got {0}")]
    BaseTooSmall(BigUint),
    #[error("coefficient vector must have odd length 2g+1 >= 3, got {0}")]
    BadLength(usize),
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("coefficient symmetry c_i = Q^(g-i) c_(2g-i) fails at i = {0}")]
    Asymmetric(usize),
}

/// Monic integer polynomial of degree `2g` with the coefficient symmetry
/// `c_i = Q^{g-i} c_{2g-i}` over the field with `Q` elements. Coefficient
/// `coeffs[i]` multiplies `t^i`, so `coeffs[0] = Q^g` and `coeffs[2g] = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilPolynomial {
    g: u32,
    base: BigUint,
    coeffs: Vec<BigInt>,
}

impl WeilPolynomial {
    pub fn new(base: BigUint, coeffs: Vec<BigInt>) -> Result<Self, PolyError> {
        if base < BigUint::from(2u32) {
            return Err(PolyError::BaseTooSmall(base));
        }
        if coeffs.len() < 3 || coeffs.len() % 2 == 0 {
            return Err(PolyError::BadLength(coeffs.len()));
        }
        let g = ((coeffs.len() - 1) / 2) as u32;
        if !coeffs[2 * g as usize].is_one() {
            return Err(PolyError::NotMonic);
        }
        let base_int = BigInt::from(base.clone());
        for i in 0..=g as usize {
            let mirror = &coeffs[2 * g as usize - i] * base_int.pow(g - i as u32);
            if coeffs[i] != mirror {
                return Err(PolyError::Asymmetric(i));
            }
        }
        Ok(WeilPolynomial { g, base, coeffs })
    }

    /// The central polynomial `t^{2g} + a t^g + Q^g`.
    pub fn central(a: &BigInt, base: &BigUint, g: u32) -> Result<Self, PolyError> {
        if g == 0 {
            return Err(PolyError::BadLength(1));
        }
        let mut coeffs = vec![BigInt::ZERO; 2 * g as usize + 1];
        coeffs[0] = BigInt::from(base.pow(g));
        coeffs[g as usize] = a.clone();
        coeffs[2 * g as usize] = BigInt::one();
        Self::new(base.clone(), coeffs)
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn degree(&self) -> u32 {
        2 * self.g
    }

    /// Size of the field of definition.
    pub fn base(&self) -> &BigUint {
        &self.base
    }

    /// Coefficients `c_0 ... c_{2g}`, lowest degree first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `f(1)`, the common cardinality of the rational-point groups of the
    /// varieties in the class.
    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `f'(1)`.
    pub fn derivative_at_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(i))
            .sum()
    }

    /// True when every coefficient other than `c_0`, `c_g`, `c_{2g}` is zero.
    pub fn is_central_shape(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| {
            i == 0 || i == self.g as usize || i == 2 * self.g as usize || c.is_zero()
        })
    }

    /// The coefficient of `t^g`.
    pub fn middle_coefficient(&self) -> &BigInt {
        &self.coeffs[self.g as usize]
    }
}

impl fmt::Display for WeilPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.sign() == num_bigint::Sign::Minus;
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mag = c.magnitude();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
