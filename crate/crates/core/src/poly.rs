//! Dense univariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Numerators of Hilbert series live here. Degrees stay in the low hundreds
//! at the scales this crate targets, so a dense `Vec<BigInt>` (ascending
//! powers, no trailing zeros) is the right representation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer polynomial in one variable `t`, stored densely by ascending power.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// Ascending coefficient list; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Test convenience: ascending `i64` coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn mul_scalar(&self, s: &BigInt) -> IntPoly {
        if s.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `(1 - t)^k`.
    pub fn one_minus_t_pow(k: usize) -> IntPoly {
        IntPoly::from_ints(&[1, -1]).pow(k as u32)
    }

    /// `(1 + t)^k`.
    pub fn one_plus_t_pow(k: usize) -> IntPoly {
        IntPoly::from_ints(&[1, 1]).pow(k as u32)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact quotient by `(1 - t)`; `None` when `(1 - t)` is not a factor.
    pub fn div_exact_one_minus_t(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if !self.eval_at_one().is_zero() {
            return None;
        }
        // self = (1 - t) q + r with r = self(1) = 0; synthetic division from
        // the top: q_{d-1} = -c_d, q_{k-1} = q_k - c_k.
        let d = self.coeffs.len() - 1;
        let mut q = vec![BigInt::zero(); d];
        let mut carry = -self.coeffs[d].clone();
        for k in (1..=d).rev() {
            q[k - 1] = carry.clone();
            if k >= 2 {
                carry -= &self.coeffs[k - 1];
            }
        }
        Some(IntPoly::from_coeffs(q))
    }

    /// Multiplicity of `(1 - t)` as a factor (zero polynomial reports 0).
    pub fn one_minus_t_multiplicity(&self) -> usize {
        let mut m = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            match cur.div_exact_one_minus_t() {
                Some(next) => {
                    m += 1;
                    cur = next;
                }
                None => break,
            }
        }
        m
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

/// Renders by descending power, e.g. `2t^3-t+4`; the zero polynomial is `0`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let abs = c.abs();
            if k == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let p = IntPoly::from_ints(&[1, 2]); // 1 + 2t
        let q = IntPoly::from_ints(&[-1, 2]); // -1 + 2t
        assert_eq!(&p + &q, IntPoly::from_ints(&[0, 4]));
        assert_eq!(&p - &p, IntPoly::zero());
        assert_eq!(&p * &q, IntPoly::from_ints(&[-1, 0, 4]));
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(7));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = IntPoly::from_ints(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(IntPoly::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn binomial_powers() {
        assert_eq!(
            IntPoly::one_plus_t_pow(3),
            IntPoly::from_ints(&[1, 3, 3, 1])
        );
        assert_eq!(IntPoly::one_minus_t_pow(2), IntPoly::from_ints(&[1, -2, 1]));
        assert_eq!(IntPoly::one_minus_t_pow(0), IntPoly::one());
    }

    #[test]
    fn division_by_one_minus_t() {
        // 1 - t^2 = (1 - t)(1 + t)
        let p = IntPoly::from_ints(&[1, 0, -1]);
        assert_eq!(p.div_exact_one_minus_t(), Some(IntPoly::from_ints(&[1, 1])));
        // 1 + t is not divisible
        assert_eq!(IntPoly::from_ints(&[1, 1]).div_exact_one_minus_t(), None);
        assert_eq!(p.one_minus_t_multiplicity(), 1);
        assert_eq!(IntPoly::one_minus_t_pow(4).one_minus_t_multiplicity(), 4);
        assert_eq!(IntPoly::zero().one_minus_t_multiplicity(), 0);
    }

    #[test]
    fn derivative_rule() {
        // d/dt (1 + 2t + 3t^2) = 2 + 6t
        let p = IntPoly::from_ints(&[1, 2, 3]);
        assert_eq!(p.derivative(), IntPoly::from_ints(&[2, 6]));
        assert_eq!(IntPoly::one().derivative(), IntPoly::zero());
    }

    #[test]
    fn display_formatting() {
        assert_eq!(IntPoly::from_ints(&[1, 2]).to_string(), "2t+1");
        assert_eq!(IntPoly::from_ints(&[4, -1, 2]).to_string(), "2t^2-t+4");
        assert_eq!(IntPoly::from_ints(&[0, 1]).to_string(), "t");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::from_ints(&[-1, 0, 1]).to_string(), "t^2-1");
    }
}
