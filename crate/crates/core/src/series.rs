//! Exact rational functions `Q(t)/(1-t)^d` in pole normal form.
//!
//! Every Hilbert series handled by this crate has this shape. Normal form
//! means the `(1-t)` factors shared by numerator and denominator are
//! cancelled, so for `d > 0` the numerator satisfies `Q(1) != 0` and `d` is
//! the literal pole order (the Krull dimension for series of graded rings).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::IntPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("the zero series has no Hilbert data")]
    ZeroSeries,
    #[error("invalid series JSON: {0}")]
    Json(String),
}

/// `Q(t)/(1-t)^d` with `Q(1) != 0` whenever `d > 0`; zero is `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoleSeries {
    num: IntPoly,
    pole: usize,
}

impl PoleSeries {
    pub fn zero() -> Self {
        PoleSeries {
            num: IntPoly::zero(),
            pole: 0,
        }
    }

    /// The unit series 1 (Hilbert series of the base field).
    pub fn one() -> Self {
        PoleSeries {
            num: IntPoly::one(),
            pole: 0,
        }
    }

    /// `1/(1-t)^d`, the series of a polynomial ring in `d` variables.
    pub fn free(d: usize) -> Self {
        PoleSeries {
            num: IntPoly::one(),
            pole: d,
        }
    }

    /// Normalizes `num/(1-t)^pole`. Common `(1-t)` factors are cancelled; a
    /// negative pole is folded into the numerator as `(1-t)^{|pole|}`.
    pub fn new(num: IntPoly, pole: i64) -> Self {
        if num.is_zero() {
            return PoleSeries::zero();
        }
        let (mut num, mut pole) = if pole < 0 {
            (&num * &IntPoly::one_minus_t_pow((-pole) as usize), 0usize)
        } else {
            (num, pole as usize)
        };
        while pole > 0 {
            match num.div_exact_one_minus_t() {
                Some(q) => {
                    num = q;
                    pole -= 1;
                }
                None => break,
            }
        }
        PoleSeries { num, pole }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    /// Pole order at `t = 1`; the Krull dimension for graph series.
    pub fn pole(&self) -> usize {
        self.pole
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &PoleSeries) -> PoleSeries {
        let d = self.pole.max(rhs.pole);
        let a = &self.num * &IntPoly::one_minus_t_pow(d - self.pole);
        let b = &rhs.num * &IntPoly::one_minus_t_pow(d - rhs.pole);
        PoleSeries::new(&a + &b, d as i64)
    }

    pub fn sub(&self, rhs: &PoleSeries) -> PoleSeries {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> PoleSeries {
        PoleSeries {
            num: -&self.num,
            pole: self.pole,
        }
    }

    pub fn mul(&self, rhs: &PoleSeries) -> PoleSeries {
        PoleSeries::new(&self.num * &rhs.num, (self.pole + rhs.pole) as i64)
    }

    /// Multiply by `(1-t)^k` (`k` may be negative).
    pub fn mul_one_minus_t_pow(&self, k: i64) -> PoleSeries {
        if self.is_zero() {
            return PoleSeries::zero();
        }
        PoleSeries::new(self.num.clone(), self.pole as i64 - k)
    }

    /// Multiply by `t^k`.
    pub fn mul_t_pow(&self, k: usize) -> PoleSeries {
        PoleSeries::new(self.num.shift_up(k), self.pole as i64)
    }

    /// Power-series coefficients of `t^0..t^n`.
    pub fn taylor(&self, n: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n + 1];
        if self.is_zero() {
            return out;
        }
        if self.pole == 0 {
            for (k, slot) in out.iter_mut().enumerate() {
                *slot = self.num.coeff(k);
            }
            return out;
        }
        // 1/(1-t)^d = sum_k binom(k+d-1, d-1) t^k, built incrementally.
        let d = self.pole;
        let mut binom = Vec::with_capacity(n + 1);
        binom.push(BigInt::one());
        for k in 1..=n {
            let prev: &BigInt = &binom[k - 1];
            let next = (prev * BigInt::from(k + d - 1)) / BigInt::from(k);
            binom.push(next);
        }
        let deg = self.num.degree().unwrap();
        for k in 0..=n {
            let mut acc = BigInt::zero();
            for j in 0..=deg.min(k) {
                acc += self.num.coeff(j) * &binom[k - j];
            }
            out[k] = acc;
        }
        out
    }

    /// Dimension, multiplicity, the `e_i` coefficients and the Hilbert
    /// polynomial in the binomial basis. Fails on the zero series.
    pub fn hilbert_data(&self) -> Result<HilbertData, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroSeries);
        }
        let d = self.pole;
        // e_i = Q^(i)(1) / i!, by repeated differentiation with an exact
        // division check.
        let mut e = Vec::with_capacity(d);
        let mut q = self.num.clone();
        let mut factorial = BigInt::one();
        for i in 0..d {
            if i > 0 {
                q = q.derivative();
                factorial *= BigInt::from(i);
            }
            let val = q.eval_at_one();
            let (quot, rem) = val.div_rem(&factorial);
            assert!(rem.is_zero(), "Q^({i})(1) must be divisible by {i}!");
            e.push(quot);
        }
        let multiplicity = self.num.eval_at_one();
        // P(X) = sum_{i=0}^{d-1} (-1)^{d-1-i} e_{d-1-i} binom(X+i, i)
        let mut hilbert_polynomial = Vec::with_capacity(d);
        for i in 0..d {
            let coef = e[d - 1 - i].clone();
            hilbert_polynomial.push(if (d - 1 - i).is_multiple_of(2) {
                coef
            } else {
                -coef
            });
        }
        Ok(HilbertData {
            dim: d,
            multiplicity,
            e,
            hilbert_polynomial,
        })
    }

    /// Canonical JSON value `{"num":[c0,c1,...],"pole":d}` with exact
    /// arbitrary-precision coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("series serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, SeriesError> {
        serde_json::from_value(value.clone()).map_err(|e| SeriesError::Json(e.to_string()))
    }
}

/// Exact `BigInt -> JSON number` (arbitrary precision, no float detour).
pub fn bigint_to_number(c: &BigInt) -> serde_json::Number {
    serde_json::from_str(&c.to_string()).expect("integer literal is a JSON number")
}

impl Serialize for PoleSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PoleSeries", 2)?;
        let num: Vec<serde_json::Number> = self.num.coeffs().iter().map(bigint_to_number).collect();
        s.serialize_field("num", &num)?;
        s.serialize_field("pole", &self.pole)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for PoleSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct SeriesVisitor;
        impl<'de> Visitor<'de> for SeriesVisitor {
            type Value = PoleSeries;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map {\"num\": [...], \"pole\": d}")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<PoleSeries, A::Error> {
                let mut num: Option<Vec<serde_json::Number>> = None;
                let mut pole: Option<usize> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "num" => num = Some(map.next_value()?),
                        "pole" => pole = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["num", "pole"])),
                    }
                }
                let num = num.ok_or_else(|| de::Error::missing_field("num"))?;
                let pole = pole.ok_or_else(|| de::Error::missing_field("pole"))?;
                let coeffs = num
                    .iter()
                    .map(|n| {
                        n.to_string()
                            .parse::<BigInt>()
                            .map_err(|_| de::Error::custom(format!("non-integer coefficient {n}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(PoleSeries::new(IntPoly::from_coeffs(coeffs), pole as i64))
            }
        }
        deserializer.deserialize_map(SeriesVisitor)
    }
}

/// Renders like `(2t+1)/(1-t)^4`; pole 0 drops the denominator.
impl fmt::Display for PoleSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let num = self.num.to_string();
        if self.pole == 0 {
            return write!(f, "{num}");
        }
        let multi_term = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        if multi_term {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        if self.pole == 1 {
            write!(f, "/(1-t)")
        } else {
            write!(f, "/(1-t)^{}", self.pole)
        }
    }
}

/// Numerical invariants extracted from a nonzero series of dimension `d`:
/// `e_i = Q^(i)(1)/i!` for `i < d`, and the Hilbert polynomial
/// `P(X) = sum_i c_i binom(X+i, i)` through its coefficients `c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub dim: usize,
    /// `e_0 = Q(1)`; for dimension 0 this is the total length.
    pub multiplicity: BigInt,
    /// `e_0 .. e_{d-1}`.
    pub e: Vec<BigInt>,
    /// Binomial-basis coefficients `c_0 .. c_{d-1}` of the Hilbert polynomial.
    pub hilbert_polynomial: Vec<BigInt>,
}

impl HilbertData {
    /// Evaluates the Hilbert polynomial at a nonnegative integer.
    pub fn eval_polynomial(&self, k: usize) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, c) in self.hilbert_polynomial.iter().enumerate() {
            acc += c * binomial(k + i, i);
        }
        acc
    }

    /// `{"dim":..,"multiplicity":..,"e":[..],"hilbert_polynomial":[..]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let nums =
            |v: &[BigInt]| -> Vec<serde_json::Number> { v.iter().map(bigint_to_number).collect() };
        serde_json::json!({
            "dim": self.dim,
            "multiplicity": bigint_to_number(&self.multiplicity),
            "e": nums(&self.e),
            "hilbert_polynomial": nums(&self.hilbert_polynomial),
        })
    }

    /// Human form, e.g. `8*binom(X+4,4)-12*binom(X+3,3)+...`.
    pub fn polynomial_string(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.hilbert_polynomial.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let abs = c.abs();
            if i == 0 {
                // binom(X, 0) = 1
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&format!("binom(X+{i},{i})"));
            } else {
                out.push_str(&format!("{abs}*binom(X+{i},{i})"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Exact `binom(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(coeffs: &[i64], pole: i64) -> PoleSeries {
        PoleSeries::new(IntPoly::from_ints(coeffs), pole)
    }

    #[test]
    fn normalize_cancels_shared_factors() {
        // (1 - t^2)/(1-t)^4 = (1+t)/(1-t)^3
        let s = series(&[1, 0, -1], 4);
        assert_eq!(s.num(), &IntPoly::from_ints(&[1, 1]));
        assert_eq!(s.pole(), 3);
    }

    #[test]
    fn normalize_keeps_reduced_numerator() {
        // (2t+1)/(1-t)^4 already has Q(1) = 3
        let s = series(&[1, 2], 4);
        assert_eq!(s.num(), &IntPoly::from_ints(&[1, 2]));
        assert_eq!(s.pole(), 4);
    }

    #[test]
    fn normalize_folds_excess_into_numerator() {
        // (1-t)^2/(1-t) leaves the factor (1-t) with pole 0
        let s = series(&[1, -2, 1], 1);
        assert_eq!(s.num(), &IntPoly::from_ints(&[1, -1]));
        assert_eq!(s.pole(), 0);
    }

    #[test]
    fn normalize_negative_pole() {
        let s = PoleSeries::new(IntPoly::one(), -2);
        assert_eq!(s.num(), &IntPoly::from_ints(&[1, -2, 1]));
        assert_eq!(s.pole(), 0);
    }

    #[test]
    fn add_identity_and_cancellation() {
        let a = series(&[1], 2);
        assert_eq!(a.add(&PoleSeries::zero()), a);
        let b = series(&[1, 1], 3);
        assert_eq!(b.sub(&b), PoleSeries::zero());
    }

    #[test]
    fn cone_difference() {
        // (pt+1)/(1-t)^{p+2} - ((p-1)t+1)/(1-t)^{p+1} at p=2 is (t^2+2t)/(1-t)^4
        let lhs = series(&[1, 2], 4).sub(&series(&[1, 1], 3));
        assert_eq!(lhs, series(&[0, 2, 1], 4));
    }

    #[test]
    fn mul_and_shifts() {
        // (1-t)^2 * ((t+1)/(1-t)^3)^2 = (t+1)^2/(1-t)^4
        let k2 = series(&[1, 1], 3);
        let prod = k2.mul(&k2).mul_one_minus_t_pow(2);
        assert_eq!(prod, series(&[1, 2, 1], 4));
        assert_eq!(k2.mul_one_minus_t_pow(0), k2);
        let a = series(&[1, 2], 4);
        assert_eq!(a.mul(&PoleSeries::free(2)), series(&[1, 2], 6));
    }

    #[test]
    fn taylor_expansion() {
        // (1+t)/(1-t)^3: 4 variables modulo one quadric
        let s = series(&[1, 1], 3);
        assert_eq!(
            s.taylor(2),
            vec![BigInt::from(1), BigInt::from(4), BigInt::from(9)]
        );
        let free2 = PoleSeries::free(2);
        assert_eq!(free2.taylor(3), [1, 2, 3, 4].map(BigInt::from).to_vec());
        assert_eq!(
            series(&[1, 1], 0).taylor(2),
            [1, 1, 0].map(BigInt::from).to_vec()
        );
    }

    #[test]
    fn hilbert_data_complete_graph() {
        // K_n: ((n-1)t+1)/(1-t)^{n+1} has e_0 = n, e_1 = n-1, rest 0
        for n in 1..=6i64 {
            let s = series(&[1, n - 1], n + 1);
            let h = s.hilbert_data().unwrap();
            assert_eq!(h.dim, (n + 1) as usize);
            assert_eq!(h.multiplicity, BigInt::from(n));
            assert_eq!(h.e[0], BigInt::from(n));
            if n >= 2 {
                assert_eq!(h.e[1], BigInt::from(n - 1));
            }
            for i in 2..h.e.len() {
                assert!(h.e[i].is_zero());
            }
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn hilbert_polynomial_matches_taylor() {
        // (1+t)^3/(1-t)^5 (the 4-path series)
        let s = PoleSeries::new(IntPoly::one_plus_t_pow(3), 5);
        let h = s.hilbert_data().unwrap();
        assert_eq!(h.e, [8, 12, 6, 1, 0].map(BigInt::from).to_vec());
        let taylor = s.taylor(10);
        for k in 4..=10 {
            assert_eq!(h.eval_polynomial(k), taylor[k], "k = {k}");
        }
    }

    #[test]
    fn zero_series_has_no_data() {
        assert_eq!(
            PoleSeries::zero().hilbert_data(),
            Err(SeriesError::ZeroSeries)
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(series(&[1, 2], 4).to_string(), "(2t+1)/(1-t)^4");
        assert_eq!(series(&[1], 2).to_string(), "1/(1-t)^2");
        assert_eq!(series(&[1, 1], 0).to_string(), "t+1");
        assert_eq!(series(&[3], 1).to_string(), "3/(1-t)");
        assert_eq!(PoleSeries::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let s = series(&[1, 2, 0, -4], 7);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"num":[1,2,0,-4],"pole":7}"#);
        let back: PoleSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn json_huge_coefficients_survive() {
        let big = BigInt::from(2).pow(130);
        let s = PoleSeries::new(IntPoly::from_coeffs(vec![BigInt::one(), big.clone()]), 3);
        let text = serde_json::to_string(&s).unwrap();
        let back: PoleSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back.num().coeff(1), big);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 0), BigInt::from(1));
        assert_eq!(binomial(2, 5), BigInt::from(0));
    }
}
