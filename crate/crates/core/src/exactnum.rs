//! Exact integers, rationals and dense univariate polynomials over them.
//!
//! Big integers and rationals come from `num-bigint` / `num-rational`; the
//! polynomial types are dense coefficient vectors stored from degree zero
//! upward and always kept in canonical form (no trailing zeros).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(int(num), int(den))
}

/// Exact quotient of two integers, failing when `den` does not divide `num`.
pub fn div_exact(num: &Integer, den: &Integer) -> Result<Integer> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InexactDivision(format!("{num} / {den}")));
    }
    Ok(q)
}

/// Converts a rational that is known to be integral.
pub fn rational_to_integer(r: &Rational) -> Result<Integer> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::InexactDivision(format!("{r} is not an integer")))
    }
}

/// Natural logarithm of a positive big integer, robust to values beyond `f64`.
pub fn ln_integer(v: &Integer) -> f64 {
    debug_assert!(v.is_positive());
    let bits = v.bits();
    if bits <= 1000 {
        num_traits::ToPrimitive::to_f64(v).unwrap().ln()
    } else {
        let shift = bits - 64;
        let top: Integer = v >> shift;
        num_traits::ToPrimitive::to_f64(&top).unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

pub fn ln_rational(v: &Rational) -> f64 {
    ln_integer(v.numer()) - ln_integer(v.denom())
}

/// Integers print as plain decimals, other rationals as `num/den`.
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapters writing integers as decimal strings.
pub mod decimal {
    use super::Integer;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Integer, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::Integer;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &Option<Integer>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }
    }
}

macro_rules! dense_poly {
    ($name:ident, $coef:ty) => {
        #[derive(Clone, PartialEq, Eq, Hash, Default)]
        pub struct $name {
            coeffs: Vec<$coef>,
        }

        impl $name {
            pub fn zero() -> Self {
                Self { coeffs: Vec::new() }
            }

            pub fn one() -> Self {
                Self::constant(<$coef>::one())
            }

            pub fn constant(c: $coef) -> Self {
                Self::from_coeffs(vec![c])
            }

            /// `c * x^k`.
            pub fn monomial(c: $coef, k: usize) -> Self {
                let mut coeffs = vec![<$coef>::zero(); k + 1];
                coeffs[k] = c;
                Self::from_coeffs(coeffs)
            }

            pub fn x() -> Self {
                Self::monomial(<$coef>::one(), 1)
            }

            /// Coefficients from degree zero upward; trailing zeros are dropped.
            pub fn from_coeffs(mut coeffs: Vec<$coef>) -> Self {
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
                Self { coeffs }
            }

            pub fn coeffs(&self) -> &[$coef] {
                &self.coeffs
            }

            pub fn coeff(&self, k: usize) -> $coef {
                self.coeffs.get(k).cloned().unwrap_or_else(<$coef>::zero)
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }

            /// `None` for the zero polynomial.
            pub fn degree(&self) -> Option<usize> {
                self.coeffs.len().checked_sub(1)
            }

            pub fn leading(&self) -> Option<&$coef> {
                self.coeffs.last()
            }

            /// `p(-x)`.
            pub fn reflect(&self) -> Self {
                Self::from_coeffs(
                    self.coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                        .collect(),
                )
            }

            pub fn scale(&self, c: &$coef) -> Self {
                Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
            }

            pub fn shift(&self, k: usize) -> Self {
                if self.is_zero() {
                    return Self::zero();
                }
                let mut coeffs = vec![<$coef>::zero(); k];
                coeffs.extend(self.coeffs.iter().cloned());
                Self { coeffs }
            }

            pub fn pow(&self, mut e: u32) -> Self {
                let mut base = self.clone();
                let mut acc = Self::one();
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
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                let len = self.coeffs.len().max(rhs.coeffs.len());
                $name::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                let len = self.coeffs.len().max(rhs.coeffs.len());
                $name::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name { coeffs: self.coeffs.iter().map(|c| -c).collect() }
            }
        }

        impl Mul for &$name {
            type Output = $name;
            fn mul(self, rhs: &$name) -> $name {
                if self.is_zero() || rhs.is_zero() {
                    return $name::zero();
                }
                let mut out = vec![<$coef>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                $name::from_coeffs(out)
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                &self + &rhs
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                &self - &rhs
            }
        }

        impl Mul for $name {
            type Output = $name;
            fn mul(self, rhs: $name) -> $name {
                &self * &rhs
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.is_zero() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (k, c) in self.coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.is_negative();
                    let mag = c.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { '-' } else { '+' })?;
                    }
                    first = false;
                    let unit = mag.is_one();
                    match k {
                        0 => write!(f, "{mag}")?,
                        1 if unit => write!(f, "x")?,
                        1 => write!(f, "{mag}*x")?,
                        _ if unit => write!(f, "x^{k}")?,
                        _ => write!(f, "{mag}*x^{k}")?,
                    }
                }
                Ok(())
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({})", stringify!($name), self)
            }
        }
    };
}

dense_poly!(IntPoly, Integer);
dense_poly!(RatPoly, Rational);

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, v: &Integer) -> Integer {
        self.coeffs
            .iter()
            .rev()
            .fold(Integer::zero(), |acc, c| acc * v + c)
    }

    pub fn eval_i64(&self, v: i64) -> Integer {
        self.eval(&int(v))
    }

    /// Exact quotient `num / den` in Z[x].
    ///
    /// Long division with integer coefficients: every step must divide the
    /// leading coefficient exactly, and the final remainder must vanish.
    pub fn div_exact(&self, den: &IntPoly) -> Result<IntPoly> {
        let Some(dd) = den.degree() else {
            return Err(Error::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let nd = self.degree().unwrap();
        if nd < dd {
            return Err(Error::InexactDivision(format!("({self}) / ({den})")));
        }
        let lead = den.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Integer::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("({self}) / ({den})")));
            }
            for (i, b) in den.coeffs.iter().enumerate() {
                rem[k + i] -= &c * b;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!("({self}) / ({den})")));
        }
        Ok(IntPoly::from_coeffs(quot))
    }

    pub fn to_rational(&self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }
}

impl RatPoly {
    pub fn eval(&self, v: &Integer) -> Rational {
        let v = Rational::from_integer(v.clone());
        self.eval_rational(&v)
    }

    pub fn eval_rational(&self, v: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * v + c)
    }

    /// Returns the polynomial as an element of Z[x] if all coefficients are integral.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::from_coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        assert_eq!(&p(&[3, 2, 1]) * &IntPoly::zero(), IntPoly::zero());
        assert_eq!(&p(&[1, 0, 1]) + &p(&[0, 0, -1]), p(&[1]));
        assert_eq!(p(&[1, 0, 1]).degree(), Some(2));
        assert_eq!((&p(&[1, 0, 1]) - &p(&[1, 0, 1])).degree(), None);
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[-1, 0, 1]).div_exact(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        assert!(matches!(
            p(&[1, 0, 1]).div_exact(&p(&[-1, 1])),
            Err(Error::InexactDivision(_))
        ));
        assert_eq!(p(&[1, 1]).div_exact(&IntPoly::zero()), Err(Error::DivisionByZero));
        // (x^2 - 1)(x^2 - x) / (x - 1)^2 = x^2 + x
        let v = &p(&[-1, 0, 1]) * &p(&[0, -1, 1]);
        let u = p(&[-1, 1]).pow(2);
        assert_eq!(v.div_exact(&u).unwrap(), p(&[0, 1, 1]));
        // non-monic divisor whose leading coefficient does not divide
        assert!(p(&[0, 1]).div_exact(&p(&[0, 2])).is_err());
        assert_eq!(p(&[0, 4]).div_exact(&p(&[0, 2])).unwrap(), p(&[2]));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[-1, 0, 1]).eval_i64(3), int(8));
        assert_eq!(p(&[-1, 0, 1]).eval_i64(-3), int(8));
        assert_eq!(p(&[0, 1, 1]).eval_i64(-3), int(6));
        assert_eq!(p(&[0, 1, 1]).reflect(), p(&[0, -1, 1]));
    }

    #[test]
    fn rational_canonical_form() {
        let r = Rational::new(int(4), int(-6));
        assert_eq!(r.numer(), &int(-2));
        assert_eq!(r.denom(), &int(3));
        assert_eq!(rat(3, 1).to_string(), "3");
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, -1, 1]).to_string(), "x^2 - x");
        assert_eq!(p(&[-1, 0, 2]).to_string(), "2*x^2 - 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn log_of_huge_integers() {
        let big = Integer::from(3u8).pow(2000);
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_integer(&big) - expected).abs() / expected < 1e-14);
        assert!((ln_integer(&int(1000)) - 1000f64.ln()).abs() < 1e-14);
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|c| IntPoly::from_i64(&c))
    }

    proptest! {
        #[test]
        fn div_exact_inverts_mul(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }

        #[test]
        fn eval_is_ring_homomorphism(a in small_poly(), b in small_poly(), v in -7i64..7) {
            let v = int(v);
            prop_assert_eq!((&a * &b).eval(&v), a.eval(&v) * b.eval(&v));
            prop_assert_eq!((&a + &b).eval(&v), a.eval(&v) + b.eval(&v));
        }
    }
}
