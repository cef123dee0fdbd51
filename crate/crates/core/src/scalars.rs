//! Exact scalars: arbitrary-precision rationals and truncated power series in h.
//!
//! An [`HSeries`] is an element of Q[h]/(h^{N+1}) for a fixed truncation order N.
//! All arithmetic is bit-exact; operations between series of different orders panic,
//! since mixing truncation levels silently is always a bug upstream.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

pub type Rational = num::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    assert!(denom != 0, "zero denominator");
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses "p" or "p/q" with optional sign. The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|e| Error::config(format!("cannot parse rational {s:?}: {e}")))
}

/// Formats as "p" when the denominator is 1, otherwise "p/q".
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact binomial coefficient; used by the multinomial coproduct expansion.
pub fn binomial(n: u64, k: u64) -> BigInt {
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

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Truncated polynomial in h: `coeffs[l]` multiplies h^l and the length is
/// always `order + 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HSeries {
    coeffs: Vec<Rational>,
}

impl HSeries {
    pub fn zero(order: usize) -> Self {
        HSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// c · h^l, which is zero when l exceeds the order.
    pub fn monomial(order: usize, l: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if l <= order {
            s.coeffs[l] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the h^0 coefficient");
        HSeries { coeffs }
    }

    /// Reinterprets at the given order: shorter inputs are zero-padded and any
    /// nonzero coefficient beyond the order is a configuration error.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        let mut coeffs = self.coeffs.clone();
        for (l, c) in coeffs.iter().enumerate().skip(order + 1) {
            if !c.is_zero() {
                return Err(Error::config(format!(
                    "series has nonzero coefficient at h^{l} but the context order is {order}"
                )));
            }
        }
        coeffs.resize(order + 1, Rational::zero());
        coeffs.truncate(order + 1);
        Ok(HSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, l: usize) -> &Rational {
        &self.coeffs[l]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// Lowest l with a nonzero coefficient, or None for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplication by h^l; coefficients pushed past the order are discarded.
    pub fn shift(&self, l: usize) -> Self {
        let order = self.order();
        let mut s = Self::zero(order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + l <= order {
                s.coeffs[i + l] = c.clone();
            }
        }
        s
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "mixed truncation orders");
    }

    /// Multiplicative inverse; defined exactly when the h^0 coefficient is nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let lambda = &self.coeffs[0];
        if lambda.is_zero() {
            return Err(Error::domain("series with zero constant term has no inverse".to_string()));
        }
        let order = self.order();
        // self = lambda (1 - w) with w ≡ 0 mod h, so the inverse is lambda^{-1} Σ w^j.
        let mut w = Self::zero(order);
        for l in 1..=order {
            w.coeffs[l] = -&self.coeffs[l] / lambda;
        }
        let mut acc = Self::one(order);
        let mut pw = Self::one(order);
        for _ in 1..=order {
            pw = &pw * &w;
            acc = &acc + &pw;
        }
        Ok(acc.scale(&lambda.recip()))
    }

    /// exp of a series with zero constant term; the sum terminates at the order.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::domain("exp needs a series that vanishes at h^0".to_string()));
        }
        let order = self.order();
        let mut acc = Self::one(order);
        let mut term = Self::one(order);
        for j in 1..=order {
            term = &term * self;
            term = term.scale(&Rational::new(BigInt::one(), BigInt::from(j as i64)));
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// log of a series with constant term exactly 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::domain("log needs a series with constant term 1".to_string()));
        }
        let order = self.order();
        let mut v = self.clone();
        v.coeffs[0] = Rational::zero();
        let mut acc = Self::zero(order);
        let mut pw = Self::one(order);
        for j in 1..=order {
            pw = &pw * &v;
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc = &acc + &pw.scale(&Rational::new(BigInt::from(sign), BigInt::from(j as i64)));
        }
        Ok(acc)
    }
}

impl Add for &HSeries {
    type Output = HSeries;
    fn add(self, rhs: &HSeries) -> HSeries {
        self.check_order(rhs);
        HSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &HSeries {
    type Output = HSeries;
    fn sub(self, rhs: &HSeries) -> HSeries {
        self.check_order(rhs);
        HSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &HSeries {
    type Output = HSeries;
    fn mul(self, rhs: &HSeries) -> HSeries {
        self.check_order(rhs);
        let order = self.order();
        let mut out = HSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        out
    }
}

impl Neg for &HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        HSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match l {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a} ")?;
                    }
                    if l == 1 {
                        write!(f, "h")?;
                    } else {
                        write!(f, "h^{l}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(coeffs: &[(i64, i64)]) -> HSeries {
        HSeries::from_coeffs(coeffs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn truncation_drops_high_powers() {
        let h = HSeries::monomial(3, 1, rat_int(1));
        let h3 = &(&h * &h) * &h;
        assert_eq!(&h3 * &h, HSeries::zero(3));
        assert_eq!(h3, HSeries::monomial(3, 3, rat_int(1)));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let u = s(&[(2, 1), (3, 1), (-1, 2), (0, 1), (5, 7)]);
        let v = u.inverse().unwrap();
        assert!((&u * &v).is_one());
    }

    #[test]
    fn inverse_requires_unit_constant_term() {
        let u = s(&[(0, 1), (1, 1)]);
        assert!(matches!(u.inverse(), Err(Error::Domain(_))));
    }

    #[test]
    fn exp_log_round_trip() {
        let a = s(&[(0, 1), (1, 1), (-2, 3), (1, 5), (7, 2)]);
        let u = a.exp().unwrap();
        assert_eq!(u.log().unwrap(), a);
        let b = s(&[(1, 1), (4, 3), (0, 1), (-1, 6), (2, 1)]);
        assert_eq!(b.log().unwrap().exp().unwrap(), b);
    }

    #[test]
    fn exp_is_multiplicative_for_commuting_arguments() {
        let a = s(&[(0, 1), (1, 2), (0, 1), (3, 1), (0, 1)]);
        let b = s(&[(0, 1), (-1, 3), (2, 1), (0, 1), (1, 1)]);
        let lhs = (&a + &b).exp().unwrap();
        let rhs = &a.exp().unwrap() * &b.exp().unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_round_trip_formats() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-8, 2)), "-4");
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4, 1));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    #[should_panic(expected = "mixed truncation orders")]
    fn mixed_orders_panic() {
        let _ = &HSeries::one(2) + &HSeries::one(3);
    }

    #[test]
    fn with_order_pads_and_rejects() {
        let short = s(&[(1, 1), (2, 1)]);
        assert_eq!(short.with_order(4).unwrap().order(), 4);
        let long = s(&[(1, 1), (0, 1), (3, 1)]);
        assert!(long.with_order(1).is_err());
        assert_eq!(long.with_order(2).unwrap(), long);
    }
}
