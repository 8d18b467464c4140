//! Exact nonnegative rationals.
//!
//! Every elasticity in the crate is a [`Rational`]; floating point only shows
//! up when plotting.

use std::fmt;
use std::ops::{Add, Div, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A reduced fraction of arbitrary-precision nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<BigUint>);

impl Rational {
    pub fn new(numer: impl Into<BigUint>, denom: impl Into<BigUint>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(Ratio::new(numer.into(), denom)))
    }

    /// Panics on a zero denominator; for call sites where it is impossible.
    pub fn from_u64s(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(Ratio::new(BigUint::from(numer), BigUint::from(denom)))
    }

    pub fn from_integer(n: impl Into<BigUint>) -> Self {
        Rational(Ratio::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Rational(Ratio::one())
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Numerator and denominator as machine integers, if both fit.
    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        Some((self.numer().to_u64()?, self.denom().to_u64()?))
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = self.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    }

    /// `self - other`, or `None` if the result would be negative.
    pub fn checked_sub(&self, other: &Rational) -> Option<Rational> {
        if self < other {
            None
        } else {
            Some(Rational(&self.0 - &other.0))
        }
    }

    /// `|self - other|`
    pub fn abs_diff(&self, other: &Rational) -> Rational {
        if self < other {
            Rational(&other.0 - &self.0)
        } else {
            Rational(&self.0 - &other.0)
        }
    }

    pub fn checked_div(&self, other: &Rational) -> Option<Rational> {
        if other.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &other.0))
        }
    }

    /// Signed numerator and denominator, for solving linear equations.
    pub fn to_bigint_pair(&self) -> (BigInt, BigInt) {
        (
            BigInt::from(self.numer().clone()),
            BigInt::from(self.denom().clone()),
        )
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigUint = n.parse().map_err(|_| bad())?;
        let d: BigUint = d.parse().map_err(|_| bad())?;
        Rational::new(n, d)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

/// Panics on division by zero, like the integer operators.
impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        Rational(&self.0 / &rhs.0)
    }
}
