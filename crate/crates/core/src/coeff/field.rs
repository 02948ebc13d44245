use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CoeffError, RatFunc, Rational};

/// Exact coefficient field used by the algebra and module engines.
///
/// Implemented for [`Rational`] (numeric parameter points) and [`RatFunc`]
/// (fully symbolic computations over the parameter ring).
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn checked_inv(&self) -> Result<Self, CoeffError>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        Ok(self.clone() * rhs.checked_inv()?)
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self;
        }
        acc
    }

    /// Splits off a printable sign: `(true, -x)` when `x` reads as a
    /// negated atom.
    fn split_sign(&self) -> (bool, Self);

    /// True when the printed form needs parentheses as a factor.
    fn is_compound(&self) -> bool;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn checked_inv(&self) -> Result<Self, CoeffError> {
        if Zero::is_zero(self) {
            Err(CoeffError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn split_sign(&self) -> (bool, Self) {
        (self.is_negative(), self.abs())
    }

    fn is_compound(&self) -> bool {
        false
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }

    fn one() -> Self {
        RatFunc::one()
    }

    fn from_rational(q: &Rational) -> Self {
        RatFunc::constant(q.clone())
    }

    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }

    fn checked_inv(&self) -> Result<Self, CoeffError> {
        self.inv()
    }

    fn split_sign(&self) -> (bool, Self) {
        if !self.is_compound() && self.numer().leading_coeff().is_some_and(|c| c.is_negative()) {
            (true, -self.clone())
        } else {
            (false, self.clone())
        }
    }

    fn is_compound(&self) -> bool {
        self.numer().nterms() > 1 || !self.denom().is_constant()
    }
}
