//! Numeric backends shared by the floating and exact lattice code.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exact::Rational;

pub trait Scalar:
    Clone
    + PartialOrd
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Nearest integer, halves rounded away from zero.
    fn round_i64(&self) -> i64;
    fn floor_i64(&self) -> i64;
    fn ceil_i64(&self) -> i64;
    fn to_f64(&self) -> f64;
    /// Whether `|self - 1|` is within the flavor's unimodularity tolerance.
    fn is_unit_det(&self) -> bool;
    /// Widening applied to enumeration bounds of size `self` to absorb
    /// rounding; zero for exact arithmetic.
    fn slack(&self) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn round_i64(&self) -> i64 {
        self.round() as i64
    }
    fn floor_i64(&self) -> i64 {
        self.floor() as i64
    }
    fn ceil_i64(&self) -> i64 {
        self.ceil() as i64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_unit_det(&self) -> bool {
        (self - 1.0).abs() <= 1e-9
    }
    fn slack(&self) -> Self {
        1e-9 * (1.0 + f64::abs(*self))
    }
}

fn bigint_to_i64(v: BigInt) -> i64 {
    v.to_i64().expect("integer coordinate exceeds i64")
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as num_traits::One>::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn round_i64(&self) -> i64 {
        bigint_to_i64(self.round().to_integer())
    }
    fn floor_i64(&self) -> i64 {
        bigint_to_i64(self.floor().to_integer())
    }
    fn ceil_i64(&self) -> i64 {
        bigint_to_i64(self.ceil().to_integer())
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_unit_det(&self) -> bool {
        *self == <Rational as num_traits::One>::one()
    }
    fn slack(&self) -> Self {
        <Rational as Zero>::zero()
    }
}

pub(crate) fn max_abs<S: Scalar>(values: &[S]) -> S {
    values.iter().fold(S::zero(), |acc, v| {
        let a = v.abs();
        if a > acc {
            a
        } else {
            acc
        }
    })
}
