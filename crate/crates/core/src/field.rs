//! Scalar domains for the generic linear algebra.
//!
//! A domain is a context value implementing [`Field`]; elements are plain
//! data. Operations are fallible because exact algebraic arithmetic can hit a
//! configured degree cap.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebraic::{AlgebraicNumber, BinaryOp, Limits};
use crate::error::{Error, Result};

pub trait Field: Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let bi = self.inv(b)?;
        self.mul(a, &bi)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        Ok(a + b)
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        Ok(a - b)
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        Ok(a * b)
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
}

/// Algebraic numbers under the given degree caps.
#[derive(Clone, Copy, Debug, Default)]
pub struct Algebraics {
    pub limits: Limits,
}

impl Field for Algebraics {
    type Elem = AlgebraicNumber;

    fn zero(&self) -> AlgebraicNumber {
        AlgebraicNumber::zero()
    }
    fn one(&self) -> AlgebraicNumber {
        AlgebraicNumber::one()
    }
    fn from_i64(&self, n: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_int(n)
    }
    fn is_zero(&self, a: &AlgebraicNumber) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        AlgebraicNumber::binary(BinaryOp::Add, a, b, &self.limits)
    }
    fn sub(&self, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        AlgebraicNumber::binary(BinaryOp::Sub, a, b, &self.limits)
    }
    fn mul(&self, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        AlgebraicNumber::binary(BinaryOp::Mul, a, b, &self.limits)
    }
    fn neg(&self, a: &AlgebraicNumber) -> AlgebraicNumber {
        a.neg()
    }
    fn inv(&self, a: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        AlgebraicNumber::binary(BinaryOp::Div, &AlgebraicNumber::one(), a, &self.limits)
    }
    fn div(&self, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        AlgebraicNumber::binary(BinaryOp::Div, a, b, &self.limits)
    }
}
