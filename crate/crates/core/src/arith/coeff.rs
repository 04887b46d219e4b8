use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::{Debug, Display};

/// Coefficient field for the generic polynomial and residue code.
pub trait Coeff: Clone + PartialEq + Debug + Display + Send + Sync + Zero + One + 'static {
    fn from_i64(v: i64) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn checked_div(&self, o: &Self) -> Result<Self>;
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self / o)
        }
    }
}
