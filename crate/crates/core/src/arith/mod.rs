//! Exact arithmetic: big rationals, polynomials and rational functions in q.

mod coeff;
mod qpoly;
mod ratfunc;

pub use coeff::Coeff;
pub use qpoly::QPoly;
pub use ratfunc::RatFuncQ;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type ExactRational = BigRational;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Integer power of a rational, negative exponents allowed.
pub fn rat_pow(x: &BigRational, e: i64) -> Result<BigRational> {
    if e < 0 && x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut acc = BigRational::one();
    let base = if e < 0 { x.recip() } else { x.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    Ok(acc)
}

/// Serialized form `num/den` (always with an explicit denominator).
pub fn rational_to_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// w_n(x) = prod_{i=1}^n (1 - x^i), as a rational function of q after substituting x.
pub fn w_poly(n: usize, x: &RatFuncQ) -> RatFuncQ {
    let mut acc = RatFuncQ::one();
    let mut xp = RatFuncQ::one();
    for _ in 0..n {
        xp = &xp * x;
        acc = &acc * &(&RatFuncQ::one() - &xp);
    }
    acc
}

pub(crate) fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(x))
}

pub(crate) fn ser_rationals<S: serde::Serializer>(xs: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&rational_to_string(x))?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let x = rat(-32, 27);
        assert_eq!(rational_to_string(&x), "-32/27");
        assert_eq!(parse_rational("-32/27").unwrap(), x);
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn w_values() {
        // w_2(-1/q) = (1 + 1/q)(1 - 1/q^2); at q = 3 this is 32/27.
        let x = -RatFuncQ::q_pow(-1);
        assert_eq!(w_poly(2, &x).eval(&int(3)).unwrap(), rat(32, 27));
        assert_eq!(w_poly(0, &x), RatFuncQ::one());
    }

    #[test]
    fn rat_pow_negative() {
        assert_eq!(rat_pow(&int(3), -2).unwrap(), rat(1, 9));
        assert!(rat_pow(&int(0), -1).is_err());
    }
}
