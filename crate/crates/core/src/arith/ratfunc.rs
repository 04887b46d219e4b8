use super::{Coeff, QPoly};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element of Q(q) kept as num/den with gcd(num, den) = 1 and den monic.
/// Negative powers of q live in the denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: QPoly,
    den: QPoly,
}

impl RatFuncQ {
    pub fn zero() -> Self {
        RatFuncQ { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        RatFuncQ { num: QPoly::constant(c), den: QPoly::one() }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFuncQ { num: p, den: QPoly::one() }
    }

    pub fn q() -> Self {
        Self::from_poly(QPoly::q())
    }

    /// q^k for any integer k.
    pub fn q_pow(k: i64) -> Self {
        let m = QPoly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            RatFuncQ { num: QPoly::one(), den: m }
        }
    }

    /// c * q^k.
    pub fn monomial(c: BigRational, k: i64) -> Self {
        Self::q_pow(k).scale(&c)
    }

    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // Fast path: denominator a pure power of q.
        if let Some(k) = den.as_monomial() {
            let lead = den.leading();
            let s = k.min(num.low_degree().unwrap_or(0));
            let inv = lead.recip();
            return RatFuncQ { num: num.shift_down(s).scale(&inv), den: QPoly::monomial(BigRational::one(), k - s) };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) =
            if g.is_one() { (num, den) } else { (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides")) };
        let lead = d.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFuncQ { num: n, den: d }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFuncQ { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluate at a rational point; a vanishing denominator is a pole.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// `Some((p, k))` with self = p(q) * q^-k when the denominator is a power of q.
    pub fn as_laurent(&self) -> Option<(QPoly, usize)> {
        self.den.as_monomial().map(|k| (self.num.clone(), k))
    }

    /// Constant value if self lies in Q.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.den.is_one() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.coeff(0))
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.den.as_monomial() {
            return f.write_str(&self.num.fmt_terms(-(k as i64)));
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFuncQ({self})")
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, o: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFuncQ::normalized(&self.num + &o.num, self.den.clone());
        }
        if let (Some(a), Some(b)) = (self.den.as_monomial(), o.den.as_monomial()) {
            let k = a.max(b);
            let n = &self.num.shift_up(k - a) + &o.num.shift_up(k - b);
            return RatFuncQ::normalized(n, QPoly::monomial(BigRational::one(), k));
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFuncQ::normalized(n, &self.den * &o.den)
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, o: &RatFuncQ) -> RatFuncQ {
        self + &(-o)
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, o: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || o.is_zero() {
            return RatFuncQ::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFuncQ { num: &self.num * &o.num, den: QPoly::one() };
        }
        RatFuncQ::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFuncQ {
            type Output = RatFuncQ;
            fn $m(self, o: RatFuncQ) -> RatFuncQ {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        -&self
    }
}

impl Zero for RatFuncQ {
    fn zero() -> Self {
        RatFuncQ::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFuncQ {
    fn one() -> Self {
        RatFuncQ::one()
    }
}

impl Coeff for RatFuncQ {
    fn from_i64(v: i64) -> Self {
        RatFuncQ::from_i64(v)
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
        self.div(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn one_minus(x: RatFuncQ) -> RatFuncQ {
        &RatFuncQ::one() - &x
    }

    #[test]
    fn canonical_form() {
        // (q^2 - 1)/(q - 1) reduces to q + 1.
        let r = RatFuncQ::new(QPoly::from_i64s(&[-1, 0, 1]), QPoly::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(r, RatFuncQ::from_poly(QPoly::from_i64s(&[1, 1])));
        // Denominator is made monic.
        let s = RatFuncQ::new(QPoly::from_i64s(&[1]), QPoly::from_i64s(&[2, 2])).unwrap();
        assert_eq!(s.denom(), &QPoly::from_i64s(&[1, 1]));
        assert!(RatFuncQ::new(QPoly::one(), QPoly::zero()).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let q = int(3);
        // (1 + q^-1)(1 - q^-2) at q = 3.
        let a = &one_minus(-RatFuncQ::q_pow(-1)) * &one_minus(RatFuncQ::q_pow(-2));
        assert_eq!(a.eval(&q).unwrap(), rat(32, 27));
        // q (1 + q^-1)^2 at q = 3.
        let b = &RatFuncQ::q() * &one_minus(-RatFuncQ::q_pow(-1)).pow(2).unwrap();
        assert_eq!(b.eval(&q).unwrap(), rat(16, 3));
        assert_eq!(b.to_string(), "q + 2 + q^-1");
    }

    #[test]
    fn pole_is_reported() {
        let r = one_minus(RatFuncQ::q()).inv().unwrap();
        assert!(matches!(r.eval(&int(1)), Err(Error::Pole(_))));
        assert!(RatFuncQ::zero().inv().is_err());
    }

    fn small_rf() -> impl Strategy<Value = RatFuncQ> {
        (prop::collection::vec(-3i64..4, 1..4), prop::collection::vec(-3i64..4, 1..3), -2i64..3).prop_filter_map(
            "nonzero den",
            |(n, d, k)| {
                let den = QPoly::from_i64s(&d);
                if den.is_zero() {
                    return None;
                }
                let r = RatFuncQ::new(QPoly::from_i64s(&n), den).ok()?;
                Some(&r * &RatFuncQ::q_pow(k))
            },
        )
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rf(), b in small_rf(), c in small_rf()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, RatFuncQ::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), RatFuncQ::one());
            }
        }

        #[test]
        fn eval_is_homomorphism(a in small_rf(), b in small_rf(), x in 4i64..9) {
            let x = int(x);
            if let (Ok(ea), Ok(eb)) = (a.eval(&x), b.eval(&x)) {
                prop_assert_eq!((&a * &b).eval(&x).unwrap(), &ea * &eb);
                prop_assert_eq!((&a + &b).eval(&x).unwrap(), ea + eb);
            }
        }
    }
}
