//! Rational functions in two parameters (u_1, u_2) whose denominators are products of a
//! fixed catalogue of irreducible factors. Numerators are Laurent polynomials, so powers
//! of u_1 and u_2 need no bookkeeping.

use crate::arith::{Coeff, RatFuncQ};
use crate::error::{Error, Result};
use crate::sympoly::LaurentPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

type UPoly = LaurentPoly<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UFactor {
    OneMinusU1,
    OnePlusU1,
    OneMinusU2,
    OnePlusU2,
    OneMinusU1U2,
    U1MinusU2,
}

impl UFactor {
    pub const ALL: [UFactor; 6] =
        [UFactor::OneMinusU1, UFactor::OnePlusU1, UFactor::OneMinusU2, UFactor::OnePlusU2, UFactor::OneMinusU1U2, UFactor::U1MinusU2];

    pub fn poly(self) -> UPoly {
        let t = |terms: &[([i32; 2], i64)]| {
            let mut p = UPoly::zero(2);
            for (e, c) in terms {
                p.add_term(e.to_vec(), BigRational::from_integer((*c).into()));
            }
            p
        };
        match self {
            UFactor::OneMinusU1 => t(&[([0, 0], 1), ([1, 0], -1)]),
            UFactor::OnePlusU1 => t(&[([0, 0], 1), ([1, 0], 1)]),
            UFactor::OneMinusU2 => t(&[([0, 0], 1), ([0, 1], -1)]),
            UFactor::OnePlusU2 => t(&[([0, 0], 1), ([0, 1], 1)]),
            UFactor::OneMinusU1U2 => t(&[([0, 0], 1), ([1, 1], -1)]),
            UFactor::U1MinusU2 => t(&[([1, 0], 1), ([0, 1], -1)]),
        }
    }

    fn label(self) -> &'static str {
        match self {
            UFactor::OneMinusU1 => "1-u1",
            UFactor::OnePlusU1 => "1+u1",
            UFactor::OneMinusU2 => "1-u2",
            UFactor::OnePlusU2 => "1+u2",
            UFactor::OneMinusU1U2 => "1-u1*u2",
            UFactor::U1MinusU2 => "u1-u2",
        }
    }
}

/// num / prod(factor^mult), kept with no catalogue factor dividing num.
#[derive(Clone)]
pub struct BiRational {
    num: UPoly,
    den: BTreeMap<UFactor, u32>,
}

fn poly_add(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    for (e, c) in b.terms() {
        r.add_term(e.clone(), c.clone());
    }
    r
}

fn poly_mul(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = UPoly::zero(2);
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            r.add_term(vec![ea[0] + eb[0], ea[1] + eb[1]], ca * cb);
        }
    }
    r
}

impl BiRational {
    pub fn from_poly(num: UPoly) -> Self {
        debug_assert_eq!(num.arity(), 2);
        BiRational { num, den: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(UPoly::constant(c, 2))
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// c * u1^a * u2^b
    pub fn monomial(c: BigRational, a: i32, b: i32) -> Self {
        Self::from_poly(UPoly::monomial(vec![a, b], c))
    }

    /// u_i for i in {1, 2}.
    pub fn u(i: usize) -> Self {
        let e = if i == 1 { vec![1, 0] } else { vec![0, 1] };
        Self::from_poly(UPoly::monomial(e, BigRational::one()))
    }

    pub fn u_pow(i: usize, k: i32) -> Self {
        let e = if i == 1 { vec![k, 0] } else { vec![0, k] };
        Self::from_poly(UPoly::monomial(e, BigRational::one()))
    }

    pub fn factor(f: UFactor) -> Self {
        Self::from_poly(f.poly())
    }

    /// 1 / f^k
    pub fn inv_factor(f: UFactor, k: u32) -> Self {
        let mut den = BTreeMap::new();
        if k > 0 {
            den.insert(f, k);
        }
        BiRational { num: UPoly::one(2), den }
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<UFactor, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for (f, mult) in self.den.iter_mut() {
            let d = f.poly();
            while *mult > 0 {
                match self.num.div_exact(&d) {
                    Ok(q) => {
                        self.num = q;
                        *mult -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        self.den.retain(|_, m| *m > 0);
        self
    }

    fn over_common(&self, o: &Self) -> (UPoly, UPoly, BTreeMap<UFactor, u32>) {
        let mut den = self.den.clone();
        for (f, &m) in &o.den {
            let e = den.entry(*f).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |x: &Self| {
            let mut p = x.num.clone();
            for (f, &m) in &den {
                let have = x.den.get(f).copied().unwrap_or(0);
                for _ in have..m {
                    p = poly_mul(&p, &f.poly());
                }
            }
            p
        };
        (lift(self), lift(o), den)
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b, den) = self.over_common(o);
        BiRational { num: poly_add(&a, &b), den }.reduced()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        BiRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut den = self.den.clone();
        for (f, &m) in &o.den {
            *den.entry(*f).or_insert(0) += m;
        }
        BiRational { num: poly_mul(&self.num, &o.num), den }.reduced()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BiRational { num: self.num.scale(c), den: self.den.clone() }.reduced()
    }

    /// Inverse, defined when the numerator is a monomial times catalogue factors.
    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rest = self.num.clone();
        let mut found = BTreeMap::new();
        for f in UFactor::ALL {
            let d = f.poly();
            while let Ok(q) = rest.div_exact(&d) {
                rest = q;
                *found.entry(f).or_insert(0u32) += 1;
            }
        }
        if rest.len() != 1 {
            return Err(Error::UncataloguedPole(format!("1/({})", self.num_string())));
        }
        let (e, c) = rest.terms().iter().next().map(|(e, c)| (e.clone(), c.clone())).ok_or(Error::DivisionByZero)?;
        let mut num = UPoly::monomial(vec![-e[0], -e[1]], c.recip());
        for (f, &m) in &self.den {
            for _ in 0..m {
                num = poly_mul(&num, &f.poly());
            }
        }
        Ok(BiRational { num, den: found }.reduced())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Substitute rational functions of q for u_1, u_2.
    pub fn specialize(&self, u1: &RatFuncQ, u2: &RatFuncQ) -> Result<RatFuncQ> {
        let num = self.num.map_coeffs(|c| Ok(RatFuncQ::from_rational(c.clone())))?;
        let top = num.eval(&[u1.clone(), u2.clone()])?;
        let mut den = RatFuncQ::one();
        for (f, &m) in &self.den {
            let v = f.poly().map_coeffs(|c| Ok(RatFuncQ::from_rational(c.clone())))?.eval(&[u1.clone(), u2.clone()])?;
            if v.is_zero() {
                return Err(Error::Pole(format!("{} vanishes at the specialization", f.label())));
            }
            den = &den * &v.pow(m as i64)?;
        }
        top.div(&den)
    }

    pub fn eval(&self, u1: &BigRational, u2: &BigRational) -> Result<BigRational> {
        let top = self.num.eval(&[u1.clone(), u2.clone()])?;
        let mut den = BigRational::one();
        for (f, &m) in &self.den {
            let v = f.poly().eval(&[u1.clone(), u2.clone()])?;
            if v.is_zero() {
                return Err(Error::Pole(f.label().to_string()));
            }
            for _ in 0..m {
                den *= &v;
            }
        }
        Ok(top / den)
    }

    fn num_string(&self) -> String {
        if self.num.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.num.terms().iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let mut mono = Vec::new();
            for (k, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => mono.push(format!("u{}", k + 1)),
                    _ => mono.push(format!("u{}^{}", k + 1, x)),
                }
            }
            let coeff = crate::arith::rational_to_string(&mag);
            let coeff = coeff.strip_suffix("/1").unwrap_or(&coeff).to_string();
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if mag == BigRational::one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{coeff}*{}", mono.join("*")));
            }
        }
        out
    }
}

impl PartialEq for BiRational {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Display for BiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num_string();
        if self.den.is_empty() {
            return f.write_str(&num);
        }
        let den: Vec<String> =
            self.den.iter().map(|(g, &m)| if m == 1 { format!("({})", g.label()) } else { format!("({})^{m}", g.label()) }).collect();
        let num = if self.num.len() > 1 { format!("({num})") } else { num };
        write!(f, "{num}/({})", den.join("*"))
    }
}

impl fmt::Debug for BiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiRational({self})")
    }
}

impl Add for BiRational {
    type Output = BiRational;
    fn add(self, o: BiRational) -> BiRational {
        BiRational::add(&self, &o)
    }
}

impl Sub for BiRational {
    type Output = BiRational;
    fn sub(self, o: BiRational) -> BiRational {
        BiRational::sub(&self, &o)
    }
}

impl Mul for BiRational {
    type Output = BiRational;
    fn mul(self, o: BiRational) -> BiRational {
        BiRational::mul(&self, &o)
    }
}

impl Neg for BiRational {
    type Output = BiRational;
    fn neg(self) -> BiRational {
        BiRational::neg(&self)
    }
}

impl Zero for BiRational {
    fn zero() -> Self {
        Self::from_poly(UPoly::zero(2))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for BiRational {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl Coeff for BiRational {
    fn from_i64(v: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(v)))
    }
    fn add_ref(&self, o: &Self) -> Self {
        BiRational::add(self, o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        BiRational::sub(self, o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        BiRational::mul(self, o)
    }
    fn negate(&self) -> Self {
        BiRational::neg(self)
    }
    fn checked_div(&self, o: &Self) -> Result<Self> {
        BiRational::checked_div(self, o)
    }
}
