use crate::arith::Coeff;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in `arity` variables. Keys are exponent vectors; the
/// map order is lexicographic with x_1 > x_2 > ..., so the last key is the
/// lex-leading monomial.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C: Coeff> {
    arity: usize,
    terms: BTreeMap<Vec<i32>, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero(arity: usize) -> Self {
        LaurentPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(c: C, arity: usize) -> Self {
        Self::monomial(vec![0; arity], c)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(C::one(), arity)
    }

    pub fn monomial(exp: Vec<i32>, c: C) -> Self {
        let mut p = Self::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable x_i (0-based).
    pub fn var(i: usize, arity: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    /// x_i - c x_j.
    pub fn binomial(i: usize, j: usize, c: &C, arity: usize) -> Self {
        let mut p = Self::var(i, arity);
        let mut e = vec![0; arity];
        e[j] += 1;
        p.add_term(e, c.negate());
        p
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Vec<i32>, C)>) -> Result<Self> {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i32]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exp: Vec<i32>, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_arity(&self, o: &Self) -> Result<()> {
        if self.arity != o.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: o.arity });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_arity(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_arity(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.negate());
        }
        Ok(r)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { arity: self.arity, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negate())).collect() }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.arity);
        }
        LaurentPoly { arity: self.arity, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul_ref(s))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_arity(o)?;
        let mut r = Self::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul_ref(c2));
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.arity);
        for _ in 0..k {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    /// Multiply by the monomial x^shift.
    pub fn shift(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    /// Substitute x_i -> x_{perm[i]}.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut r = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.arity];
            for (i, &a) in e.iter().enumerate() {
                ne[perm[i]] = a;
            }
            r.terms.insert(ne, c.clone());
        }
        r
    }

    /// Componentwise minimum exponent (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut m: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.arity])
    }

    pub fn leading(&self) -> Option<(&Vec<i32>, &C)> {
        self.terms.last_key_value()
    }

    /// Exact quotient self / d in the Laurent ring.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        self.check_arity(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.arity));
        }
        // Strip monomial content so both sides are polynomials with no monomial factor in d.
        let md = d.min_exponents();
        let mf = self.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let dd = d.shift(&neg(&md));
        let mut rem = self.shift(&neg(&mf));
        let (lt_e, lt_c) = dd.leading().map(|(e, c)| (e.clone(), c.clone())).expect("nonzero");
        let mut quo = Self::zero(self.arity);
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = e.iter().zip(&lt_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return Err(Error::NonExactDivision);
            }
            let qc = c.checked_div(&lt_c)?;
            for (de, dc) in &dd.terms {
                let ne: Vec<i32> = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(ne, dc.mul_ref(&qc).negate());
            }
            quo.add_term(qe, qc);
        }
        let shift: Vec<i32> = mf.iter().zip(&md).map(|(a, b)| a - b).collect();
        Ok(quo.shift(&shift))
    }

    /// Fixed by every adjacent transposition.
    pub fn is_symmetric(&self) -> bool {
        (0..self.arity.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.arity).collect();
            perm.swap(i, i + 1);
            self.permute(&perm) == *self
        })
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<LaurentPoly<D>> {
        let mut r = LaurentPoly::zero(self.arity);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c)?);
        }
        Ok(r)
    }

    /// Substitute x_i -> values[i] (nonzero values needed for negative exponents).
    pub fn eval(&self, values: &[C]) -> Result<C> {
        if values.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: values.len() });
        }
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                let base = if k < 0 { C::one().checked_div(v)? } else { v.clone() };
                for _ in 0..k.unsigned_abs() {
                    t = t.mul_ref(&base);
                }
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, RatFuncQ};
    use num_rational::BigRational;
    use proptest::prelude::*;

    type P = LaurentPoly<BigRational>;

    fn x(i: usize) -> P {
        P::var(i, 3)
    }

    #[test]
    fn exact_division() {
        // (x1^2 - x2^2) / (x1 - x2) = x1 + x2
        let f = x(0).pow(2).sub(&x(1).pow(2)).unwrap();
        let d = x(0).sub(&x(1)).unwrap();
        assert_eq!(f.div_exact(&d).unwrap(), x(0).add(&x(1)).unwrap());
        // Laurent: 1 / x1 is exact in the Laurent ring.
        let inv = P::one(3).div_exact(&x(0)).unwrap();
        assert_eq!(inv, P::monomial(vec![-1, 0, 0], int(1)));
        assert!(x(0).div_exact(&x(0).sub(&x(1)).unwrap()).is_err());
    }

    #[test]
    fn symmetry_detection() {
        let s = x(0).mul(&x(1)).unwrap().add(&x(1).mul(&x(2)).unwrap()).unwrap();
        assert!(!s.is_symmetric());
        let s = s.add(&x(0).mul(&x(2)).unwrap()).unwrap();
        assert!(s.is_symmetric());
    }

    #[test]
    fn eval_with_ratfunc() {
        let p = LaurentPoly::<RatFuncQ>::monomial(vec![1, -1], RatFuncQ::from_i64(2));
        let v = p.eval(&[RatFuncQ::q(), RatFuncQ::q_pow(2)]).unwrap();
        assert_eq!(v, RatFuncQ::monomial(int(2), -1));
    }

    fn small_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(((-2i32..3, -2i32..3, 0i32..2), -3i64..4), 0..5)
            .prop_map(|ts| P::from_terms(3, ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c], int(k)))).unwrap())
    }

    proptest! {
        #[test]
        fn product_then_divide(f in small_poly(), g in small_poly()) {
            prop_assume!(!g.is_zero());
            let h = f.mul(&g).unwrap();
            prop_assert_eq!(h.div_exact(&g).unwrap(), f);
        }

        #[test]
        fn permutation_is_ring_map(f in small_poly(), g in small_poly()) {
            let perm = [2, 0, 1];
            prop_assert_eq!(f.mul(&g).unwrap().permute(&perm), f.permute(&perm).mul(&g.permute(&perm)).unwrap());
        }
    }
}
