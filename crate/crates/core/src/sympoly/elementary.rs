use super::LaurentPoly;
use crate::arith::Coeff;
use crate::error::{Error, Result};
use itertools::Itertools;
use std::collections::HashMap;
use std::fmt;

/// e_k(x_1, ..., x_n), 1 <= k <= n.
pub fn elementary<C: Coeff>(k: usize, n: usize) -> LaurentPoly<C> {
    let mut p = LaurentPoly::zero(n);
    for set in (0..n).combinations(k) {
        let mut e = vec![0; n];
        for i in set {
            e[i] = 1;
        }
        p.add_term(e, C::one());
    }
    p
}

/// poly(s_1, ..., s_n) * s_n^{-sn_inv}; `poly` has nonnegative exponents and is not
/// divisible by s_n unless sn_inv = 0.
#[derive(Clone, PartialEq)]
pub struct ElemSymExpr<C: Coeff> {
    poly: LaurentPoly<C>,
    sn_inv: u32,
}

impl<C: Coeff> ElemSymExpr<C> {
    pub fn new(poly: LaurentPoly<C>, sn_inv: u32) -> Result<Self> {
        if poly.terms().keys().flatten().any(|&e| e < 0) {
            return Err(Error::InvalidInput("negative exponent in s-polynomial".into()));
        }
        if poly.arity() == 0 {
            return Err(Error::InvalidInput("arity must be positive".into()));
        }
        let mut r = ElemSymExpr { poly, sn_inv };
        r.normalize();
        Ok(r)
    }

    /// The generator s_k (1-based).
    pub fn generator(k: usize, n: usize) -> Self {
        let mut e = vec![0; n];
        e[k - 1] = 1;
        ElemSymExpr { poly: LaurentPoly::monomial(e, C::one()), sn_inv: 0 }
    }

    fn normalize(&mut self) {
        let n = self.poly.arity();
        if self.sn_inv == 0 || self.poly.is_zero() {
            if self.poly.is_zero() {
                self.sn_inv = 0;
            }
            return;
        }
        let common = self.poly.terms().keys().map(|e| e[n - 1]).min().unwrap_or(0);
        let k = common.min(self.sn_inv as i32);
        if k > 0 {
            let mut shift = vec![0; n];
            shift[n - 1] = -k;
            self.poly = self.poly.shift(&shift);
            self.sn_inv -= k as u32;
        }
    }

    pub fn arity(&self) -> usize {
        self.poly.arity()
    }

    pub fn poly(&self) -> &LaurentPoly<C> {
        &self.poly
    }

    pub fn sn_inv(&self) -> u32 {
        self.sn_inv
    }

    /// Multiply by s_n^k, dropping the inverse power first.
    pub fn times_sn(&self, k: u32) -> Self {
        let n = self.arity();
        let drop = k.min(self.sn_inv);
        let mut shift = vec![0; n];
        shift[n - 1] = (k - drop) as i32;
        ElemSymExpr { poly: self.poly.shift(&shift), sn_inv: self.sn_inv - drop }
    }

    /// Substitute s_k = e_k(x) and return the Laurent polynomial in x.
    pub fn to_laurent(&self) -> Result<LaurentPoly<C>> {
        let n = self.arity();
        let es: Vec<LaurentPoly<C>> = (1..=n).map(|k| elementary(k, n)).collect();
        let mut cache: HashMap<(usize, i32), LaurentPoly<C>> = HashMap::new();
        let mut total = LaurentPoly::zero(n);
        for (e, c) in self.poly.terms() {
            let mut t = LaurentPoly::constant(c.clone(), n);
            for (k, &a) in e.iter().enumerate() {
                if a > 0 {
                    let pw = cache.entry((k, a)).or_insert_with(|| es[k].pow(a as u32));
                    t = t.mul(pw)?;
                }
            }
            total = total.add(&t)?;
        }
        Ok(total.shift(&vec![-(self.sn_inv as i32); n]))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<ElemSymExpr<D>> {
        ElemSymExpr::new(self.poly.map_coeffs(f)?, self.sn_inv)
    }
}

impl<C: Coeff> fmt::Display for ElemSymExpr<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.poly.to_string().replace('x', "s");
        if self.sn_inv == 0 {
            f.write_str(&s)
        } else {
            write!(f, "({s}) * s{}^-{}", self.arity(), self.sn_inv)
        }
    }
}

impl<C: Coeff> fmt::Debug for ElemSymExpr<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Write a symmetric Laurent polynomial in s_1, ..., s_n and s_n^{-1} by
/// repeatedly removing the lex-leading term.
pub fn to_elementary<C: Coeff>(f: &LaurentPoly<C>) -> Result<ElemSymExpr<C>> {
    let n = f.arity();
    if n == 0 {
        return Err(Error::InvalidInput("arity must be positive".into()));
    }
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    // Clear negative exponents with a power of x_1...x_n = s_n.
    let k = (-f.min_exponents().into_iter().min().unwrap_or(0)).max(0);
    let mut rem = f.shift(&vec![k; n]);
    let es: Vec<LaurentPoly<C>> = (1..=n).map(|i| elementary(i, n)).collect();
    let mut powers: HashMap<(usize, i32), LaurentPoly<C>> = HashMap::new();
    let mut out = LaurentPoly::zero(n);
    while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
        // The leading exponent of a symmetric polynomial is weakly decreasing.
        let mut s_exp = vec![0; n];
        for i in 0..n {
            s_exp[i] = if i + 1 < n { e[i] - e[i + 1] } else { e[i] };
        }
        if s_exp.iter().any(|&a| a < 0) {
            return Err(Error::NotSymmetric);
        }
        let mut prod = LaurentPoly::constant(c.clone(), n);
        for (i, &a) in s_exp.iter().enumerate() {
            if a > 0 {
                let pw = powers.entry((i, a)).or_insert_with(|| es[i].pow(a as u32));
                prod = prod.mul(pw)?;
            }
        }
        rem = rem.sub(&prod)?;
        out.add_term(s_exp, c);
    }
    ElemSymExpr::new(out, k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, RatFuncQ};
    use num_rational::BigRational;
    use proptest::prelude::*;

    type P = LaurentPoly<BigRational>;

    fn s(exp: Vec<i32>, c: i64) -> P {
        P::monomial(exp, int(c))
    }

    #[test]
    fn small_decompositions() {
        let x1 = P::var(0, 2);
        let x2 = P::var(1, 2);
        let f = x1.pow(2).add(&x2.pow(2)).unwrap();
        let e = to_elementary(&f).unwrap();
        assert_eq!(*e.poly(), s(vec![2, 0], 1).add(&s(vec![0, 1], -2)).unwrap());
        assert_eq!(e.sn_inv(), 0);
        assert_eq!(*to_elementary(&x1.mul(&x2).unwrap()).unwrap().poly(), s(vec![0, 1], 1));
        assert!(matches!(to_elementary(&x1), Err(Error::NotSymmetric)));
    }

    #[test]
    fn ratfunc_coefficients() {
        let c = &RatFuncQ::one() - &RatFuncQ::q_pow(-1);
        let f = LaurentPoly::<RatFuncQ>::var(0, 2).add(&LaurentPoly::var(1, 2)).unwrap().scale(&c);
        let e = to_elementary(&f).unwrap();
        assert_eq!(*e.poly(), LaurentPoly::monomial(vec![1, 0], c));
    }

    #[test]
    fn laurent_inputs_use_inverse_power() {
        // x1^-1 + x2^-1 = s1 / s2
        let f = P::monomial(vec![-1, 0], int(1)).add(&P::monomial(vec![0, -1], int(1))).unwrap();
        let e = to_elementary(&f).unwrap();
        assert_eq!(e.sn_inv(), 1);
        assert_eq!(*e.poly(), s(vec![1, 0], 1));
        assert_eq!(e.to_laurent().unwrap(), f);
        assert_eq!(e.times_sn(1).sn_inv(), 0);
    }

    fn sym3() -> impl Strategy<Value = P> {
        // Symmetrize random terms in three variables.
        prop::collection::vec(((-1i32..3, -1i32..3, -1i32..3), -3i64..4), 0..4).prop_map(|ts| {
            let mut p = P::zero(3);
            for ((a, b, c), k) in ts {
                for perm in (0..3).permutations(3) {
                    let mut e = vec![0; 3];
                    for (i, v) in [a, b, c].into_iter().enumerate() {
                        e[perm[i]] = v;
                    }
                    p.add_term(e, int(k));
                }
            }
            p
        })
    }

    proptest! {
        #[test]
        fn round_trip(f in sym3()) {
            let e = to_elementary(&f).unwrap();
            prop_assert_eq!(e.to_laurent().unwrap(), f);
        }
    }
}
