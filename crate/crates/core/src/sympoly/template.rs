use super::LaurentPoly;
use crate::arith::Coeff;
use crate::error::{Error, Result};
use itertools::Itertools;
use rayon::prelude::*;

/// The linear form x_i - c x_j (0-based indices, i != j).
#[derive(Clone, Debug, PartialEq)]
pub struct Binomial<C: Coeff> {
    pub i: usize,
    pub j: usize,
    pub c: C,
}

impl<C: Coeff> Binomial<C> {
    pub fn new(i: usize, j: usize, c: C) -> Self {
        Binomial { i, j, c }
    }

    /// Write self = unit * (x_a - c' x_b) with a < b.
    fn canonical(&self) -> Result<(Binomial<C>, C)> {
        if self.i < self.j {
            Ok((self.clone(), C::one()))
        } else {
            let inv = C::one().checked_div(&self.c)?;
            Ok((Binomial { i: self.j, j: self.i, c: inv }, self.c.negate()))
        }
    }

    fn permuted(&self, perm: &[usize]) -> Self {
        Binomial { i: perm[self.i], j: perm[self.j], c: self.c.clone() }
    }

    pub fn to_poly(&self, arity: usize) -> LaurentPoly<C> {
        LaurentPoly::binomial(self.i, self.j, &self.c, arity)
    }
}

impl<C: Coeff> std::fmt::Display for Binomial<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x{} - ({})*x{}", self.i + 1, self.c, self.j + 1)
    }
}

/// scalar * x^mono * prod(num) / prod(den), a rational function whose S_n orbit sum is a Laurent polynomial.
#[derive(Clone, Debug)]
pub struct SymTemplate<C: Coeff> {
    pub arity: usize,
    pub scalar: C,
    pub mono: Vec<i32>,
    pub num: Vec<Binomial<C>>,
    pub den: Vec<Binomial<C>>,
}

impl<C: Coeff> SymTemplate<C> {
    pub fn unit(arity: usize) -> Self {
        SymTemplate { arity, scalar: C::one(), mono: vec![0; arity], num: Vec::new(), den: Vec::new() }
    }

    /// prod_{i<j} (x_i - a x_j)(x_i - b x_j) / (x_i - x_j)
    pub fn vandermonde_pairs(arity: usize, factors: &[C]) -> Self {
        let mut t = Self::unit(arity);
        for (i, j) in (0..arity).tuple_combinations() {
            for c in factors {
                t.num.push(Binomial::new(i, j, c.clone()));
            }
            t.den.push(Binomial::new(i, j, C::one()));
        }
        t
    }

    pub fn with_den(mut self, b: Binomial<C>) -> Self {
        self.den.push(b);
        self
    }

    pub fn with_num(mut self, b: Binomial<C>) -> Self {
        self.num.push(b);
        self
    }

    pub fn scaled(mut self, s: &C) -> Self {
        self.scalar = self.scalar.mul_ref(s);
        self
    }

    fn validate(&self, mu: &[i32]) -> Result<()> {
        if mu.len() != self.arity || self.mono.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: mu.len() });
        }
        for b in self.num.iter().chain(&self.den) {
            if b.i >= self.arity || b.j >= self.arity || b.i == b.j {
                return Err(Error::InvalidInput(format!("bad factor indices ({}, {})", b.i, b.j)));
            }
            if b.c.is_zero() {
                return Err(Error::InvalidInput("binomial with zero coefficient".into()));
            }
        }
        Ok(())
    }
}

fn remove_first<C: Coeff>(v: &mut Vec<Binomial<C>>, b: &Binomial<C>) -> bool {
    match v.iter().position(|x| x == b) {
        Some(k) => {
            v.remove(k);
            true
        }
        None => false,
    }
}

/// Sum over all permutations sigma of sigma(x^mu * t). Every orbit term is put over
/// V(x) * L(x), with V the Vandermonde product and L the lcm of the permuted
/// non-Vandermonde denominators, and the numerator sum is divided exactly once.
pub fn symmetric_sum<C: Coeff>(t: &SymTemplate<C>, mu: &[i32]) -> Result<LaurentPoly<C>> {
    t.validate(mu)?;
    let n = t.arity;
    let mut unit = t.scalar.clone();
    // Canonical forms, cancelling common factors.
    let mut num = Vec::new();
    for b in &t.num {
        let (cb, u) = b.canonical()?;
        unit = unit.mul_ref(&u);
        num.push(cb);
    }
    let mut den = Vec::new();
    for b in &t.den {
        let (cb, u) = b.canonical()?;
        unit = unit.checked_div(&u)?;
        if !remove_first(&mut num, &cb) {
            den.push(cb);
        }
    }
    // Split the denominator into distinct Vandermonde factors and the rest.
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut present = vec![false; pairs.len()];
    let mut other = Vec::new();
    for b in den {
        let k = pairs.iter().position(|&p| p == (b.i, b.j)).expect("canonical pair");
        if b.c.is_one() && !present[k] {
            present[k] = true;
        } else {
            other.push(b);
        }
    }
    let one = C::one();
    let mut base = LaurentPoly::monomial(t.mono.iter().zip(mu).map(|(a, b)| a + b).collect(), C::one());
    for b in &num {
        base = base.mul(&b.to_poly(n))?;
    }
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if !present[k] {
            base = base.mul(&LaurentPoly::binomial(i, j, &one, n))?;
        }
    }

    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    // Permuted odd denominators in canonical form, with their units.
    let mut images = Vec::with_capacity(perms.len());
    for p in &perms {
        let mut fs = Vec::new();
        let mut u = C::one();
        for b in &other {
            let (cb, cu) = b.permuted(p).canonical()?;
            u = u.mul_ref(&cu);
            fs.push(cb);
        }
        images.push((fs, u));
    }
    // lcm as the max multiplicity over all images.
    let mut lcm: Vec<Binomial<C>> = Vec::new();
    for (fs, _) in &images {
        let mut have = lcm.clone();
        for f in fs {
            if !remove_first(&mut have, f) {
                lcm.push(f.clone());
            }
        }
    }

    let terms: Vec<Result<LaurentPoly<C>>> = perms
        .par_iter()
        .zip(images.par_iter())
        .map(|(p, (fs, u))| {
            let mut cof = lcm.clone();
            for f in fs {
                remove_first(&mut cof, f);
            }
            let mut term = base.permute(p);
            for f in &cof {
                term = term.mul(&f.to_poly(n))?;
            }
            let mut s = C::one().checked_div(u)?;
            if permutation_sign(p) < 0 {
                s = s.negate();
            }
            Ok(term.scale(&s))
        })
        .collect();
    let mut total = LaurentPoly::zero(n);
    for term in terms {
        total = total.add(&term?)?;
    }
    for &(i, j) in &pairs {
        total = total.div_exact(&LaurentPoly::binomial(i, j, &one, n))?;
    }
    for f in &lcm {
        total = total.div_exact(&f.to_poly(n))?;
    }
    Ok(total.scale(&unit))
}

pub fn permutation_sign(p: &[usize]) -> i32 {
    let inv = (0..p.len()).tuple_combinations().filter(|&(a, b)| p[a] > p[b]).count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Direct orbit sum over a common denominator, one term at a time. Slow; used to cross-check.
pub fn symmetric_sum_naive<C: Coeff>(t: &SymTemplate<C>, mu: &[i32]) -> Result<LaurentPoly<C>> {
    t.validate(mu)?;
    let n = t.arity;
    let mut top = LaurentPoly::monomial(t.mono.iter().zip(mu).map(|(a, b)| a + b).collect(), t.scalar.clone());
    for b in &t.num {
        top = top.mul(&b.to_poly(n))?;
    }
    let mut bottom = LaurentPoly::one(n);
    for b in &t.den {
        bottom = bottom.mul(&b.to_poly(n))?;
    }
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    // Common denominator: product of all permuted denominators.
    let mut common = LaurentPoly::one(n);
    for p in &perms {
        common = common.mul(&bottom.permute(p))?;
    }
    let mut total = LaurentPoly::zero(n);
    for p in &perms {
        let cof = common.div_exact(&bottom.permute(p))?;
        total = total.add(&top.permute(p).mul(&cof)?)?;
    }
    total.div_exact(&common)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RatFuncQ;

    fn q(k: i64) -> RatFuncQ {
        RatFuncQ::q_pow(k)
    }

    fn x(i: usize, n: usize) -> LaurentPoly<RatFuncQ> {
        LaurentPoly::var(i, n)
    }

    #[test]
    fn trivial_template() {
        let s = symmetric_sum(&SymTemplate::<RatFuncQ>::unit(2), &[1, 0]).unwrap();
        assert_eq!(s, x(0, 2).add(&x(1, 2)).unwrap());
    }

    #[test]
    fn two_variable_values() {
        // (x1 - q^-2 x2)/(x1 - x2) symmetrizes to 1 + q^-2.
        let t = SymTemplate::unit(2).with_num(Binomial::new(0, 1, q(-2))).with_den(Binomial::new(0, 1, RatFuncQ::one()));
        let s = symmetric_sum(&t, &[0, 0]).unwrap();
        assert_eq!(s, LaurentPoly::constant(&RatFuncQ::one() + &q(-2), 2));
        // Both quadratic factors: (1 - q^-1)(x1 + x2).
        let t = SymTemplate::vandermonde_pairs(2, &[q(1), q(-2)]);
        let s = symmetric_sum(&t, &[0, 0]).unwrap();
        let expect = x(0, 2).add(&x(1, 2)).unwrap().scale(&(&RatFuncQ::one() - &q(-1)));
        assert_eq!(s, expect);
    }

    #[test]
    fn matches_naive_orbit_sum() {
        let base = SymTemplate::vandermonde_pairs(3, &[q(1), q(-2)]);
        let odd = base.clone().with_den(Binomial::new(1, 2, q(1)));
        // A denominator that does not cancel: forces the lcm path.
        let stray = SymTemplate::unit(3)
            .with_num(Binomial::new(0, 1, q(-1)))
            .with_den(Binomial::new(0, 1, RatFuncQ::one()))
            .with_den(Binomial::new(1, 0, q(2)));
        for (t, mu) in [(&base, [1, 0, 0]), (&odd, [2, 0, 0]), (&base, [0, 0, -1])] {
            let fast = symmetric_sum(t, &mu).unwrap();
            assert!(fast.is_symmetric());
            assert_eq!(fast, symmetric_sum_naive(t, &mu).unwrap());
        }
        let fast = symmetric_sum(&stray, &[0, 0, 0]);
        let slow = symmetric_sum_naive(&stray, &[0, 0, 0]);
        assert_eq!(fast.is_ok(), slow.is_ok());
        if let (Ok(a), Ok(b)) = (fast, slow) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn non_polynomial_orbit_sum_is_reported() {
        // 1/(x1 - q x2) + 1/(x2 - q x1) is not a Laurent polynomial.
        let t = SymTemplate::unit(2).with_den(Binomial::new(0, 1, q(1)));
        assert!(matches!(symmetric_sum(&t, &[0, 0]), Err(Error::NonExactDivision)));
    }

    #[test]
    fn sign_of_permutations() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
