//! Buchberger's algorithm over Q for polynomials in s_1, ..., s_n.

use super::{ElemSymExpr, LaurentPoly};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use std::cmp::Ordering;

pub type QPolyN = LaurentPoly<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[i32], b: &[i32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let (da, db): (i32, i32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| {
                    // Smaller exponent in the last differing variable wins.
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    pub fn leading(&self, p: &QPolyN) -> Option<(Vec<i32>, BigRational)> {
        p.terms().iter().max_by(|a, b| self.cmp(a.0, b.0)).map(|(e, c)| (e.clone(), c.clone()))
    }
}

fn divides(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn monic(p: &QPolyN, ord: MonomialOrder) -> QPolyN {
    match ord.leading(p) {
        Some((_, c)) => p.scale(&(BigRational::one() / c)),
        None => p.clone(),
    }
}

/// Remainder of f on division by `basis` (full reduction of every term).
pub fn normal_form(f: &QPolyN, basis: &[QPolyN], ord: MonomialOrder) -> QPolyN {
    let leads: Vec<(Vec<i32>, BigRational)> = basis.iter().map(|g| ord.leading(g).expect("nonzero basis")).collect();
    let mut p = f.clone();
    let mut r = QPolyN::zero(f.arity());
    while let Some((e, c)) = ord.leading(&p) {
        match leads.iter().position(|(le, _)| divides(le, &e)) {
            Some(k) => {
                let (le, lc) = &leads[k];
                let shift: Vec<i32> = e.iter().zip(le).map(|(a, b)| a - b).collect();
                let factor = &c / lc;
                p = p.sub(&basis[k].shift(&shift).scale(&factor)).expect("same arity");
            }
            None => {
                r.add_term(e.clone(), c.clone());
                p.add_term(e, -c);
            }
        }
    }
    r
}

fn s_poly(f: &QPolyN, g: &QPolyN, ord: MonomialOrder) -> QPolyN {
    let (ef, cf) = ord.leading(f).expect("nonzero");
    let (eg, cg) = ord.leading(g).expect("nonzero");
    let l: Vec<i32> = ef.iter().zip(&eg).map(|(a, b)| *a.max(b)).collect();
    let sf: Vec<i32> = l.iter().zip(&ef).map(|(a, b)| a - b).collect();
    let sg: Vec<i32> = l.iter().zip(&eg).map(|(a, b)| a - b).collect();
    let a = f.shift(&sf).scale(&(BigRational::one() / cf));
    let b = g.shift(&sg).scale(&(BigRational::one() / cg));
    a.sub(&b).expect("same arity")
}

/// Reduced Groebner basis, monic, sorted by decreasing leading monomial.
pub fn groebner(gens: &[QPolyN], ord: MonomialOrder) -> Result<Vec<QPolyN>> {
    let arity = gens.first().map(|g| g.arity()).ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    if let Some(g) = gens.iter().find(|g| g.arity() != arity) {
        return Err(Error::ArityMismatch { expected: arity, got: g.arity() });
    }
    if gens.iter().any(|g| g.terms().keys().flatten().any(|&e| e < 0)) {
        return Err(Error::InvalidInput("generators must be polynomials".into()));
    }
    let mut g: Vec<QPolyN> = gens.iter().filter(|p| !p.is_zero()).map(|p| monic(p, ord)).collect();
    if g.is_empty() {
        return Err(Error::InvalidInput("all generators are zero".into()));
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let lcm_of = |g: &[QPolyN], (i, j): (usize, usize)| -> Vec<i32> {
        let a = ord.leading(&g[i]).expect("nonzero").0;
        let b = ord.leading(&g[j]).expect("nonzero").0;
        a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect()
    };
    while !pairs.is_empty() {
        // Normal strategy: the pair with the smallest lcm goes first.
        let k = (0..pairs.len()).min_by(|&a, &b| ord.cmp(&lcm_of(&g, pairs[a]), &lcm_of(&g, pairs[b]))).expect("nonempty");
        let (i, j) = pairs.swap_remove(k);
        let ei = ord.leading(&g[i]).expect("nonzero").0;
        let ej = ord.leading(&g[j]).expect("nonzero").0;
        if ei.iter().zip(&ej).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let r = normal_form(&s_poly(&g[i], &g[j], ord), &g, ord);
        if !r.is_zero() {
            g.push(monic(&r, ord));
            let new = g.len() - 1;
            pairs.extend((0..new).map(|i| (i, new)));
        }
    }
    // Minimize, then interreduce.
    let mut keep: Vec<QPolyN> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let e = ord.leading(p).expect("nonzero").0;
        let redundant = g.iter().enumerate().any(|(m, h)| {
            let eh = ord.leading(h).expect("nonzero").0;
            m != k && divides(&eh, &e) && (eh != e || m < k)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<QPolyN> = keep.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, p)| p.clone()).collect();
        let (e, c) = ord.leading(&keep[k]).expect("nonzero");
        let tail = {
            let mut t = keep[k].clone();
            t.add_term(e.clone(), -c.clone());
            t
        };
        let mut p = normal_form(&tail, &others, ord);
        p.add_term(e, c);
        reduced.push(monic(&p, ord));
    }
    reduced.sort_by(|a, b| ord.cmp(&ord.leading(b).expect("nonzero").0, &ord.leading(a).expect("nonzero").0));
    Ok(reduced)
}

/// Ideal of Q[s_1, ..., s_n] with a cached reduced Groebner basis.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    pub arity: usize,
    pub q0: BigRational,
    pub order: MonomialOrder,
    pub generators: Vec<QPolyN>,
    pub basis: Vec<QPolyN>,
}

impl IdealBasis {
    /// Generators are taken as polynomials: the s_n^{-k} factor of each is dropped (a unit of R).
    pub fn new(gens: &[ElemSymExpr<BigRational>], q0: BigRational, order: MonomialOrder) -> Result<Self> {
        let polys: Vec<QPolyN> = gens.iter().map(|g| g.poly().clone()).collect();
        let basis = groebner(&polys, order)?;
        Ok(IdealBasis { arity: polys[0].arity(), q0, order, generators: polys, basis })
    }

    pub fn contains_poly(&self, f: &QPolyN) -> Result<bool> {
        if f.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: f.arity() });
        }
        Ok(normal_form(f, &self.basis, self.order).is_zero())
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].terms().len() == 1 && self.basis[0].coeff(&vec![0; self.arity]).is_one()
    }
}

/// Buchberger under grevlex with s_1 > ... > s_n.
pub fn buchberger(gens: &[ElemSymExpr<BigRational>], q0: BigRational) -> Result<IdealBasis> {
    IdealBasis::new(gens, q0, MonomialOrder::GrevLex)
}

/// f * s_n^k lies in the ideal of R_0 for the k clearing f's inverse power.
pub fn ideal_member(f: &ElemSymExpr<BigRational>, basis: &IdealBasis) -> Result<bool> {
    basis.contains_poly(f.poly())
}

/// Scale so the leading coefficient is 1; used to compare up to a nonzero constant.
pub fn normalize_leading(f: &QPolyN, ord: MonomialOrder) -> QPolyN {
    monic(f, ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn s(exp: &[i32], c: BigRational) -> QPolyN {
        QPolyN::monomial(exp.to_vec(), c)
    }

    fn e(p: QPolyN) -> ElemSymExpr<BigRational> {
        ElemSymExpr::new(p, 0).unwrap()
    }

    #[test]
    fn orders() {
        let g = MonomialOrder::GrevLex;
        assert_eq!(g.cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(g.cmp(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(g.cmp(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
    }

    #[test]
    fn trivial_bases() {
        let b = buchberger(&[e(s(&[1, 0], int(1))), e(s(&[0, 1], int(1)))], int(3)).unwrap();
        assert_eq!(b.basis.len(), 2);
        assert!(!b.contains_poly(&s(&[0, 0], int(1))).unwrap());
        let b = buchberger(&[e(s(&[0, 0], int(5)))], int(3)).unwrap();
        assert!(b.is_unit_ideal());
    }

    #[test]
    fn three_variable_pair() {
        // s1 s2 - c s3 and s1^2 - c s2 at q = 3: c = q^2 (q^-2 + q^-1 + 1)^2 = 169/9.
        let c = rat(169, 9);
        let g1 = s(&[1, 1, 0], int(1)).sub(&s(&[0, 0, 1], c.clone())).unwrap();
        let g2 = s(&[2, 0, 0], int(1)).sub(&s(&[0, 1, 0], c)).unwrap();
        let b = buchberger(&[e(g1.clone()), e(g2.clone())], int(3)).unwrap();
        for gen in [&g1, &g2] {
            assert!(b.contains_poly(gen).unwrap());
        }
        let multiple = g1.mul(&s(&[0, 0, 1], int(1))).unwrap().add(&g2.mul(&s(&[1, 0, 0], int(7))).unwrap()).unwrap();
        assert!(b.contains_poly(&multiple).unwrap());
        assert!(!b.contains_poly(&s(&[1, 0, 0], int(1))).unwrap());
        // Same verdicts under lex.
        let lex = IdealBasis::new(&[e(g1), e(g2)], int(3), MonomialOrder::Lex).unwrap();
        assert!(lex.contains_poly(&multiple).unwrap());
        assert!(!lex.contains_poly(&s(&[1, 0, 0], int(1))).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent() {
        let g1 = s(&[1, 1], int(1)).sub(&s(&[0, 0], int(2))).unwrap();
        let g2 = s(&[2, 0], int(1)).sub(&s(&[0, 1], int(3))).unwrap();
        let basis = groebner(&[g1, g2], MonomialOrder::GrevLex).unwrap();
        let f = s(&[3, 2], int(1)).add(&s(&[0, 4], rat(1, 2))).unwrap();
        let r = normal_form(&f, &basis, MonomialOrder::GrevLex);
        assert_eq!(normal_form(&r, &basis, MonomialOrder::GrevLex), r);
    }
}
