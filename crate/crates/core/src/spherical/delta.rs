//! delta(x; s) = integral over the Iwahori subgroup of |d(nu . x)|^s, closed form and,
//! for n = 2, exhaustive enumeration over the unipotent coordinate.

use super::{odd_data, to_i32, z_zero};
use crate::arith::RatFuncQ;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::quat::{build_gram, QuatElem, RingParams};
use crate::sympoly::Binomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// coeff * x^monomial / prod(den) evaluated at the anti-diagonal representative of pi^alpha.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaClosed {
    pub coeff: RatFuncQ,
    pub monomial: Vec<i32>,
    pub den: Vec<Binomial<RatFuncQ>>,
}

/// c_odd q^{<lambda, z_0>} x^{reverse(lambda)} / prod_{l in I_odd} (x_{n-l+1} - q x_{n-l}).
pub fn delta_closed(alpha: &Partition) -> Result<DeltaClosed> {
    let n = alpha.len();
    let lam = alpha.lambda();
    let pair: i64 = lam.iter().zip(z_zero(n)).map(|(a, b)| a * b).sum();
    let od = odd_data(alpha);
    let mut monomial = to_i32(&lam)?;
    monomial.reverse();
    let den = od.i_odd.iter().map(|&l| Binomial::new(n - l, n - l - 1, RatFuncQ::q())).collect();
    Ok(DeltaClosed { coeff: &od.c_odd * &RatFuncQ::q_pow(pair), monomial, den })
}

/// For n = 2 in s-variables: delta = u^{u_exponent} * sum_r coeffs[r] t^r with t = q^{-s_1}, u = q^{-s_2}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaSeries {
    pub u_exponent: i64,
    #[serde(serialize_with = "crate::arith::ser_rationals")]
    pub coeffs: Vec<BigRational>,
    /// Sum of all coefficients (the series at t = 1).
    #[serde(serialize_with = "crate::arith::ser_rational")]
    pub total: BigRational,
}

/// Expand the closed form at q = q0 up to t^order, using x_1 = q^-1 t u and x_2 = q u.
pub fn delta_series_size2(alpha: &Partition, order: usize, q0: &BigRational) -> Result<DeltaSeries> {
    if alpha.len() != 2 {
        return Err(Error::InvalidInput("series form needs n = 2".into()));
    }
    let d = delta_closed(alpha)?;
    let (a, b) = (d.monomial[0] as i64, d.monomial[1] as i64);
    let c0 = d.coeff.eval(q0)? * crate::arith::rat_pow(q0, b - a)?;
    let mut u_exp = a + b;
    if a < 0 {
        return Err(Error::NotApplicable("negative t-power".into()));
    }
    // Each denominator x_2 - q x_1 = u (q - t).
    let k = d.den.len();
    for f in &d.den {
        if (f.i, f.j) != (1, 0) {
            return Err(Error::UncataloguedPole(format!("factor ({}, {})", f.i, f.j)));
        }
    }
    u_exp -= k as i64;
    // 1/(q - t) = sum_j t^j / q^{j+1}
    let geo: Vec<BigRational> = (0..=order).map(|j| crate::arith::rat_pow(q0, -(j as i64) - 1)).collect::<Result<_>>()?;
    let mut series = vec![BigRational::zero(); order + 1];
    if (a as usize) <= order {
        series[a as usize] = BigRational::one();
    }
    for _ in 0..k {
        let mut next = vec![BigRational::zero(); order + 1];
        for (i, x) in series.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, g) in geo.iter().enumerate().take(order + 1 - i) {
                next[i + j] += x * g;
            }
        }
        series = next;
    }
    let q_minus_1 = q0 - BigRational::one();
    let mut total = c0.clone();
    for _ in 0..k {
        total = total / &q_minus_1;
    }
    for x in series.iter_mut() {
        *x = &*x * &c0;
    }
    Ok(DeltaSeries { u_exponent: u_exp, coeffs: series, total })
}

/// Exact distribution of v(d_1(nu . x)) for nu = [[1, y], [0, 1]], y over P/P^{2 ell}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaDistribution {
    pub p: u64,
    pub ell: u32,
    /// v(d_2), which does not depend on nu.
    pub v2: u32,
    /// volumes[r] = measure of {v(d_1) = r} for r < ell.
    #[serde(serialize_with = "crate::arith::ser_rationals")]
    pub volumes: Vec<BigRational>,
    /// Measure of {v(d_1) >= ell}: valuations the level cannot resolve.
    #[serde(serialize_with = "crate::arith::ser_rational")]
    pub overflow: BigRational,
    pub samples: u64,
}

impl DeltaDistribution {
    /// Agreement with a series expansion: same u-power, same coefficients below
    /// the level, and the unresolved mass equal to the closed-form tail.
    pub fn matches(&self, s: &DeltaSeries) -> bool {
        if s.u_exponent != self.v2 as i64 || s.coeffs.len() < self.volumes.len() {
            return false;
        }
        let head: BigRational = s.coeffs[..self.volumes.len()].iter().sum();
        self.volumes.iter().zip(&s.coeffs).all(|(a, b)| a == b) && self.overflow == &s.total - head
    }
}

/// Law of v(d_1) for n = 2 and alpha = (2e-1, 2e-1), from v(d_1) = |alpha|/2 + v(c) where
/// v(c) = r >= 1 - e has measure (1 - q^-1) q^{-r-e+1}. Returns the masses of v(d_1) = v for
/// v < ell and the mass of v(d_1) >= ell.
pub fn odd_pair_law(alpha: &Partition, ell: u32, q0: &BigRational) -> Result<(Vec<BigRational>, BigRational)> {
    let a = alpha.entries();
    if a.len() != 2 || a[0] != a[1] || a[0].rem_euclid(2) != 1 {
        return Err(Error::InvalidInput(format!("{alpha} is not an odd pair")));
    }
    let e = (a[0] + 1) / 2;
    let half = alpha.size() / 2;
    let step = BigRational::one() - crate::arith::rat_pow(q0, -1)?;
    let mut volumes = Vec::with_capacity(ell as usize);
    for v in 0..ell as i64 {
        let r = v - half;
        volumes.push(if r < 1 - e { BigRational::zero() } else { &step * crate::arith::rat_pow(q0, -r - e + 1)? });
    }
    // Tail sum over r >= ell - |alpha|/2 is q^{-(r_0 + e - 1)} with r_0 the first unresolved r.
    let r0 = (ell as i64 - half).max(1 - e);
    let overflow = crate::arith::rat_pow(q0, -(r0 + e - 1))?;
    Ok((volumes, overflow))
}

fn swap_gram(params: &RingParams, alpha: &Partition) -> Result<[QuatElem; 4]> {
    let g = build_gram(alpha, params)?;
    // j x j with j the antidiagonal permutation.
    Ok([g.get(1, 1), g.get(1, 0), g.get(0, 1), g.get(0, 0)])
}

pub fn delta_oracle(alpha: &Partition, ell: u32, p: u64) -> Result<DeltaDistribution> {
    if alpha.len() != 2 {
        return Err(Error::InvalidInput("the enumeration oracle covers n = 2 only".into()));
    }
    let params = RingParams::new(p, ell, None)?;
    // d_2^2 = Nrd(x) = p^{|alpha|}; read it at a level where it is visible.
    let size = alpha.size();
    if size < 0 {
        return Err(Error::InvalidInput(format!("{alpha} has negative entries")));
    }
    let wide = params.with_level(ell.max(size as u32 + 1))?;
    let g = build_gram(alpha, &wide)?;
    let nrd = g.matrix().matrix_nrd(&wide)?;
    let v2 = wide.scalar_valuation(nrd).ok_or_else(|| Error::InsufficientPrecision("reduced norm vanished".into()))?;
    if v2 % 2 != 0 {
        return Err(Error::InvalidInput("reduced norm is not a square".into()));
    }
    let [x11, x12, x21, x22] = swap_gram(&params, alpha)?;
    let m = params.modulus();
    let mut counts = vec![0u64; ell as usize];
    let mut overflow = 0u64;
    let mut samples = 0u64;
    for d in 0..m {
        for c in 0..m {
            for b in (0..m).step_by(p as usize) {
                for a in (0..m).step_by(p as usize) {
                    let y = QuatElem::new(a, b, c, d);
                    let yb = params.conj(&y);
                    // (nu x nu*)_{11} = x11 + y x21 + x12 ybar + y x22 ybar
                    let mut e = x11;
                    e = params.add(&e, &params.mul(&y, &x21));
                    e = params.add(&e, &params.mul(&x12, &yb));
                    e = params.add(&e, &params.mul(&params.mul(&y, &x22), &yb));
                    if e.b != 0 || e.c != 0 || e.d != 0 {
                        return Err(Error::InvalidInput("diagonal entry left the centre".into()));
                    }
                    match params.scalar_valuation(e.a) {
                        Some(v) => counts[v as usize] += 1,
                        None => overflow += 1,
                    }
                    samples += 1;
                }
            }
        }
    }
    let frac = |k: u64| BigRational::new(BigInt::from(k), BigInt::from(samples));
    Ok(DeltaDistribution { p, ell, v2: v2 / 2, volumes: counts.iter().map(|&k| frac(k)).collect(), overflow: frac(overflow), samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn closed_form_values() {
        let d = delta_closed(&p("2,0")).unwrap();
        assert_eq!((d.coeff.clone(), d.monomial.clone()), (RatFuncQ::q_pow(-1), vec![0, 1]));
        assert!(d.den.is_empty());
        let d = delta_closed(&p("0,0,0")).unwrap();
        assert_eq!(d.coeff, RatFuncQ::one());
        assert_eq!(d.monomial, vec![0, 0, 0]);
        let d = delta_closed(&p("1,1")).unwrap();
        assert_eq!(d.monomial, vec![1, 1]);
        assert_eq!(d.den, vec![Binomial::new(1, 0, RatFuncQ::q())]);
    }

    #[test]
    fn series_forms() {
        let q = int(3);
        let s = delta_series_size2(&p("2,0"), 2, &q).unwrap();
        assert_eq!((s.u_exponent, s.coeffs.clone()), (1, vec![int(1), int(0), int(0)]));
        let s = delta_series_size2(&p("1,1"), 3, &q).unwrap();
        assert_eq!(s.u_exponent, 1);
        assert_eq!(s.coeffs, vec![int(0), rat(2, 3), rat(2, 9), rat(2, 27)]);
        assert_eq!(s.total, int(1));
    }

    #[test]
    fn oracle_matches_closed_form() {
        for (a, ell) in [("0,0", 2), ("2,0", 2), ("1,1", 2), ("1,1", 3), ("3,3", 3), ("2,2", 2)] {
            let alpha = p(a);
            let dist = delta_oracle(&alpha, ell, 3).unwrap();
            let series = delta_series_size2(&alpha, ell as usize + 1, &int(3)).unwrap();
            assert!(dist.matches(&series), "{a} at level {ell}: {dist:?} vs {series:?}");
        }
    }

    #[test]
    fn odd_pair_law_matches_enumeration() {
        for (a, ell) in [("1,1", 2), ("1,1", 3), ("3,3", 3)] {
            let d = delta_oracle(&p(a), ell, 3).unwrap();
            let (vols, over) = odd_pair_law(&p(a), ell, &int(3)).unwrap();
            assert_eq!((d.volumes, d.overflow), (vols, over), "{a} at level {ell}");
        }
    }

    #[test]
    fn geometric_tail() {
        let d = delta_oracle(&p("1,1"), 3, 3).unwrap();
        assert_eq!(d.volumes, vec![int(0), rat(2, 3), rat(2, 9)]);
        assert_eq!(d.overflow, rat(1, 9));
    }
}
