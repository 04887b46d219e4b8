//! The induction identity for (m, n) = (2, 1), compared as power series in t = q^{-s_1}:
//! omega(pi^xi; s_1, 0) = (w_1 w_1 / w_2)(q^-2) sum_a mu^pr(pi^(2a), pi^xi) / mu(pi^(2a), pi^(2a)) t^a.

use super::psi_explicit;
use crate::arith::{rat_pow, ser_rationals, RatFuncQ};
use crate::density::{density_at_level, density_self_closed, CountConfig, Method};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::quat::RingParams;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesTruncation {
    pub var: String,
    pub order: usize,
    #[serde(serialize_with = "ser_rationals")]
    pub coeffs: Vec<BigRational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InductionReport {
    pub xi: Partition,
    pub m: usize,
    pub n: usize,
    pub p: u64,
    pub ell: u32,
    pub lhs: SeriesTruncation,
    pub rhs: SeriesTruncation,
    /// Normalized primitive densities mu^pr(pi^(2a), pi^xi), a = 0..=order.
    #[serde(serialize_with = "ser_rationals")]
    pub densities: Vec<BigRational>,
    pub agree: bool,
}

/// Left side: Psi(pi^xi)/G_2 at x_1 = t/q, x_2 = q (that is s_2 = 0), expanded in t.
fn lhs_series(xi: &Partition, order: usize, q0: &BigRational) -> Result<Vec<BigRational>> {
    let psi = psi_explicit(xi)?;
    let mut poly = vec![BigRational::zero(); order + 1];
    for (e, c) in psi.terms() {
        if e[0] < 0 {
            return Err(Error::NotApplicable("negative power of t".into()));
        }
        let k = e[0] as usize;
        if k <= order {
            poly[k] += c.eval(q0)? * rat_pow(q0, (e[1] - e[0]) as i64)?;
        }
    }
    // Divide by G_2 = x_2 - q x_1 = q - t.
    let mut out = vec![BigRational::zero(); order + 1];
    for (i, a) in poly.iter().enumerate() {
        for j in 0..=order - i {
            out[i + j] += a * rat_pow(q0, -(j as i64) - 1)?;
        }
    }
    Ok(out)
}

pub fn verify_induction(xi: &Partition, order: usize, p: u64, ell: u32, cfg: &CountConfig) -> Result<InductionReport> {
    if xi.len() != 2 || xi.entries()[1] < 0 {
        return Err(Error::InvalidInput(format!("{xi} is not a nonnegative label of size 2")));
    }
    let q0 = BigRational::from_integer(p.into());
    let params = RingParams::new(p, ell, None)?;
    let lhs = lhs_series(xi, order, &q0)?;
    let method = if xi.odd_count() == 0 { Method::Convolve } else { Method::Enumerate };
    let factor = (&RatFuncQ::one() + &RatFuncQ::q_pow(-2)).inv()?.eval(&q0)?;
    let mut rhs = Vec::with_capacity(order + 1);
    let mut densities = Vec::with_capacity(order + 1);
    for a in 0..=order {
        let target = Partition::new(vec![2 * a as i64])?;
        let d = density_at_level(&target, xi, &params, true, method, cfg)?;
        let own = density_self_closed(&target).eval(&q0)?;
        rhs.push(&factor * &d.normalized / own);
        densities.push(d.normalized);
    }
    let agree = lhs == rhs;
    let series = |coeffs| SeriesTruncation { var: "t".into(), order, coeffs };
    Ok(InductionReport { xi: xi.clone(), m: 2, n: 1, p, ell, lhs: series(lhs), rhs: series(rhs), densities, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn constant_term_for_unit_form() {
        let s = lhs_series(&"0,0".parse().unwrap(), 1, &BigRational::from_integer(3.into())).unwrap();
        // (1 - q^-1)/(1 + q^-2) at q = 3
        assert_eq!(s[0], rat(3, 5));
    }

    #[test]
    fn identity_holds_at_order_one() {
        let cfg = CountConfig::default();
        for xi in ["0,0", "2,0"] {
            let r = verify_induction(&xi.parse().unwrap(), 1, 3, 2, &cfg).unwrap();
            assert!(r.agree, "{xi}: {:?} vs {:?}", r.lhs.coeffs, r.rhs.coeffs);
        }
    }
}
