//! Spherical functions Psi(pi^alpha; z) as symmetric Laurent polynomials in
//! x_i = q^{z_i}, with x written for the vector (x_1, ..., x_n).

mod delta;
pub mod ideal;
mod induction;

pub use delta::{delta_closed, delta_oracle, delta_series_size2, odd_pair_law, DeltaClosed, DeltaDistribution, DeltaSeries};
pub use induction::{verify_induction, InductionReport, SeriesTruncation};

use crate::arith::{w_poly, RatFuncQ};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::sympoly::{symmetric_sum, Binomial, LaurentPoly, SymTemplate};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

pub type ZPoly = LaurentPoly<RatFuncQ>;

/// lambda_i = floor((alpha_i + 1) / 2).
pub fn lambda_alpha(alpha: &Partition) -> Vec<i64> {
    alpha.lambda()
}

#[derive(Clone, Debug, PartialEq)]
pub struct OddData {
    /// 1-based first members of the odd pairs.
    pub i_odd: Vec<usize>,
    pub c_odd: RatFuncQ,
}

pub fn odd_data(alpha: &Partition) -> OddData {
    let n = alpha.len() as i64;
    let i_odd = alpha.odd_pairs();
    let mut c = RatFuncQ::one();
    let unit = &RatFuncQ::one() - &RatFuncQ::q_pow(-1);
    for &l in &i_odd {
        c = &(&c * &unit) * &RatFuncQ::q_pow(n - 2 * l as i64 + 1);
    }
    OddData { i_odd, c_odd: c }
}

/// (-n+1, -n+3, ..., n-1), the z-point of s = 0.
pub fn z_zero(n: usize) -> Vec<i64> {
    (0..n as i64).map(|i| 2 * i - n as i64 + 1).collect()
}

/// prod_{i<j} (x_j - q x_i).
pub fn gn_factor(n: usize) -> ZPoly {
    let q = RatFuncQ::q();
    let mut g = ZPoly::one(n);
    for j in 0..n {
        for i in 0..j {
            g = g.mul(&ZPoly::binomial(j, i, &q, n)).expect("same arity");
        }
    }
    g
}

fn to_i32(v: &[i64]) -> Result<Vec<i32>> {
    v.iter().map(|&x| i32::try_from(x).map_err(|_| Error::InvalidInput(format!("exponent {x} out of range")))).collect()
}

/// The orbit-sum summand of Psi without its prefactor, and the exponent mu = lambda_alpha.
pub fn main_term_template(alpha: &Partition) -> Result<(SymTemplate<RatFuncQ>, Vec<i32>)> {
    let n = alpha.len();
    let mut t = SymTemplate::vandermonde_pairs(n, &[RatFuncQ::q(), RatFuncQ::q_pow(-2)]);
    for l in alpha.odd_pairs() {
        t = t.with_den(Binomial::new(l - 1, l, RatFuncQ::q()));
    }
    Ok((t, to_i32(&alpha.lambda())?))
}

/// Constant in front of the orbit sum: (1-q^-2)^n c_odd q^{<lambda, z_0>} / w_n(q^-2).
pub fn psi_prefactor(alpha: &Partition) -> Result<RatFuncQ> {
    let n = alpha.len();
    let lam = alpha.lambda();
    let pair: i64 = lam.iter().zip(z_zero(n)).map(|(a, b)| a * b).sum();
    let top = (&RatFuncQ::one() - &RatFuncQ::q_pow(-2)).pow(n as i64)?;
    let pre = &(&top * &odd_data(alpha).c_odd) * &RatFuncQ::q_pow(pair);
    pre.div(&w_poly(n, &RatFuncQ::q_pow(-2)))
}

/// The main term Q(alpha; z): the orbit sum alone.
pub fn main_term_q(alpha: &Partition) -> Result<ZPoly> {
    let (t, mu) = main_term_template(alpha)?;
    symmetric_sum(&t, &mu)
}

/// Psi(pi^alpha; z) = G_n(z) omega(pi^alpha; z).
pub fn psi_explicit(alpha: &Partition) -> Result<ZPoly> {
    Ok(main_term_q(alpha)?.scale(&psi_prefactor(alpha)?))
}

/// omega(pi^alpha; z) for n = 2 as (numerator, G_2), computed from the two-case
/// size-two formula rather than the general orbit sum.
pub fn size2_closed(alpha: &Partition) -> Result<(ZPoly, ZPoly)> {
    let e = alpha.entries();
    if e.len() != 2 {
        return Err(Error::InvalidInput(format!("{alpha} is not of size 2")));
    }
    let q = RatFuncQ::q();
    let num = if e[0].rem_euclid(2) == 1 {
        // (2e-1, 2e-1): q (1 - q^-1) (x_1 x_2)^e
        let k = to_i32(&[(e[0] + 1) / 2])?[0];
        let c = &q * &(&RatFuncQ::one() - &RatFuncQ::q_pow(-1));
        ZPoly::monomial(vec![k, k], c)
    } else {
        let lam = to_i32(&[e[0] / 2, e[1] / 2])?;
        let pair = (lam[1] - lam[0]) as i64; // <lambda, (-1, 1)>
        let scale = RatFuncQ::q_pow(pair).div(&(&RatFuncQ::one() + &RatFuncQ::q_pow(-2)))?;
        let t = SymTemplate::unit(2)
            .with_num(Binomial::new(0, 1, RatFuncQ::q_pow(-2)))
            .with_num(Binomial::new(0, 1, q.clone()))
            .with_den(Binomial::new(0, 1, RatFuncQ::one()));
        symmetric_sum(&t, &lam)?.scale(&scale)
    };
    Ok((num, gn_factor(2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HlKind {
    /// prod (x_i - q^-1 x_j)/(x_i - x_j)
    GL,
    /// prod (x_i - q^-2 x_j)/(x_i - x_j)
    A,
    /// prod (x_i + q^-1 x_j)/(x_i - x_j)
    H,
}

impl std::str::FromStr for HlKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GL" | "gl" => Ok(HlKind::GL),
            "A" | "a" => Ok(HlKind::A),
            "H" | "h" => Ok(HlKind::H),
            _ => Err(Error::Parse(format!("unknown family {s}"))),
        }
    }
}

/// Hall-Littlewood type orbit sums sum_sigma sigma(x^lambda prod_{i<j} (x_i - c x_j)/(x_i - x_j)).
pub fn hl_variants(kind: HlKind, lambda: &[i64]) -> Result<ZPoly> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput("lambda must be weakly decreasing".into()));
    }
    let c = match kind {
        HlKind::GL => RatFuncQ::q_pow(-1),
        HlKind::A => RatFuncQ::q_pow(-2),
        HlKind::H => -RatFuncQ::q_pow(-1),
    };
    let n = lambda.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty lambda".into()));
    }
    symmetric_sum(&SymTemplate::vandermonde_pairs(n, &[c]), &to_i32(lambda)?)
}

/// Direction for the affine change of variables between s and z.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SzDirection {
    SToZ,
    ZToS,
}

/// s_i = -z_i + z_{i+1} - 2 (i < n), s_n = -z_n + n - 1.
pub fn sz_convert(point: &[BigRational], dir: SzDirection) -> Vec<BigRational> {
    let n = point.len();
    let k = |v: i64| BigRational::from_integer(v.into());
    let mut out = vec![BigRational::zero(); n];
    if n == 0 {
        return out;
    }
    match dir {
        SzDirection::ZToS => {
            for i in 0..n - 1 {
                out[i] = -&point[i] + &point[i + 1] - k(2);
            }
            out[n - 1] = -&point[n - 1] + k(n as i64 - 1);
        }
        SzDirection::SToZ => {
            out[n - 1] = k(n as i64 - 1) - &point[n - 1];
            for i in (0..n - 1).rev() {
                out[i] = &out[i + 1] - k(2) - &point[i];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(k: i64) -> RatFuncQ {
        RatFuncQ::q_pow(k)
    }

    fn one() -> RatFuncQ {
        RatFuncQ::one()
    }

    #[test]
    fn ingredients() {
        assert_eq!(lambda_alpha(&p("3,3,2")), vec![2, 2, 1]);
        assert_eq!(lambda_alpha(&p("-1,-1")), vec![0, 0]);
        assert_eq!(odd_data(&p("2,0")).c_odd, one());
        let d = odd_data(&p("1,1"));
        assert_eq!(d.i_odd, vec![1]);
        assert_eq!(d.c_odd, &(&one() - &q(-1)) * &q(1));
        assert_eq!(odd_data(&p("3,3,0")).c_odd, &(&one() - &q(-1)) * &q(2));
        assert_eq!(z_zero(2), vec![-1, 1]);
        assert_eq!(z_zero(3), vec![-2, 0, 2]);
        let g2 = ZPoly::var(1, 2).sub(&ZPoly::var(0, 2).scale(&q(1))).unwrap();
        assert_eq!(gn_factor(2), g2);
    }

    #[test]
    fn small_psi_values() {
        assert_eq!(psi_explicit(&p("0")).unwrap(), ZPoly::one(1));
        assert_eq!(psi_explicit(&p("-1,-1")).unwrap(), ZPoly::constant(&q(1) - &one(), 2));
        // (0,0): (1 - q^-1)(x_1 + x_2) / (1 + q^-2).
        let c = (&one() - &q(-1)).div(&(&one() + &q(-2))).unwrap();
        let expect = ZPoly::var(0, 2).add(&ZPoly::var(1, 2)).unwrap().scale(&c);
        assert_eq!(psi_explicit(&p("0,0")).unwrap(), expect);
        assert_eq!(main_term_q(&p("-1,-1")).unwrap(), ZPoly::constant(&one() + &q(-2), 2));
        assert_eq!(main_term_q(&p("4")).unwrap(), ZPoly::monomial(vec![2], one()));
    }

    #[test]
    fn size_two_formula_matches() {
        for a in -4i64..=4 {
            for b in -4..=a {
                let Ok(alpha) = Partition::new(vec![a, b]) else { continue };
                let (num, den) = size2_closed(&alpha).unwrap();
                assert_eq!(den, gn_factor(2));
                assert_eq!(num, psi_explicit(&alpha).unwrap(), "{alpha}");
            }
        }
    }

    #[test]
    fn symmetric_and_translation_covariant() {
        for s in ["2,0,0", "1,1,0", "3,3,0", "2,1,1", "0,-1,-1"] {
            let a = p(s);
            let psi = psi_explicit(&a).unwrap();
            assert!(psi.is_symmetric(), "{s}");
            let shifted = psi_explicit(&a.shifted(1)).unwrap();
            assert_eq!(shifted, psi.shift(&[1, 1, 1]));
        }
    }

    #[test]
    fn hall_littlewood_families() {
        assert_eq!(hl_variants(HlKind::GL, &[0, 0]).unwrap(), ZPoly::constant(&one() + &q(-1), 2));
        assert_eq!(hl_variants(HlKind::A, &[0, 0]).unwrap(), ZPoly::constant(&one() + &q(-2), 2));
        assert_eq!(hl_variants(HlKind::H, &[0, 0]).unwrap(), ZPoly::constant(&one() - &q(-1), 2));
        for kind in [HlKind::GL, HlKind::A, HlKind::H] {
            assert!(hl_variants(kind, &[2, 1, 0]).unwrap().is_symmetric());
        }
        assert!(hl_variants(HlKind::GL, &[0, 1]).is_err());
    }

    #[test]
    fn change_of_variables() {
        let s0 = vec![int(0), int(0)];
        assert_eq!(sz_convert(&s0, SzDirection::SToZ), vec![int(-1), int(1)]);
        let s0 = vec![int(0); 3];
        assert_eq!(sz_convert(&s0, SzDirection::SToZ), vec![int(-2), int(0), int(2)]);
        let z = vec![int(3), int(-7), int(2), int(5)];
        assert_eq!(sz_convert(&sz_convert(&z, SzDirection::ZToS), SzDirection::SToZ), z);
    }
}
