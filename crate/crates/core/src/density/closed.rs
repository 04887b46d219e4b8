//! Closed formulas for local densities, symbolic in q.

use crate::arith::{w_poly, RatFuncQ};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Exponent of q in the normalization of N_ell for an m x m form representing an n x n one.
pub fn normalization_exponent(ell: u32, m: usize, n: usize) -> i64 {
    let (l, m, n) = (ell as i64, m as i64, n as i64);
    l * n * (4 * m - 2 * n + 1) + n * (n - 1)
}

/// mu(pi^alpha, pi^alpha) for any alpha in Lambda_n.
pub fn density_self_closed(alpha: &Partition) -> RatFuncQ {
    let twice = 2 * alpha.n_weight() + (alpha.size() + alpha.odd_count() as i64) / 2;
    let mut acc = RatFuncQ::q_pow(twice);
    let minus_inv_q = -RatFuncQ::q_pow(-1);
    let q_m4 = RatFuncQ::q_pow(-4);
    for (v, mult) in alpha.groups() {
        let f = if v.rem_euclid(2) == 0 { w_poly(mult, &minus_inv_q) } else { w_poly(mult / 2, &q_m4) };
        acc = &acc * &f;
    }
    acc
}

/// Multiply by q^{e n (2n-1)}: the effect of scaling both forms by pi^e.
pub fn apply_shift(mu: &RatFuncQ, e: i64, n: usize) -> RatFuncQ {
    let n = n as i64;
    mu * &RatFuncQ::q_pow(e * n * (2 * n - 1))
}

/// mu^pr(0, h_t) = q (1 - q^{-4t}).
pub fn density_zero_ht(t: usize) -> Result<RatFuncQ> {
    if t == 0 {
        return Err(Error::InvalidInput("t must be positive".into()));
    }
    Ok(&RatFuncQ::q() * &(&RatFuncQ::one() - &RatFuncQ::q_pow(-4 * t as i64)))
}

/// mu(h_t, h_t) = q^{4t^2} w_t(q^{-4}).
pub fn density_ht_closed(t: usize) -> Result<RatFuncQ> {
    if t == 0 {
        return Err(Error::InvalidInput("t must be positive".into()));
    }
    let t2 = (t * t) as i64;
    Ok(&RatFuncQ::q_pow(4 * t2) * &w_poly(t, &RatFuncQ::q_pow(-4)))
}

/// mu(1_n, 1_n) = w_n(-q^{-1}).
pub fn density_unit_closed(n: usize) -> Result<RatFuncQ> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    Ok(w_poly(n, &-RatFuncQ::q_pow(-1)))
}

/// mu(<1>, 1_n) = 1 - (-q^{-1})^n.
pub fn density_unit_into(n: usize) -> Result<RatFuncQ> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let x = (-RatFuncQ::q_pow(-1)).pow(n as i64)?;
    Ok(&RatFuncQ::one() - &x)
}

/// Right side of the block decomposition alpha = (gamma, beta):
/// q^{2 |gamma-size| |beta|} mu(pi^beta, pi^beta) mu(pi^gamma, pi^gamma), valid when min(gamma) > max(beta).
pub fn decomposition_rhs(gamma: &Partition, beta: &Partition) -> Result<RatFuncQ> {
    let g_min = *gamma.entries().last().expect("nonempty");
    if g_min <= beta.entries()[0] {
        return Err(Error::InvalidInput(format!("{gamma} does not dominate {beta}")));
    }
    let scale = RatFuncQ::q_pow(2 * gamma.len() as i64 * beta.size());
    Ok(&(&scale * &density_self_closed(beta)) * &density_self_closed(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn at3(f: &RatFuncQ) -> num_rational::BigRational {
        f.eval(&int(3)).unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(at3(&density_self_closed(&p("0"))), rat(4, 3));
        assert_eq!(at3(&density_self_closed(&p("0,0"))), rat(32, 27));
        assert_eq!(at3(&density_self_closed(&p("2,0"))), rat(16, 3));
        assert_eq!(at3(&density_self_closed(&p("1,1"))), int(80));
        assert_eq!(at3(&density_zero_ht(1).unwrap()), rat(80, 27));
        assert_eq!(at3(&density_unit_into(2).unwrap()), rat(8, 9));
        assert_eq!(density_self_closed(&p("1,1")).to_string(), "q^4 - 1");
    }

    #[test]
    fn special_families() {
        for n in 1..5 {
            assert_eq!(density_self_closed(&Partition::constant(0, n).unwrap()), density_unit_closed(n).unwrap());
        }
        for t in 1..4 {
            assert_eq!(density_self_closed(&Partition::constant(1, 2 * t).unwrap()), density_ht_closed(t).unwrap());
        }
        let h2 = density_ht_closed(2).unwrap();
        let expect = &(&RatFuncQ::q_pow(16) * &(&RatFuncQ::one() - &RatFuncQ::q_pow(-4))) * &(&RatFuncQ::one() - &RatFuncQ::q_pow(-8));
        assert_eq!(h2, expect);
    }

    #[test]
    fn size_two_cases() {
        let one = RatFuncQ::one();
        let a = &one + &RatFuncQ::q_pow(-1);
        for l1 in -2i64..4 {
            // (2l, 2l): q^{6l}(1 + q^-1)(1 - q^-2)
            let v = density_self_closed(&Partition::new(vec![2 * l1, 2 * l1]).unwrap());
            assert_eq!(v, &(&RatFuncQ::q_pow(6 * l1) * &a) * &(&one - &RatFuncQ::q_pow(-2)));
            // (2e-1, 2e-1): q^{6e-2}(1 - q^-4)
            let v = density_self_closed(&Partition::new(vec![2 * l1 - 1, 2 * l1 - 1]).unwrap());
            assert_eq!(v, &RatFuncQ::q_pow(6 * l1 - 2) * &(&one - &RatFuncQ::q_pow(-4)));
            for l2 in -3..l1 {
                let v = density_self_closed(&Partition::new(vec![2 * l1, 2 * l2]).unwrap());
                assert_eq!(v, &RatFuncQ::q_pow(l1 + 5 * l2) * &(&a * &a));
            }
        }
    }

    #[test]
    fn shift_rule() {
        for s in ["2,0", "1,1,0", "3,3,2", "0,-1,-1"] {
            let a = p(s);
            for e in -2..3 {
                assert_eq!(density_self_closed(&a.shifted(e)), apply_shift(&density_self_closed(&a), e, a.len()), "{s} shifted by {e}");
            }
        }
    }

    #[test]
    fn decomposition_identity() {
        for (g, b) in [("2", "0"), ("3,3", "1,1"), ("4,2", "0"), ("2,2", "1,1,0")] {
            let (g, b) = (p(g), p(b));
            let whole = g.concat(&b).unwrap();
            assert_eq!(density_self_closed(&whole), decomposition_rhs(&g, &b).unwrap());
        }
        assert!(decomposition_rhs(&p("0"), &p("0")).is_err());
    }

    #[test]
    fn normalization() {
        assert_eq!(normalization_exponent(1, 1, 1), 3);
        assert_eq!(normalization_exponent(1, 2, 1), 7);
        assert_eq!(normalization_exponent(2, 2, 2), 22);
    }
}
