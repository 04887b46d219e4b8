//! Multivariate Laurent polynomials, S_n orbit sums, elementary symmetric
//! decomposition and ideal membership in Q[s_1, ..., s_n].

mod elementary;
mod groebner;
mod laurent;
mod template;

pub use elementary::{elementary, to_elementary, ElemSymExpr};
pub use groebner::{buchberger, groebner, ideal_member, normal_form, normalize_leading, IdealBasis, MonomialOrder, QPolyN};
pub use laurent::LaurentPoly;
pub use template::{permutation_sign, symmetric_sum, symmetric_sum_naive, Binomial, SymTemplate};

use crate::arith::Coeff;
use crate::error::{Error, Result};

/// Reduce one large exponent: for lambda_l >= n,
/// P(c, lambda) = sum_{i=1}^n (-1)^{i-1} e_i(x) P(c, lambda - i e_l).
/// Returns (left side, right side) so callers can compare them.
pub fn exponent_reduction<C: Coeff>(t: &SymTemplate<C>, lambda: &[i32], l: usize) -> Result<(LaurentPoly<C>, LaurentPoly<C>)> {
    let n = t.arity;
    if l >= n || lambda.len() != n {
        return Err(Error::InvalidInput("index or arity out of range".into()));
    }
    if (lambda[l] as usize) < n {
        return Err(Error::InvalidInput(format!("entry {} is below n = {n}", lambda[l])));
    }
    let lhs = symmetric_sum(t, lambda)?;
    let mut rhs = LaurentPoly::zero(n);
    for i in 1..=n {
        let mut mu = lambda.to_vec();
        mu[l] -= i as i32;
        let term = elementary::<C>(i, n).mul(&symmetric_sum(t, &mu)?)?;
        rhs = if i % 2 == 1 { rhs.add(&term)? } else { rhs.sub(&term)? };
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RatFuncQ;

    #[test]
    fn reduction_identity_three_variables() {
        let q = RatFuncQ::q();
        let t = SymTemplate::vandermonde_pairs(3, &[q.clone(), RatFuncQ::q_pow(-2)]);
        let (lhs, rhs) = exponent_reduction(&t, &[3, 0, 0], 0).unwrap();
        assert_eq!(lhs, rhs);
        assert!(exponent_reduction(&t, &[2, 0, 0], 0).is_err());
    }
}
