//! Ideal structure of the image of the spherical transform for n = 3, 4:
//! Psi values written in s_1, ..., s_n and tested for membership in the ideal
//! of Q[s_1, ..., s_n] generated by two of them, at rational values of q.

use super::psi_explicit;
use crate::arith::{rational_to_string, RatFuncQ};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::sympoly::{symmetric_sum, to_elementary, Binomial, ElemSymExpr, IdealBasis, LaurentPoly, MonomialOrder, SymTemplate};
use num_rational::BigRational;
use serde::Serialize;

pub type SymExpr = ElemSymExpr<RatFuncQ>;

pub fn psi_elementary(alpha: &Partition) -> Result<SymExpr> {
    to_elementary(&psi_explicit(alpha)?)
}

/// Substitute q = q0 in every coefficient.
pub fn specialize(f: &SymExpr, q0: &BigRational) -> Result<ElemSymExpr<BigRational>> {
    f.map_coeffs(|c| c.eval(q0))
}

/// Labels of the two generators: 1_n and the label with all odd pairs (0,-1,-1) or (-1,-1,-1,-1).
pub fn generator_labels(n: usize) -> Result<[Partition; 2]> {
    match n {
        3 => Ok([Partition::new(vec![0, 0, 0])?, Partition::new(vec![0, -1, -1])?]),
        4 => Ok([Partition::new(vec![0; 4])?, Partition::new(vec![-1; 4])?]),
        _ => Err(Error::NotApplicable(format!("ideal generators are tabulated for n = 3, 4, not {n}"))),
    }
}

fn s_term(exp: &[i32], c: RatFuncQ) -> LaurentPoly<RatFuncQ> {
    LaurentPoly::monomial(exp.to_vec(), c)
}

/// The generator polynomials in the form they are usually displayed, as a cross-check.
pub fn displayed_generators(n: usize) -> Result<[SymExpr; 2]> {
    let one = RatFuncQ::one();
    let q = |k: i64| RatFuncQ::q_pow(k);
    let t = &(&q(-2) + &q(-1)) + &one; // q^-2 + q^-1 + 1
    let c = &q(2) * &(&t * &t);
    let build = |terms: Vec<(Vec<i32>, RatFuncQ)>| -> Result<SymExpr> {
        let mut p = LaurentPoly::zero(n);
        for (e, k) in terms {
            p = p.add(&s_term(&e, k))?;
        }
        ElemSymExpr::new(p, 0)
    };
    match n {
        3 => Ok([
            build(vec![(vec![1, 1, 0], one.clone()), (vec![0, 0, 1], -c.clone())])?,
            build(vec![(vec![2, 0, 0], one.clone()), (vec![0, 1, 0], -c)])?,
        ]),
        4 => {
            let a = &(&q(3) * &(&q(-2) + &one)) * &(&q(-1) + &one).pow(4)?;
            let b = &(&q(3) * &(&q(-2) + &one).pow(2)?) * &t;
            Ok([
                build(vec![
                    (vec![1, 1, 1, 0], one.clone()),
                    (vec![2, 0, 0, 1], -c.clone()),
                    (vec![0, 0, 2, 0], -c.clone()),
                    (vec![0, 1, 0, 1], a),
                ])?,
                build(vec![(vec![0, 2, 0, 0], one.clone()), (vec![1, 0, 1, 0], -(&q(1) * &t)), (vec![0, 0, 0, 1], b)])?,
            ])
        }
        _ => Err(Error::NotApplicable(format!("no displayed generators for n = {n}"))),
    }
}

/// Divide by the grevlex-leading coefficient and drop the s_n power (a unit of R).
pub fn normalized(f: &SymExpr) -> Result<LaurentPoly<RatFuncQ>> {
    let p = f.poly();
    let lead = p.terms().iter().max_by(|a, b| MonomialOrder::GrevLex.cmp(a.0, b.0)).map(|(_, c)| c.clone()).ok_or(Error::DivisionByZero)?;
    Ok(p.scale(&lead.inv()?))
}

/// Whether each computed generator equals the displayed polynomial up to a unit.
pub fn generators_match_display(n: usize) -> Result<[bool; 2]> {
    let labels = generator_labels(n)?;
    let shown = displayed_generators(n)?;
    let mut out = [false; 2];
    for k in 0..2 {
        out[k] = normalized(&psi_elementary(&labels[k])?)? == normalized(&shown[k])?;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipVerdict {
    pub label: String,
    pub q0: String,
    pub member: bool,
    /// Same verdict under lex order.
    pub order_independent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealReport {
    pub n: usize,
    pub scope: &'static str,
    pub generators: Vec<String>,
    pub generators_match_display: [bool; 2],
    pub basis_sizes: Vec<(String, usize)>,
    pub verdicts: Vec<MembershipVerdict>,
}

impl IdealReport {
    pub fn all_members(&self) -> bool {
        self.verdicts.iter().all(|v| v.member && v.order_independent)
    }
}

struct Specialized {
    q0: BigRational,
    grevlex: IdealBasis,
    lex: IdealBasis,
}

fn bases(n: usize, q_specs: &[BigRational]) -> Result<Vec<Specialized>> {
    let gens: Vec<SymExpr> = generator_labels(n)?.iter().map(psi_elementary).collect::<Result<_>>()?;
    q_specs
        .iter()
        .map(|q0| {
            let g: Vec<_> = gens.iter().map(|f| specialize(f, q0)).collect::<Result<_>>()?;
            Ok(Specialized {
                q0: q0.clone(),
                grevlex: IdealBasis::new(&g, q0.clone(), MonomialOrder::GrevLex)?,
                lex: IdealBasis::new(&g, q0.clone(), MonomialOrder::Lex)?,
            })
        })
        .collect()
}

/// Membership of labelled symmetric polynomials (times the s_n power clearing their denominators).
pub fn membership_report(n: usize, items: &[(String, SymExpr)], q_specs: &[BigRational]) -> Result<IdealReport> {
    let specs = bases(n, q_specs)?;
    let mut verdicts = Vec::new();
    for (label, f) in items {
        if f.arity() != n {
            return Err(Error::ArityMismatch { expected: n, got: f.arity() });
        }
        for s in &specs {
            let g = specialize(f, &s.q0)?;
            let member = s.grevlex.contains_poly(g.poly())?;
            let lex = s.lex.contains_poly(g.poly())?;
            verdicts.push(MembershipVerdict {
                label: label.clone(),
                q0: rational_to_string(&s.q0),
                member,
                order_independent: member == lex,
            });
        }
    }
    Ok(IdealReport {
        n,
        scope: "verified at specializations",
        generators: generator_labels(n)?.iter().map(|p| p.to_string()).collect(),
        generators_match_display: generators_match_display(n)?,
        basis_sizes: specs.iter().map(|s| (rational_to_string(&s.q0), s.grevlex.basis.len())).collect(),
        verdicts,
    })
}

/// Membership of Psi(pi^alpha) for each alpha.
pub fn psi_membership(n: usize, alphas: &[Partition], q_specs: &[BigRational]) -> Result<IdealReport> {
    let items: Vec<(String, SymExpr)> = alphas
        .iter()
        .map(|a| {
            if a.len() != n {
                return Err(Error::ArityMismatch { expected: n, got: a.len() });
            }
            Ok((a.to_string(), psi_elementary(a)?))
        })
        .collect::<Result<_>>()?;
    membership_report(n, &items, q_specs)
}

/// The finite family of orbit sums that reduces the n = 3 membership question to
/// finitely many checks: P1(a, b) for a, b in 0..=2, P2(a) and P3(a) for a in 1..=2.
pub fn reduction_family_n3() -> Result<Vec<(String, SymExpr)>> {
    let base = SymTemplate::vandermonde_pairs(3, &[RatFuncQ::q(), RatFuncQ::q_pow(-2)]);
    let mut out = Vec::new();
    for a in 0..=2 {
        for b in 0..=2 {
            out.push((format!("P1({a},{b})"), to_elementary(&symmetric_sum(&base, &[a, b, 0])?)?));
        }
    }
    let p2 = base.clone().with_den(Binomial::new(1, 2, RatFuncQ::q()));
    let p3 = base.with_den(Binomial::new(0, 1, RatFuncQ::q()));
    for a in 1..=2 {
        out.push((format!("P2({a})"), to_elementary(&symmetric_sum(&p2, &[a, 0, 0])?)?));
        out.push((format!("P3({a})"), to_elementary(&symmetric_sum(&p3, &[a, a, 0])?)?));
    }
    Ok(out)
}

/// Default label sets for the membership checks.
pub fn default_labels(n: usize) -> Result<Vec<Partition>> {
    let raw: &[&[i64]] = match n {
        3 => &[&[0, 0, 0], &[0, -1, -1], &[2, 0, 0], &[1, 1, 0], &[2, 2, 0], &[2, 1, 1], &[4, 0, 0], &[3, 3, 0]],
        4 => &[&[0, 0, 0, 0], &[-1, -1, -1, -1], &[2, 0, 0, 0], &[1, 1, 0, 0], &[2, 2, 0, 0], &[1, 1, -1, -1], &[2, 1, 1, 0]],
        _ => return Err(Error::NotApplicable(format!("no default labels for n = {n}"))),
    };
    raw.iter().map(|v| Partition::new(v.to_vec())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn displayed_forms_for_size_three() {
        // The second printed generator carries q^2 (q^-2 + q^-1 + 1)^2 on s_2; the
        // orbit sum gives q (q^-2 + q^-1 + 1), the same shape as the n = 4 case.
        assert_eq!(generators_match_display(3).unwrap(), [true, false]);
        let t = &(&RatFuncQ::q_pow(-2) + &RatFuncQ::q_pow(-1)) + &RatFuncQ::one();
        let mut p = LaurentPoly::monomial(vec![2, 0, 0], RatFuncQ::one());
        p.add_term(vec![0, 1, 0], -(&RatFuncQ::q() * &t));
        let fixed = ElemSymExpr::new(p, 0).unwrap();
        let psi = psi_elementary(&generator_labels(3).unwrap()[1]).unwrap();
        assert_eq!(normalized(&psi).unwrap(), normalized(&fixed).unwrap());
    }

    #[test]
    fn size_three_membership() {
        let labels = default_labels(3).unwrap();
        let r = psi_membership(3, &labels[..6], &[int(3)]).unwrap();
        assert!(r.all_members(), "{:?}", r.verdicts);
        let fam = reduction_family_n3().unwrap();
        let r = membership_report(3, &fam, &[int(3)]).unwrap();
        assert!(r.all_members(), "{:?}", r.verdicts);
    }

    #[test]
    fn non_member_detected() {
        // s_1 alone is not in the ideal.
        let s1 = ElemSymExpr::generator(1, 3);
        let r = membership_report(3, &[("s1".into(), s1)], &[int(3)]).unwrap();
        assert!(!r.verdicts[0].member);
    }
}
