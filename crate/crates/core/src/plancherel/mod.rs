//! Harmonic analysis for forms of size 2: the orthogonal family H_l, the weight w,
//! contour inner products computed as finite residue sums, spherical transforms of
//! orbit indicators, and the Plancherel and inversion identities.
//!
//! Coordinates: x = (z_1 + z_2)/2, y = (z_2 - z_1)/2, X = q^x, Y = q^y, W = Y^2.

pub mod bivariate;
pub mod residue;

pub use bivariate::{BiRational, UFactor};
pub use residue::{weight_w, ContourRule, ParamLaurent, Pole, WFactor, WRational};

use crate::arith::RatFuncQ;
use crate::density::density_self_closed;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::spherical::psi_explicit;
use crate::sympoly::LaurentPoly;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// Laurent polynomial in (X, Y) with coefficients in Q(q).
pub type XyPoly = LaurentPoly<RatFuncQ>;

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// H_l(Y) = sum over Y <-> 1/Y of Y^-l (1 - u_1 Y^2)(1 - u_2 Y^2) / (1 - Y^2).
pub fn h_poly(l: usize) -> Result<ParamLaurent> {
    if l == 0 {
        return Err(Error::InvalidInput("H_l needs l >= 1".into()));
    }
    let l = l as i32;
    let mono = |e: i32, c: BiRational| ParamLaurent::monomial(vec![e], c);
    let s = BiRational::u(1).add(&BiRational::u(2));
    let p = BiRational::u(1).mul(&BiRational::u(2));
    // A(Y) = Y^-l (1 - s Y^2 + p Y^4); the sum is (A(Y) - Y^2 A(1/Y)) / (1 - Y^2).
    let a = [(0, BiRational::one()), (2, s.neg()), (4, p)];
    let mut top = ParamLaurent::zero(1);
    for (k, c) in &a {
        top.add_term(vec![k - l], c.clone());
        top.add_term(vec![2 + l - k], c.neg());
    }
    let den = mono(0, BiRational::one()).sub(&mono(2, BiRational::one()))?;
    top.div_exact(&den)
}

/// Y -> 1/Y (complex conjugation on |Y| = 1 for real parameters).
fn mirror<C: crate::arith::Coeff>(f: &LaurentPoly<C>, axis: usize) -> LaurentPoly<C> {
    let mut r = LaurentPoly::zero(f.arity());
    for (e, c) in f.terms() {
        let mut e = e.clone();
        e[axis] = -e[axis];
        r.add_term(e, c.clone());
    }
    r
}

/// Integral over U of f(Y) * conj(g(Y)) * w(y) dy, times `normalization`.
/// Odd powers of Y integrate to zero; the rest is a residue sum in W = Y^2 with the
/// measure fixed by: integral of w = (1/2) * (1/2 pi i) * contour integral of w dW/W.
pub fn contour_inner(f: &ParamLaurent, g: &ParamLaurent, rule: &ContourRule, normalization: &BiRational) -> Result<BiRational> {
    let prod = f.mul(&mirror(g, 0))?;
    let mut in_w = ParamLaurent::zero(1);
    for (e, c) in prod.terms() {
        if e[0] % 2 == 0 {
            in_w.add_term(vec![e[0] / 2 - 1], c.clone());
        }
    }
    if in_w.is_zero() {
        return Ok(BiRational::zero());
    }
    let integrand = weight_w().mul_poly(&in_w)?;
    let total = integrand.contour_integral(rule)?;
    Ok(total.mul(normalization).scale(&BigRational::new(1.into(), 2.into())))
}

/// The specialization u_1 = q, u_2 = q^-2.
pub fn specialize_u(x: &BiRational) -> Result<RatFuncQ> {
    x.specialize(&RatFuncQ::q(), &RatFuncQ::q_pow(-2))
}

pub fn h_poly_specialized(l: usize) -> Result<LaurentPoly<RatFuncQ>> {
    h_poly(l)?.map_coeffs(specialize_u)
}

/// Moments m_k = integral of Y^k w dy at u_1 = q, u_2 = q^-2, cached by |k|.
pub struct MomentTable {
    rule: ContourRule,
    cache: BTreeMap<u32, RatFuncQ>,
}

impl MomentTable {
    pub fn new(rule: ContourRule) -> Self {
        MomentTable { rule, cache: BTreeMap::new() }
    }

    pub fn moment(&mut self, k: i32) -> Result<RatFuncQ> {
        let k = k.unsigned_abs();
        if k % 2 == 1 {
            return Ok(RatFuncQ::zero());
        }
        if let Some(v) = self.cache.get(&k) {
            return Ok(v.clone());
        }
        let f = ParamLaurent::monomial(vec![k as i32], BiRational::one());
        let v = specialize_u(&contour_inner(&f, &ParamLaurent::one(1), &self.rule, &BiRational::one())?)?;
        self.cache.insert(k, v.clone());
        Ok(v)
    }

    /// <f, g> over T x U before renormalization: X-characters pair by exponent matching.
    pub fn pair(&mut self, f: &XyPoly, g: &XyPoly) -> Result<RatFuncQ> {
        let mut acc = RatFuncQ::zero();
        for (ef, cf) in f.terms() {
            for (eg, cg) in g.terms() {
                if ef[0] != eg[0] {
                    continue;
                }
                let m = self.moment(ef[1] - eg[1])?;
                if !m.is_zero() {
                    acc = &acc + &(&(cf * cg) * &m);
                }
            }
        }
        Ok(acc)
    }
}

/// Factor making the transform-side pairing agree with the L^2 pairing on X:
/// (1 + q^-2)^2 / (1 - q^-1).
pub fn renormalization() -> Result<RatFuncQ> {
    let a = &RatFuncQ::one() + &RatFuncQ::q_pow(-2);
    (&a * &a).div(&(&RatFuncQ::one() - &RatFuncQ::q_pow(-1)))
}

fn check_size2(alpha: &Partition) -> Result<()> {
    if alpha.len() != 2 {
        return Err(Error::InvalidInput(format!("{alpha} is not a label of size 2")));
    }
    Ok(())
}

/// v(K . pi^alpha) with v(K . 1_2) = 1: proportional to q^{3|alpha|/2} / mu(pi^alpha, pi^alpha).
pub fn orbit_volume(alpha: &Partition) -> Result<RatFuncQ> {
    check_size2(alpha)?;
    let size = alpha.size();
    if size % 2 != 0 {
        return Err(Error::InvalidPartition(format!("{alpha} has odd size")));
    }
    let unit = density_self_closed(&Partition::new(vec![0, 0])?);
    (&unit * &RatFuncQ::q_pow(3 * size / 2)).div(&density_self_closed(alpha))
}

/// F(phi_alpha check) = scalar * X^x_exponent * H_h_index(Y), with H_0 read as 1.
#[derive(Clone, Debug, Serialize)]
pub struct TransformValue {
    pub alpha: Partition,
    #[serde(serialize_with = "ser_display")]
    pub scalar: RatFuncQ,
    pub x_exponent: i64,
    pub h_index: usize,
    #[serde(skip)]
    pub xy: XyPoly,
}

impl TransformValue {
    /// For pure X-powers, the index e of R_e = X^{2(e+1)}.
    pub fn r_index(&self) -> Option<i64> {
        (self.h_index == 0 && self.x_exponent % 2 == 0).then_some(self.x_exponent / 2 - 1)
    }
}

/// v(K . pi^alpha) Psi(pi^alpha; z) in (X, Y) coordinates, recognized as scalar * X^c * H_m.
pub fn f_hat_size2(alpha: &Partition) -> Result<TransformValue> {
    check_size2(alpha)?;
    let v = orbit_volume(alpha)?;
    let psi = psi_explicit(alpha)?;
    let mut xy = XyPoly::zero(2);
    for (e, c) in psi.terms() {
        // q^{a z_1 + b z_2} = X^{a+b} Y^{b-a}
        xy.add_term(vec![e[0] + e[1], e[1] - e[0]], c * &v);
    }
    let mut xs = xy.terms().keys().map(|e| e[0]);
    let c = xs.next().ok_or_else(|| Error::NotApplicable(format!("transform of {alpha} vanishes")))?;
    if xs.any(|x| x != c) {
        return Err(Error::NotApplicable(format!("transform of {alpha} mixes X-powers")));
    }
    let mut y_part = LaurentPoly::<RatFuncQ>::zero(1);
    for (e, k) in xy.terms() {
        y_part.add_term(vec![e[1]], k.clone());
    }
    let (top_e, top_c) = y_part.leading().map(|(e, k)| (e[0], k.clone())).ok_or(Error::DivisionByZero)?;
    if top_e < 0 {
        return Err(Error::NotApplicable(format!("transform of {alpha} is not Y-symmetric")));
    }
    let m = top_e as usize;
    let scalar = if m == 0 {
        if y_part.len() != 1 {
            return Err(Error::NotApplicable(format!("transform of {alpha} is not Y-symmetric")));
        }
        top_c
    } else {
        let h = h_poly_specialized(m)?;
        let lead = h.leading().map(|(_, k)| k.clone()).ok_or(Error::DivisionByZero)?;
        let s = top_c.div(&lead)?;
        if h.scale(&s) != y_part {
            return Err(Error::NotApplicable(format!("transform of {alpha} is not a multiple of H_{m}")));
        }
        s
    };
    Ok(TransformValue { alpha: alpha.clone(), scalar, x_exponent: c as i64, h_index: m, xy })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingRecord {
    pub alpha: Partition,
    pub beta: Partition,
    /// delta(alpha, beta) * v(K . pi^alpha)
    #[serde(serialize_with = "ser_display")]
    pub orbit_side: RatFuncQ,
    /// Renormalized contour pairing of the two transforms.
    #[serde(serialize_with = "ser_display")]
    pub transform_side: RatFuncQ,
    pub holds: bool,
}

/// Caches transforms and moments across many pairings.
pub struct PlancherelContext {
    moments: MomentTable,
    transforms: BTreeMap<Partition, TransformValue>,
    renorm: RatFuncQ,
}

impl PlancherelContext {
    pub fn new() -> Result<Self> {
        Ok(PlancherelContext {
            moments: MomentTable::new(ContourRule::deformed()),
            transforms: BTreeMap::new(),
            renorm: renormalization()?,
        })
    }

    pub fn transform(&mut self, alpha: &Partition) -> Result<TransformValue> {
        if let Some(t) = self.transforms.get(alpha) {
            return Ok(t.clone());
        }
        let t = f_hat_size2(alpha)?;
        self.transforms.insert(alpha.clone(), t.clone());
        Ok(t)
    }

    /// Pairing of F(phi_alpha check) and F(phi_beta check) before renormalization.
    pub fn raw_pairing(&mut self, alpha: &Partition, beta: &Partition) -> Result<RatFuncQ> {
        let a = self.transform(alpha)?;
        let b = self.transform(beta)?;
        self.moments.pair(&a.xy, &b.xy)
    }

    pub fn pairing(&mut self, alpha: &Partition, beta: &Partition) -> Result<RatFuncQ> {
        Ok(&self.raw_pairing(alpha, beta)? * &self.renorm)
    }

    pub fn plancherel(&mut self, alpha: &Partition, beta: &Partition) -> Result<PairingRecord> {
        let transform_side = self.pairing(alpha, beta)?;
        let orbit_side = if alpha == beta { orbit_volume(alpha)? } else { RatFuncQ::zero() };
        Ok(PairingRecord { alpha: alpha.clone(), beta: beta.clone(), holds: orbit_side == transform_side, orbit_side, transform_side })
    }

    /// (1 / v(K . x)) <F(phi_alpha check), F(ch_x)> with ch_x the indicator of the orbit
    /// of (pi^x)^-1, which is phi_x check.
    pub fn inversion(&mut self, alpha: &Partition, x: &Partition) -> Result<InversionRecord> {
        let value = self.pairing(alpha, x)?.div(&orbit_volume(x)?)?;
        let expected = if alpha == x { RatFuncQ::one() } else { RatFuncQ::zero() };
        Ok(InversionRecord { alpha: alpha.clone(), x: x.clone(), holds: value == expected, value, expected })
    }

    /// The diagonal pairing before renormalization against v(K . pi^alpha) (1 - q^-1)/(1 + q^-2)^2.
    pub fn norm(&mut self, alpha: &Partition) -> Result<NormRecord> {
        let value = self.raw_pairing(alpha, alpha)?;
        let expected = orbit_volume(alpha)?.div(&self.renorm)?;
        Ok(NormRecord { alpha: alpha.clone(), holds: value == expected, value, expected })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InversionRecord {
    pub alpha: Partition,
    pub x: Partition,
    #[serde(serialize_with = "ser_display")]
    pub value: RatFuncQ,
    #[serde(serialize_with = "ser_display")]
    pub expected: RatFuncQ,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormRecord {
    pub alpha: Partition,
    #[serde(serialize_with = "ser_display")]
    pub value: RatFuncQ,
    #[serde(serialize_with = "ser_display")]
    pub expected: RatFuncQ,
    pub holds: bool,
}

pub fn plancherel_check(alpha: &Partition, beta: &Partition) -> Result<bool> {
    Ok(PlancherelContext::new()?.plancherel(alpha, beta)?.holds)
}

pub fn inversion_check(alpha: &Partition, x: &Partition) -> Result<bool> {
    Ok(PlancherelContext::new()?.inversion(alpha, x)?.holds)
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityRecord {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub holds: bool,
}

fn record(name: String, expected: &BiRational, actual: &BiRational) -> OrthogonalityRecord {
    OrthogonalityRecord { name, expected: expected.to_string(), actual: actual.to_string(), holds: expected == actual }
}

/// Orthogonality of H_1..H_max, vanishing of their w-integrals, and the total mass of w,
/// as identities in (u_1, u_2).
pub fn orthogonality_suite(max: usize, rule: &ContourRule) -> Result<Vec<OrthogonalityRecord>> {
    let one = BiRational::one();
    let hs: Vec<ParamLaurent> = (1..=max).map(h_poly).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for l in 1..=max {
        for m in 1..=max {
            let expected = match (l, m) {
                (1, 1) => BiRational::factor(UFactor::OneMinusU1U2),
                _ if l == m => one.clone(),
                _ => BiRational::zero(),
            };
            let actual = contour_inner(&hs[l - 1], &hs[m - 1], rule, &one)?;
            out.push(record(format!("<H_{l}, H_{m}>"), &expected, &actual));
        }
    }
    for l in 1..=max {
        let actual = contour_inner(&hs[l - 1], &ParamLaurent::one(1), rule, &one)?;
        out.push(record(format!("int H_{l} w"), &BiRational::zero(), &actual));
    }
    let mass = [UFactor::OnePlusU1, UFactor::OnePlusU2, UFactor::OneMinusU1U2]
        .iter()
        .fold(one.clone(), |acc, f| acc.mul(&BiRational::inv_factor(*f, 1)));
    let actual = contour_inner(&ParamLaurent::one(1), &ParamLaurent::one(1), rule, &one)?;
    out.push(record("int w".into(), &mass, &actual));
    Ok(out)
}

/// Top Y-coefficient of H_l (1 for l > 1).
pub fn h_leading(l: usize) -> Result<BiRational> {
    let h = h_poly(l)?;
    let (e, c) = h.leading().ok_or(Error::DivisionByZero)?;
    if e[0] != l as i32 {
        return Err(Error::NotApplicable(format!("H_{l} has degree {}", e[0])));
    }
    Ok(c.clone())
}

/// Evaluate a symbolic value at a rational q.
pub fn at_q(x: &RatFuncQ, q0: &BigRational) -> Result<BigRational> {
    x.eval(q0)
}
