//! Rational functions of W = Y^2 with parameter coefficients, and their residues at the
//! poles W = 0, W = u_1, W = u_2.

use super::bivariate::{BiRational, UFactor};
use crate::error::{Error, Result};
use crate::sympoly::LaurentPoly;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in a single variable (Y or W) over the parameter field.
pub type ParamLaurent = LaurentPoly<BiRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum WFactor {
    /// 1 - u_i W
    OneMinusUW(usize),
    /// 1 - u_i / W
    OneMinusUOverW(usize),
}

impl WFactor {
    /// The W-location of the zero of this factor, as (index of u, inverted?).
    fn root(self) -> (usize, bool) {
        match self {
            WFactor::OneMinusUW(i) => (i, true),
            WFactor::OneMinusUOverW(i) => (i, false),
        }
    }

    fn mirrored(self) -> Self {
        match self {
            WFactor::OneMinusUW(i) => WFactor::OneMinusUOverW(i),
            WFactor::OneMinusUOverW(i) => WFactor::OneMinusUW(i),
        }
    }
}

impl fmt::Display for WFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WFactor::OneMinusUW(i) => write!(f, "1-u{i}*W"),
            WFactor::OneMinusUOverW(i) => write!(f, "1-u{i}/W"),
        }
    }
}

/// num(W) / prod factor^mult.
#[derive(Clone, Debug, PartialEq)]
pub struct WRational {
    pub num: ParamLaurent,
    pub den: BTreeMap<WFactor, u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Pole {
    Origin,
    /// W = u_i
    U(usize),
}

impl fmt::Display for Pole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pole::Origin => f.write_str("W=0"),
            Pole::U(i) => write!(f, "W=u{i}"),
        }
    }
}

/// Poles counted inside the integration contour. The configuration valid for
/// 0 < u_i < 1 is kept when u_1 is moved past 1; the contour is deformed to keep it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContourRule {
    pub inside: Vec<Pole>,
}

impl ContourRule {
    pub fn deformed() -> Self {
        ContourRule { inside: vec![Pole::Origin, Pole::U(1), Pole::U(2)] }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        ContourRule { inside: perm.iter().map(|&i| self.inside[i]).collect() }
    }
}

impl WRational {
    pub fn polynomial(num: ParamLaurent) -> Self {
        WRational { num, den: BTreeMap::new() }
    }

    pub fn mul_poly(&self, p: &ParamLaurent) -> Result<Self> {
        Ok(WRational { num: self.num.mul(p)?, den: self.den.clone() })
    }

    /// Image under W -> 1/W.
    pub fn inverted(&self) -> Self {
        let mut num = ParamLaurent::zero(1);
        for (e, c) in self.num.terms() {
            num.add_term(vec![-e[0]], c.clone());
        }
        WRational { num, den: self.den.iter().map(|(f, &m)| (f.mirrored(), m)).collect() }
    }

    /// Value at a W that is not a pole.
    pub fn eval(&self, w: &BiRational) -> Result<BiRational> {
        let mut v = self.num.eval(std::slice::from_ref(w))?;
        for (f, &m) in &self.den {
            let (i, flip) = f.root();
            let x = if flip { w.mul(&BiRational::u(i)) } else { BiRational::u(i).checked_div(w)? };
            let d = BiRational::one().sub(&x);
            for _ in 0..m {
                v = v.checked_div(&d)?;
            }
        }
        Ok(v)
    }

    /// Pole locations: W = u_i from 1 - u_i/W, W = 1/u_i from 1 - u_i W, and W = 0 when
    /// the numerator keeps a negative power after clearing the 1 - u_i/W factors.
    pub fn poles(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.cleared().min_exponents()[0] < 0 {
            out.push("W=0".to_string());
        }
        for f in self.den.keys() {
            match f {
                WFactor::OneMinusUOverW(i) => out.push(format!("W=u{i}")),
                WFactor::OneMinusUW(i) => out.push(format!("W=1/u{i}")),
            }
        }
        out
    }

    /// Rewrite as N(W) / (prod (1 - u_i W)^a_i * prod (W - u_i)^b_i).
    fn cleared(&self) -> ParamLaurent {
        let shift: u32 = self.den.iter().filter(|(f, _)| matches!(f, WFactor::OneMinusUOverW(_))).map(|(_, &m)| m).sum();
        self.num.shift(&[shift as i32])
    }

    pub fn residue(&self, pole: Pole) -> Result<BiRational> {
        let n = self.cleared();
        match pole {
            Pole::U(i) => self.residue_at_u(&n, i),
            Pole::Origin => self.residue_at_origin(&n),
        }
    }

    fn residue_at_u(&self, n: &ParamLaurent, i: usize) -> Result<BiRational> {
        let ui = BiRational::u(i);
        match self.den.get(&WFactor::OneMinusUOverW(i)).copied().unwrap_or(0) {
            0 => return Ok(BiRational::zero()),
            1 => {}
            m => return Err(Error::UncataloguedPole(format!("pole of order {m} at W=u{i}"))),
        }
        let mut v = n.eval(std::slice::from_ref(&ui))?;
        for (f, &m) in &self.den {
            let d = match *f {
                WFactor::OneMinusUOverW(j) if j == i => continue,
                // W - u_j at W = u_i
                WFactor::OneMinusUOverW(_) => {
                    let s = if i == 1 { 1 } else { -1 };
                    BiRational::factor(UFactor::U1MinusU2).scale(&num_rational::BigRational::from_integer(s.into()))
                }
                // 1 - u_j W at W = u_i
                WFactor::OneMinusUW(j) if j == i => {
                    let (a, b) = if i == 1 { (UFactor::OneMinusU1, UFactor::OnePlusU1) } else { (UFactor::OneMinusU2, UFactor::OnePlusU2) };
                    BiRational::factor(a).mul(&BiRational::factor(b))
                }
                WFactor::OneMinusUW(_) => BiRational::factor(UFactor::OneMinusU1U2),
            };
            for _ in 0..m {
                v = v.checked_div(&d)?;
            }
        }
        Ok(v)
    }

    fn residue_at_origin(&self, n: &ParamLaurent) -> Result<BiRational> {
        let low = n.min_exponents()[0];
        if n.is_zero() || low >= 0 {
            return Ok(BiRational::zero());
        }
        let order = (-low - 1) as usize;
        // Taylor coefficients at W = 0 of 1 / (prod (1 - u_i W)^a_i (W - u_i)^b_i).
        let mut series = vec![BiRational::zero(); order + 1];
        series[0] = BiRational::one();
        for (f, &m) in &self.den {
            let (i, flip) = f.root();
            let geo: Vec<BiRational> =
                (0..=order as i32).map(|k| if flip { BiRational::u_pow(i, k) } else { BiRational::u_pow(i, -k - 1).neg() }).collect();
            for _ in 0..m {
                let mut next = vec![BiRational::zero(); order + 1];
                for (a, x) in series.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (b, g) in geo.iter().enumerate().take(order + 1 - a) {
                        next[a + b] = next[a + b].add(&x.mul(g));
                    }
                }
                series = next;
            }
        }
        let mut r = BiRational::zero();
        for (e, c) in n.terms() {
            let k = e[0];
            if k < 0 {
                r = r.add(&c.mul(&series[(-k - 1) as usize]));
            }
        }
        Ok(r)
    }

    /// (1 / 2 pi i) times the integral of self dW around the contour.
    pub fn contour_integral(&self, rule: &ContourRule) -> Result<BiRational> {
        let mut acc = BiRational::zero();
        for &p in &rule.inside {
            acc = acc.add(&self.residue(p)?);
        }
        Ok(acc)
    }
}

/// w = (1 - W)(1 - W^-1) / prod_i (1 - u_i W)(1 - u_i W^-1).
pub fn weight_w() -> WRational {
    // (1 - W)(1 - W^-1) = 2 - W - W^-1
    let mut num = ParamLaurent::constant(BiRational::integer(2), 1);
    num.add_term(vec![1], BiRational::integer(-1));
    num.add_term(vec![-1], BiRational::integer(-1));
    let mut den = BTreeMap::new();
    for i in 1..=2 {
        den.insert(WFactor::OneMinusUW(i), 1);
        den.insert(WFactor::OneMinusUOverW(i), 1);
    }
    WRational { num, den }
}
