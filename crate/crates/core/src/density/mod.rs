//! Local densities mu(B, A) and mu^pr(B, A): counting at finite level,
//! closed formulas and the structural rules relating them.

mod closed;
pub mod convolve;
pub mod count;

pub use closed::{
    apply_shift, decomposition_rhs, density_ht_closed, density_self_closed, density_unit_closed, density_unit_into, density_zero_ht,
    normalization_exponent,
};
pub use convolve::count_reps_convolved;
pub use count::{count_both, count_reps, CountConfig, Counts, EnumMode};

use crate::arith::{rat_pow, rational_to_string, ExactRational};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::quat::{build_gram, RingParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enumerate,
    Convolve,
}

/// Count at one level and its normalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityResult {
    #[serde(serialize_with = "ser_big")]
    pub count: BigInt,
    pub level: u32,
    #[serde(serialize_with = "ser_rat")]
    pub normalized: ExactRational,
    pub primitive: bool,
    /// Equal to the value at the previous level of the same run.
    pub stable: bool,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_rat<S: serde::Serializer>(x: &ExactRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(x))
}

/// count / q^{ell n (4m - 2n + 1) + n(n - 1)} at q = p.
pub fn normalize(count: u128, p: u64, ell: u32, m: usize, n: usize) -> ExactRational {
    let q = BigRational::from_integer(p.into());
    let scale = rat_pow(&q, normalization_exponent(ell, m, n)).expect("q is nonzero");
    BigRational::from_integer(BigInt::from(count)) / scale
}

/// Count for (pi^beta, pi^alpha) at one level.
pub fn density_at_level(
    beta: &Partition,
    alpha: &Partition,
    params: &RingParams,
    primitive: bool,
    method: Method,
    cfg: &CountConfig,
) -> Result<DensityResult> {
    let b = build_gram(beta, params)?;
    let a = build_gram(alpha, params)?;
    let count = match method {
        Method::Enumerate => count_reps(&b, &a, params, primitive, cfg)?,
        Method::Convolve => {
            if beta.len() != 1 {
                return Err(Error::NotApplicable("convolution needs a 1 x 1 target".into()));
            }
            count_reps_convolved(b.get(0, 0).a, &a, params, primitive)?
        }
    };
    Ok(DensityResult {
        count: BigInt::from(count),
        level: params.ell(),
        normalized: normalize(count, params.p(), params.ell(), alpha.len(), beta.len()),
        primitive,
        stable: false,
    })
}

/// Normalized counts at each level, flagging agreement with the previous level.
pub fn density_limit(
    beta: &Partition,
    alpha: &Partition,
    base: &RingParams,
    levels: &[u32],
    primitive: bool,
    method: Method,
    cfg: &CountConfig,
) -> Result<Vec<DensityResult>> {
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("levels must be increasing".into()));
    }
    let mut out: Vec<DensityResult> = Vec::new();
    for &l in levels {
        let params = base.with_level(l)?;
        let mut r = density_at_level(beta, alpha, &params, primitive, method, cfg)?;
        r.stable = out.last().is_some_and(|prev| prev.normalized == r.normalized);
        out.push(r);
    }
    Ok(out)
}

/// Witness beta for alpha in Lambda_n^+: drop alpha_1, raising alpha_2 by one when alpha_1 is odd.
pub fn key_beta(alpha: &Partition) -> Result<Partition> {
    let a = alpha.entries();
    if a.len() < 2 {
        return Err(Error::InvalidInput("key witness needs n >= 2".into()));
    }
    if a[a.len() - 1] < 0 {
        return Err(Error::InvalidPartition(format!("{alpha} has negative entries")));
    }
    let mut b = a[1..].to_vec();
    if a[0].rem_euclid(2) == 1 {
        b[0] += 1;
    }
    Partition::new(b)
}

/// lambda > mu: equal, or equal on a tail after which lambda is strictly larger.
pub fn succ(lambda: &Partition, mu: &Partition) -> bool {
    let (l, m) = (lambda.entries(), mu.entries());
    if l.len() != m.len() {
        return false;
    }
    if l == m {
        return true;
    }
    let n = l.len();
    // First difference when reading from the right.
    let k = (0..n).rev().find(|&i| l[i] != m[i]).expect("differ somewhere");
    k + 2 <= n && l[k] > m[k]
}

/// Every gamma in Lambda_n^+ with |gamma| = |alpha|, gamma > alpha and gamma != alpha.
pub fn succ_candidates(alpha: &Partition) -> Vec<Partition> {
    fn rec(rem: i64, max: i64, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (0..=max.min(rem)).rev() {
            cur.push(v);
            rec(rem - v, v, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(alpha.size(), alpha.size(), alpha.len(), &mut Vec::new(), &mut all);
    all.into_iter().filter_map(|v| Partition::new(v).ok()).filter(|g| g != alpha && succ(g, alpha)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub alpha: Partition,
    pub beta: Partition,
    #[serde(serialize_with = "ser_rat")]
    pub witness: ExactRational,
    pub competitors: Vec<Partition>,
    pub violations: Vec<Partition>,
}

impl WitnessReport {
    pub fn holds(&self) -> bool {
        self.witness != BigRational::from_integer(0.into()) && self.violations.is_empty()
    }
}

/// Count at one level: the primitive density from the witness beta is nonzero for alpha
/// and zero for every larger orbit label of the same size.
pub fn primitive_witness_check(alpha: &Partition, params: &RingParams, cfg: &CountConfig) -> Result<WitnessReport> {
    let beta = key_beta(alpha)?;
    let w = density_at_level(&beta, alpha, params, true, Method::Enumerate, cfg)?;
    let competitors = succ_candidates(alpha);
    let mut violations = Vec::new();
    for g in &competitors {
        let r = density_at_level(&beta, g, params, true, Method::Enumerate, cfg)?;
        if r.count != BigInt::from(0) {
            violations.push(g.clone());
        }
    }
    Ok(WitnessReport { alpha: alpha.clone(), beta, witness: w.normalized, competitors, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn key_beta_examples() {
        assert_eq!(key_beta(&p("2,0")).unwrap(), p("0"));
        assert_eq!(key_beta(&p("1,1")).unwrap(), p("2"));
        assert_eq!(key_beta(&p("3,3,2")).unwrap(), p("4,2"));
        assert!(key_beta(&p("0")).is_err());
    }

    #[test]
    fn succ_relation() {
        assert!(succ(&p("2,0"), &p("2,0")));
        assert!(succ(&p("3,3,0"), &p("2,2,0")));
        assert!(!succ(&p("2,2,0"), &p("3,3,0")));
        assert!(!succ(&p("4,0"), &p("2,2")));
        assert!(succ_candidates(&p("2,0")).is_empty());
        assert!(succ_candidates(&p("1,1")).is_empty());
        // n = 3: gamma must agree in the last entry and beat alpha in the middle.
        let c = succ_candidates(&p("2,2,0"));
        assert!(c.iter().all(|g| g.entries()[2] == 0 && g.entries()[1] > 2));
        assert!(c.is_empty());
        let c = succ_candidates(&p("4,0,0"));
        assert_eq!(c, vec![p("2,2,0")]);
    }

    #[test]
    fn limit_flags_stability() {
        let base = RingParams::new(3, 1, None).unwrap();
        let cfg = CountConfig::default();
        let r = density_limit(&p("0"), &p("0"), &base, &[1, 2], false, Method::Enumerate, &cfg).unwrap();
        assert_eq!(r[0].normalized, rat(4, 3));
        assert_eq!(r[1].normalized, rat(4, 3));
        assert!(!r[0].stable && r[1].stable);
        let r = density_limit(&p("0"), &p("0,0"), &base, &[1, 2], false, Method::Convolve, &cfg).unwrap();
        assert_eq!(r[1].normalized, rat(8, 9));
        assert!(density_limit(&p("0"), &p("0"), &base, &[2, 1], false, Method::Enumerate, &cfg).is_err());
    }

    #[test]
    fn shift_by_counting() {
        // mu(pi<1>, pi<1>) = q mu(<1>, <1>) at level 2.
        let r = RingParams::new(3, 2, None).unwrap();
        let cfg = CountConfig::default();
        let v = density_at_level(&p("2"), &p("2"), &r, false, Method::Enumerate, &cfg).unwrap();
        assert_eq!(v.normalized, int(4));
        let base = density_self_closed(&p("0")).eval(&int(3)).unwrap();
        assert_eq!(apply_shift(&density_self_closed(&p("0")), 1, 1).eval(&int(3)).unwrap(), &base * int(3));
    }
}
