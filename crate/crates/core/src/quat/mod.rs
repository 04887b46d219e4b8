//! The maximal order of the division quaternion algebra over Q_p, truncated
//! modulo p^ell. An element is x + Pi*y with x, y in the unramified quadratic
//! ring Z/p^ell[eps], eps^2 = E a non-residue, Pi^2 = p and z*Pi = Pi*conj(z).

mod matrix;

pub use matrix::{build_gram, herm_apply, HermMatrix, QuatMatrix};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingParams {
    p: u64,
    ell: u32,
    eps2: u64,
    modulus: u64,
}

/// a + b*eps + Pi*(c + d*eps), coordinates reduced mod p^ell.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuatElem {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl QuatElem {
    pub const ZERO: QuatElem = QuatElem { a: 0, b: 0, c: 0, d: 0 };
    pub const ONE: QuatElem = QuatElem { a: 1, b: 0, c: 0, d: 0 };
    pub const PI: QuatElem = QuatElem { a: 0, b: 0, c: 1, d: 0 };
    pub const EPS: QuatElem = QuatElem { a: 0, b: 1, c: 0, d: 0 };

    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        QuatElem { a, b, c, d }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn is_square_mod_p(x: u64, p: u64) -> bool {
    x % p == 0 || pow_mod(x, (p - 1) / 2, p) == 1
}

/// Smallest positive quadratic non-residue mod an odd prime.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&x| !is_square_mod_p(x, p)).expect("odd prime has a non-residue")
}

/// p-adic valuation of x in Z/p^ell, with 0 mapped to ell.
fn vp(mut x: u64, p: u64, ell: u32) -> u32 {
    if x == 0 {
        return ell;
    }
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v.min(ell)
}

impl RingParams {
    /// Odd prime p, level ell >= 1, optional non-residue (defaults to the smallest one).
    pub fn new(p: u64, ell: u32, eps2: Option<u64>) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidInput(format!("p = {p} is not an odd prime")));
        }
        if ell == 0 {
            return Err(Error::LevelTooSmall { ell, reason: "level must be at least 1".into() });
        }
        let modulus =
            p.checked_pow(ell).filter(|m| *m < (1 << 31)).ok_or_else(|| Error::InvalidInput(format!("p^ell = {p}^{ell} is too large")))?;
        let eps2 = match eps2 {
            Some(e) => {
                if is_square_mod_p(e, p) {
                    return Err(Error::InvalidInput(format!("{e} is a square mod {p}")));
                }
                e % modulus
            }
            None => smallest_nonresidue(p),
        };
        Ok(RingParams { p, ell, eps2, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn eps2(&self) -> u64 {
        self.eps2
    }
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Same prime and non-residue at another level.
    pub fn with_level(&self, ell: u32) -> Result<Self> {
        RingParams::new(self.p, ell, Some(self.eps2))
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    pub fn elem(&self, a: i64, b: i64, c: i64, d: i64) -> QuatElem {
        QuatElem::new(self.reduce(a), self.reduce(b), self.reduce(c), self.reduce(d))
    }

    pub fn scalar(&self, a: i64) -> QuatElem {
        self.elem(a, 0, 0, 0)
    }

    /// Reject coordinates that are not reduced for this modulus.
    pub fn check(&self, x: &QuatElem) -> Result<()> {
        let m = self.modulus;
        if x.a >= m || x.b >= m || x.c >= m || x.d >= m {
            return Err(Error::ParamsMismatch(format!("{x:?} is not reduced mod {m}")));
        }
        Ok(())
    }

    #[inline]
    fn mm(&self, x: u64, y: u64) -> u64 {
        x * y % self.modulus
    }

    #[inline]
    fn k_mul(&self, (a1, b1): (u64, u64), (a2, b2): (u64, u64)) -> (u64, u64) {
        let m = self.modulus;
        ((self.mm(a1, a2) + self.mm(self.eps2, self.mm(b1, b2))) % m, (self.mm(a1, b2) + self.mm(b1, a2)) % m)
    }

    #[inline]
    fn k_conj(&self, (a, b): (u64, u64)) -> (u64, u64) {
        (a, (self.modulus - b) % self.modulus)
    }

    /// Product in the order: (x1 + Pi y1)(x2 + Pi y2) = (x1 x2 + p conj(y1) y2) + Pi(conj(x1) y2 + y1 x2).
    #[inline]
    pub fn mul(&self, u: &QuatElem, v: &QuatElem) -> QuatElem {
        let m = self.modulus;
        let (x1, y1, x2, y2) = ((u.a, u.b), (u.c, u.d), (v.a, v.b), (v.c, v.d));
        let s = self.k_mul(x1, x2);
        let t = self.k_mul(self.k_conj(y1), y2);
        let pt = (self.mm(self.p % m, t.0), self.mm(self.p % m, t.1));
        let r = self.k_mul(self.k_conj(x1), y2);
        let w = self.k_mul(y1, x2);
        QuatElem::new((s.0 + pt.0) % m, (s.1 + pt.1) % m, (r.0 + w.0) % m, (r.1 + w.1) % m)
    }

    pub fn checked_mul(&self, u: &QuatElem, v: &QuatElem) -> Result<QuatElem> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul(u, v))
    }

    #[inline]
    pub fn add(&self, u: &QuatElem, v: &QuatElem) -> QuatElem {
        let m = self.modulus;
        QuatElem::new((u.a + v.a) % m, (u.b + v.b) % m, (u.c + v.c) % m, (u.d + v.d) % m)
    }

    #[inline]
    pub fn neg(&self, u: &QuatElem) -> QuatElem {
        let m = self.modulus;
        QuatElem::new((m - u.a) % m, (m - u.b) % m, (m - u.c) % m, (m - u.d) % m)
    }

    #[inline]
    pub fn sub(&self, u: &QuatElem, v: &QuatElem) -> QuatElem {
        self.add(u, &self.neg(v))
    }

    /// Canonical involution: (a, b, c, d) -> (a, -b, -c, -d).
    #[inline]
    pub fn conj(&self, u: &QuatElem) -> QuatElem {
        let m = self.modulus;
        QuatElem::new(u.a, (m - u.b) % m, (m - u.c) % m, (m - u.d) % m)
    }

    /// Reduced norm a^2 - E b^2 - p (c^2 - E d^2).
    pub fn nrd(&self, u: &QuatElem) -> u64 {
        let m = self.modulus;
        let nx = (self.mm(u.a, u.a) + m - self.mm(self.eps2, self.mm(u.b, u.b))) % m;
        let ny = (self.mm(u.c, u.c) + m - self.mm(self.eps2, self.mm(u.d, u.d))) % m;
        (nx + m - self.mm(self.p % m, ny)) % m
    }

    /// Reduced trace 2a.
    pub fn trd(&self, u: &QuatElem) -> u64 {
        2 * u.a % self.modulus
    }

    /// Pi-adic valuation; `None` means the element lies in P^{2 ell} (it is zero here).
    pub fn pi_valuation(&self, u: &QuatElem) -> Option<u32> {
        if u.is_zero() {
            return None;
        }
        let (p, l) = (self.p, self.ell);
        let v = (2 * vp(u.a, p, l)).min(2 * vp(u.b, p, l)).min(2 * vp(u.c, p, l) + 1).min(2 * vp(u.d, p, l) + 1);
        Some(v)
    }

    /// p-adic valuation of a scalar residue, `None` for zero.
    pub fn scalar_valuation(&self, x: u64) -> Option<u32> {
        (x % self.modulus != 0).then(|| vp(x % self.modulus, self.p, self.ell))
    }

    /// Image in O/P = F_{p^2}, encoded as a + b*p.
    #[inline]
    pub fn residue(&self, u: &QuatElem) -> u32 {
        ((u.a % self.p) + (u.b % self.p) * self.p) as u32
    }

    /// Number of elements of O/P^{2 ell}.
    pub fn order_size(&self) -> u64 {
        self.modulus.pow(4)
    }

    /// All elements of O/P^{2 ell}, in index order a + M(b + M(c + M d)).
    pub fn elements(&self) -> Vec<QuatElem> {
        let m = self.modulus;
        let mut v = Vec::with_capacity(self.order_size() as usize);
        for d in 0..m {
            for c in 0..m {
                for b in 0..m {
                    for a in 0..m {
                        v.push(QuatElem::new(a, b, c, d));
                    }
                }
            }
        }
        v
    }

    /// Representatives of O/P^{2 ell - 1}: a, b mod p^ell and c, d mod p^(ell-1).
    pub fn coarse_elements(&self) -> Vec<QuatElem> {
        let m = self.modulus;
        let mc = m / self.p;
        let mut v = Vec::with_capacity((m * m * mc * mc) as usize);
        for d in 0..mc {
            for c in 0..mc {
                for b in 0..m {
                    for a in 0..m {
                        v.push(QuatElem::new(a, b, c, d));
                    }
                }
            }
        }
        v
    }

    /// Reduction of an element modulo P^{2 ell - 1}.
    #[inline]
    pub fn coarse(&self, u: &QuatElem) -> QuatElem {
        let mc = self.modulus / self.p;
        QuatElem::new(u.a, u.b, u.c % mc, u.d % mc)
    }

    /// q-power element pi^e * Pi^r with r in {0, 1}, pi = p.
    pub fn uniformizer_power(&self, v: u32) -> QuatElem {
        let pe = pow_mod(self.p, (v / 2) as u64, self.modulus);
        if v % 2 == 0 {
            QuatElem::new(pe, 0, 0, 0)
        } else {
            QuatElem::new(0, 0, pe, 0)
        }
    }
}

/// Arithmetic in F_{p^2} = F_p[eps] with residues encoded as a + b*p.
#[derive(Clone, Copy, Debug)]
pub struct ResidueField {
    p: u64,
    e: u64,
}

impl ResidueField {
    pub fn new(params: &RingParams) -> Self {
        ResidueField { p: params.p(), e: params.eps2() % params.p() }
    }

    fn split(&self, x: u32) -> (u64, u64) {
        (x as u64 % self.p, x as u64 / self.p)
    }

    fn join(&self, (a, b): (u64, u64)) -> u32 {
        (a + b * self.p) as u32
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let p = self.p;
        let ((a1, b1), (a2, b2)) = (self.split(x), self.split(y));
        self.join(((a1 * a2 + self.e * b1 % p * b2) % p, (a1 * b2 + b1 * a2) % p))
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        let p = self.p;
        let ((a1, b1), (a2, b2)) = (self.split(x), self.split(y));
        self.join(((a1 + p - a2) % p, (b1 + p - b2) % p))
    }

    pub fn inv(&self, x: u32) -> Option<u32> {
        let p = self.p;
        let (a, b) = self.split(x);
        let n = (a * a + p * p - self.e * b % p * b % p) % p;
        if n == 0 {
            return None;
        }
        let ni = pow_mod(n, p - 2, p);
        Some(self.join((a * ni % p, (p - b) % p * ni % p)))
    }

    /// Rank of a rows x cols matrix with entries in F_{p^2}.
    pub fn rank(&self, rows: usize, cols: usize, data: &[u32]) -> usize {
        let mut m = data.to_vec();
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            for c in 0..cols {
                m.swap(piv * cols + c, rank * cols + c);
            }
            let inv = self.inv(m[rank * cols + col]).expect("nonzero pivot");
            for r in 0..rows {
                if r == rank || m[r * cols + col] == 0 {
                    continue;
                }
                let f = self.mul(m[r * cols + col], inv);
                for c in col..cols {
                    let t = self.mul(f, m[rank * cols + c]);
                    m[r * cols + c] = self.sub(m[r * cols + c], t);
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params() -> RingParams {
        RingParams::new(3, 2, None).unwrap()
    }

    #[test]
    fn defaults_and_validation() {
        assert_eq!(RingParams::new(3, 1, None).unwrap().eps2(), 2);
        assert_eq!(RingParams::new(5, 1, None).unwrap().eps2(), 2);
        assert_eq!(RingParams::new(7, 1, None).unwrap().eps2(), 3);
        assert!(RingParams::new(4, 1, None).is_err());
        assert!(RingParams::new(2, 1, None).is_err());
        assert!(RingParams::new(3, 0, None).is_err());
        assert!(RingParams::new(5, 1, Some(4)).is_err());
    }

    #[test]
    fn pi_eps_relations() {
        let r = params();
        let m = r.modulus();
        assert_eq!(r.mul(&QuatElem::PI, &QuatElem::EPS), QuatElem::new(0, 0, 0, 1));
        assert_eq!(r.mul(&QuatElem::EPS, &QuatElem::PI), QuatElem::new(0, 0, 0, m - 1));
        assert_eq!(r.mul(&QuatElem::PI, &QuatElem::PI), r.scalar(3));
        assert_eq!(r.nrd(&QuatElem::PI), m - 3);
        assert_eq!(r.mul(&QuatElem::EPS, &QuatElem::EPS), r.scalar(2));
    }

    #[test]
    fn valuations() {
        let r = params();
        assert_eq!(r.pi_valuation(&QuatElem::ONE), Some(0));
        assert_eq!(r.pi_valuation(&QuatElem::PI), Some(1));
        assert_eq!(r.pi_valuation(&r.scalar(3)), Some(2));
        assert_eq!(r.pi_valuation(&r.elem(0, 0, 3, 0)), Some(3));
        assert_eq!(r.pi_valuation(&QuatElem::ZERO), None);
        assert_eq!(r.uniformizer_power(3), r.elem(0, 0, 3, 0));
    }

    #[test]
    fn residue_rank_examples() {
        let r = params();
        let f = ResidueField::new(&r);
        let one = r.residue(&QuatElem::ONE);
        let eps = r.residue(&QuatElem::EPS);
        assert_eq!(f.rank(2, 2, &[one, 0, 0, one]), 2);
        assert_eq!(f.rank(2, 2, &[one, eps, eps, f.mul(eps, eps)]), 1);
        assert_eq!(f.rank(1, 2, &[0, 0]), 0);
    }

    fn elem() -> impl Strategy<Value = QuatElem> {
        (0u64..9, 0u64..9, 0u64..9, 0u64..9).prop_map(|(a, b, c, d)| QuatElem::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn ring_laws(x in elem(), y in elem(), z in elem()) {
            let r = params();
            prop_assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
            prop_assert_eq!(r.mul(&x, &r.add(&y, &z)), r.add(&r.mul(&x, &y), &r.mul(&x, &z)));
            prop_assert_eq!(r.conj(&r.mul(&x, &y)), r.mul(&r.conj(&y), &r.conj(&x)));
            prop_assert_eq!(r.nrd(&r.mul(&x, &y)), r.nrd(&x) * r.nrd(&y) % r.modulus());
            prop_assert_eq!(r.mul(&x, &r.conj(&x)), r.scalar(r.nrd(&x) as i64));
            prop_assert_eq!(r.add(&x, &r.conj(&x)), r.scalar(r.trd(&x) as i64));
        }

        #[test]
        fn valuation_is_additive(x in elem(), y in elem()) {
            let r = params();
            if let (Some(a), Some(b)) = (r.pi_valuation(&x), r.pi_valuation(&y)) {
                match r.pi_valuation(&r.mul(&x, &y)) {
                    Some(c) => prop_assert_eq!(c, a + b),
                    None => prop_assert!(a + b >= 2 * r.ell()),
                }
            }
        }
    }
}
