use super::{QuatElem, ResidueField, RingParams};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Dense matrix over O/P^{2 ell}, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<QuatElem>,
}

impl QuatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<QuatElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(QuatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuatMatrix { rows, cols, data: vec![QuatElem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, QuatElem::ONE);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[QuatElem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> QuatElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: QuatElem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn check(&self, params: &RingParams) -> Result<()> {
        self.data.iter().try_for_each(|x| params.check(x))
    }

    pub fn mul(&self, params: &RingParams, o: &QuatMatrix) -> Result<QuatMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = QuatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = QuatElem::ZERO;
                for k in 0..self.cols {
                    acc = params.add(&acc, &params.mul(&self.get(i, k), &o.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn star(&self, params: &RingParams) -> QuatMatrix {
        let mut out = QuatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, params.conj(&self.get(i, j)));
            }
        }
        out
    }

    pub fn sub(&self, params: &RingParams, o: &QuatMatrix) -> Result<QuatMatrix> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::DimensionMismatch("shapes differ".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(x, y)| params.sub(x, y)).collect();
        Ok(QuatMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Image of an n x n matrix in M_{2n}(Z/p^ell[eps]) under x + Pi y -> [[x, p conj(y)], [y, conj(x)]].
    pub fn embed(&self, params: &RingParams) -> Result<Vec<Vec<(u64, u64)>>> {
        self.check(params)?;
        let m = params.modulus();
        let p = params.p() % m;
        let n = self.rows;
        let k = self.cols;
        let mut out = vec![vec![(0u64, 0u64); 2 * k]; 2 * n];
        for i in 0..n {
            for j in 0..k {
                let e = self.get(i, j);
                let x = (e.a, e.b);
                let y = (e.c, e.d);
                let xc = (e.a, (m - e.b) % m);
                let yc = (e.c, (m - e.d) % m);
                out[2 * i][2 * j] = x;
                out[2 * i][2 * j + 1] = (p * yc.0 % m, p * yc.1 % m);
                out[2 * i + 1][2 * j] = y;
                out[2 * i + 1][2 * j + 1] = xc;
            }
        }
        Ok(out)
    }

    /// Reduced norm of a square matrix: determinant of its 2n x 2n image.
    pub fn matrix_nrd(&self, params: &RingParams) -> Result<u64> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("reduced norm needs a square matrix".into()));
        }
        let phi = self.embed(params)?;
        let det = det_k(params, &phi);
        if det.1 != 0 {
            return Err(Error::InvalidInput("determinant is not a scalar".into()));
        }
        Ok(det.0)
    }

    /// Rank of the reduction modulo P over F_{p^2}.
    pub fn residue_rank(&self, params: &RingParams) -> usize {
        let f = ResidueField::new(params);
        let res: Vec<u32> = self.data.iter().map(|x| params.residue(x)).collect();
        f.rank(self.rows, self.cols, &res)
    }
}

type K = (u64, u64);

fn k_add(m: u64, x: K, y: K) -> K {
    ((x.0 + y.0) % m, (x.1 + y.1) % m)
}

fn k_neg(m: u64, x: K) -> K {
    ((m - x.0) % m, (m - x.1) % m)
}

fn k_mul(params: &RingParams, x: K, y: K) -> K {
    let m = params.modulus();
    let e = params.eps2();
    ((x.0 * y.0 % m + e * (x.1 * y.1 % m) % m) % m, (x.0 * y.1 % m + x.1 * y.0 % m) % m)
}

/// Division-free determinant over the commutative ring Z/p^ell[eps]
/// (Berkowitz: characteristic polynomial by Toeplitz products).
fn det_k(params: &RingParams, a: &[Vec<K>]) -> K {
    let m = params.modulus();
    let n = a.len();
    if n == 0 {
        return (1 % m, 0);
    }
    let mut vect: Vec<K> = vec![(1 % m, 0), k_neg(m, a[0][0])];
    for r in 1..n {
        // Leading (r+1)x(r+1) block: M = a[..r][..r], row R = a[r][..r], column C = a[..r][r].
        let mut col: Vec<K> = (0..r).map(|i| a[i][r]).collect();
        let mut t: Vec<K> = vec![(1 % m, 0), k_neg(m, a[r][r])];
        for _ in 0..r {
            let rc = (0..r).fold((0, 0), |acc, j| k_add(m, acc, k_mul(params, a[r][j], col[j])));
            t.push(k_neg(m, rc));
            col = (0..r).map(|i| (0..r).fold((0, 0), |acc, j| k_add(m, acc, k_mul(params, a[i][j], col[j])))).collect();
        }
        let mut next = vec![(0, 0); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, v) in vect.iter().enumerate() {
                if i >= j {
                    *slot = k_add(m, *slot, k_mul(params, t[i - j], *v));
                }
            }
        }
        vect = next;
    }
    let c = vect[n];
    if n % 2 == 1 {
        k_neg(m, c)
    } else {
        c
    }
}

/// Hermitian matrix with diagonal in the centre Z/p^ell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermMatrix(QuatMatrix);

impl HermMatrix {
    pub fn new(params: &RingParams, m: QuatMatrix) -> Result<Self> {
        m.check(params)?;
        if m.rows != m.cols {
            return Err(Error::DimensionMismatch("hermitian matrix must be square".into()));
        }
        if m.star(params) != m {
            return Err(Error::InvalidInput("matrix is not hermitian".into()));
        }
        Ok(HermMatrix(m))
    }

    pub fn matrix(&self) -> &QuatMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows
    }

    pub fn get(&self, i: usize, j: usize) -> QuatElem {
        self.0.get(i, j)
    }

    /// D lies in H_n(P, ell): diagonal in p^ell, off-diagonal in P^{2 ell - 1}.
    pub fn in_congruence(&self, params: &RingParams) -> bool {
        let mc = params.modulus() / params.p();
        let n = self.size();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_zero()
                } else {
                    x.a == 0 && x.b == 0 && x.c % mc == 0 && x.d % mc == 0
                }
            })
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &HermMatrix) -> HermMatrix {
        let (n, k) = (self.size(), o.size());
        let mut m = QuatMatrix::zeros(n + k, n + k);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..k {
            for j in 0..k {
                m.set(n + i, n + j, o.get(i, j));
            }
        }
        HermMatrix(m)
    }
}

/// A[u] = u* A u.
pub fn herm_apply(params: &RingParams, a: &HermMatrix, u: &QuatMatrix) -> Result<HermMatrix> {
    u.check(params)?;
    let r = u.star(params).mul(params, &a.0)?.mul(params, u)?;
    Ok(HermMatrix(r))
}

/// Gram matrix pi^alpha: [pi^e] for alpha_i = 2e, pi^e h_1 for each pair of equal odd entries 2e+1,
/// where h_1 = [[0, Pi], [-Pi, 0]].
pub fn build_gram(alpha: &Partition, params: &RingParams) -> Result<HermMatrix> {
    let ell = params.ell();
    for &a in alpha.entries() {
        if a < 0 {
            return Err(Error::InvalidInput(format!("negative entry {a} has no integral Gram matrix")));
        }
        if a >= 2 * ell as i64 {
            return Err(Error::LevelTooSmall { ell, reason: format!("entry {a} needs level above {}", a / 2) });
        }
    }
    let e = alpha.entries();
    let n = e.len();
    let mut m = QuatMatrix::zeros(n, n);
    let mut i = 0;
    while i < n {
        let a = e[i] as u32;
        if a % 2 == 0 {
            m.set(i, i, params.uniformizer_power(a));
            i += 1;
        } else {
            let x = params.uniformizer_power(a);
            m.set(i, i + 1, x);
            m.set(i + 1, i, params.neg(&x));
            i += 2;
        }
    }
    HermMatrix::new(params, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params() -> RingParams {
        RingParams::new(3, 2, None).unwrap()
    }

    fn leibniz(params: &RingParams, a: &[Vec<K>]) -> K {
        use itertools::Itertools;
        let m = params.modulus();
        let n = a.len();
        let mut acc = (0, 0);
        for perm in (0..n).permutations(n) {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            let mut t = (1 % m, 0);
            for (i, &pi) in perm.iter().enumerate() {
                t = k_mul(params, t, a[i][pi]);
            }
            acc = k_add(m, acc, if inv % 2 == 1 { k_neg(m, t) } else { t });
        }
        acc
    }

    #[test]
    fn reduced_norm_examples() {
        let r = params();
        let pi = QuatMatrix::new(1, 1, vec![QuatElem::PI]).unwrap();
        assert_eq!(pi.matrix_nrd(&r).unwrap(), r.modulus() - 3);
        let h1 = build_gram(&"1,1".parse().unwrap(), &r).unwrap();
        assert_eq!(h1.matrix().matrix_nrd(&r).unwrap(), 0); // p^2 = 9 = 0 mod 9
        let r3 = RingParams::new(3, 3, None).unwrap();
        let h1 = build_gram(&"1,1".parse().unwrap(), &r3).unwrap();
        assert_eq!(h1.matrix().matrix_nrd(&r3).unwrap(), 9);
        assert!(QuatMatrix::zeros(1, 2).matrix_nrd(&r).is_err());
    }

    #[test]
    fn gram_shapes() {
        let r = params();
        let g = build_gram(&"2,1,1,0".parse().unwrap(), &r).unwrap();
        assert_eq!(g.get(0, 0), r.scalar(3));
        assert_eq!(g.get(1, 2), QuatElem::PI);
        assert_eq!(g.get(2, 1), r.neg(&QuatElem::PI));
        assert_eq!(g.get(3, 3), QuatElem::ONE);
        assert!(matches!(build_gram(&"4,0".parse().unwrap(), &r), Err(Error::LevelTooSmall { .. })));
        assert!(build_gram(&"0,-2".parse().unwrap(), &r).is_err());
    }

    #[test]
    fn congruence_membership() {
        let r = params();
        let mut d = QuatMatrix::zeros(2, 2);
        d.set(0, 1, r.elem(0, 0, 3, 6));
        d.set(1, 0, r.neg(&r.elem(0, 0, 3, 6)));
        assert!(HermMatrix::new(&r, d.clone()).unwrap().in_congruence(&r));
        d.set(0, 1, QuatElem::PI);
        d.set(1, 0, r.neg(&QuatElem::PI));
        assert!(!HermMatrix::new(&r, d).unwrap().in_congruence(&r));
        let mut e = QuatMatrix::zeros(1, 1);
        e.set(0, 0, QuatElem::EPS);
        assert!(HermMatrix::new(&r, e).is_err());
    }

    #[test]
    fn herm_apply_identity() {
        let r = params();
        let g = build_gram(&"1,1,0".parse().unwrap(), &r).unwrap();
        let id = QuatMatrix::identity(3);
        assert_eq!(herm_apply(&r, &g, &id).unwrap(), g);
    }

    fn elem() -> impl Strategy<Value = QuatElem> {
        (0u64..9, 0u64..9, 0u64..9, 0u64..9).prop_map(|(a, b, c, d)| QuatElem::new(a, b, c, d))
    }

    fn mat(n: usize) -> impl Strategy<Value = QuatMatrix> {
        prop::collection::vec(elem(), n * n).prop_map(move |v| QuatMatrix::new(n, n, v).unwrap())
    }

    proptest! {
        #[test]
        fn berkowitz_matches_leibniz(a in mat(2)) {
            let r = params();
            let phi = a.embed(&r).unwrap();
            prop_assert_eq!(det_k(&r, &phi), leibniz(&r, &phi));
        }

        #[test]
        fn nrd_is_multiplicative(a in mat(2), b in mat(2)) {
            let r = params();
            let ab = a.mul(&r, &b).unwrap();
            let lhs = ab.matrix_nrd(&r).unwrap();
            prop_assert_eq!(lhs, a.matrix_nrd(&r).unwrap() * b.matrix_nrd(&r).unwrap() % r.modulus());
        }

        #[test]
        fn embedding_is_multiplicative(x in elem(), y in elem()) {
            let r = params();
            let mx = QuatMatrix::new(1, 1, vec![x]).unwrap();
            let my = QuatMatrix::new(1, 1, vec![y]).unwrap();
            let ex = mx.embed(&r).unwrap();
            let ey = my.embed(&r).unwrap();
            let exy = mx.mul(&r, &my).unwrap().embed(&r).unwrap();
            let m = r.modulus();
            for i in 0..2 {
                for j in 0..2 {
                    let v = (0..2).fold((0, 0), |acc, k| k_add(m, acc, k_mul(&r, ex[i][k], ey[k][j])));
                    prop_assert_eq!(v, exy[i][j]);
                }
            }
            prop_assert_eq!(mx.matrix_nrd(&r).unwrap(), r.nrd(&x));
        }

        #[test]
        fn herm_apply_composes(u in mat(2), v in mat(2)) {
            let r = params();
            let g = build_gram(&"1,1".parse().unwrap(), &r).unwrap();
            let lhs = herm_apply(&r, &g, &u.mul(&r, &v).unwrap()).unwrap();
            let rhs = herm_apply(&r, &herm_apply(&r, &g, &u).unwrap(), &v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
