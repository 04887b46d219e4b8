//! Exhaustive counting of N_ell(B, A) = #{u in M_{mn}(O/P^{2 ell}) : A[u] - B in H_n(P, ell)}.
//!
//! Columns of u are enumerated one at a time and filtered by their diagonal
//! condition c*Ac = B_jj before the off-diagonal conditions are checked. The
//! condition only depends on u modulo P^{2 ell - 1}, so the reduced mode
//! enumerates representatives of that quotient and multiplies by q^{2mn}.

use crate::error::{Error, Result};
use crate::quat::{HermMatrix, QuatElem, ResidueField, RingParams};
use rayon::prelude::*;

pub const DEFAULT_BUDGET: u128 = 1 << 36;
pub const BUDGET_ENV: &str = "QUATHERM_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumMode {
    /// Full enumeration when it fits the budget, reduced otherwise.
    #[default]
    Auto,
    Full,
    Reduced,
}

#[derive(Clone, Copy, Debug)]
pub struct CountConfig {
    pub budget: u128,
    pub mode: EnumMode,
}

impl Default for CountConfig {
    fn default() -> Self {
        let budget = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET);
        CountConfig { budget, mode: EnumMode::Auto }
    }
}

/// Total and primitive solution counts at one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counts {
    pub total: u128,
    pub primitive: u128,
}

struct Ctx {
    params: RingParams,
    m: usize,
    n: usize,
    a: Vec<QuatElem>,
    b: Vec<QuatElem>,
    elems: Vec<QuatElem>,
    nrd: Vec<u64>,
    res: Vec<u32>,
    coarse_len: usize,
}

impl Ctx {
    fn new(b: &HermMatrix, a: &HermMatrix, params: &RingParams, reduced: bool) -> Self {
        let elems = if reduced { params.coarse_elements() } else { params.elements() };
        let nrd = elems.iter().map(|x| params.nrd(x)).collect();
        let res = elems.iter().map(|x| params.residue(x)).collect();
        let mc = params.modulus() / params.p();
        let coarse_len = (params.modulus() * params.modulus() * mc * mc) as usize;
        let m = a.size();
        let n = b.size();
        Ctx { params: *params, m, n, a: a.matrix().data().to_vec(), b: b.matrix().data().to_vec(), elems, nrd, res, coarse_len }
    }

    fn a(&self, i: usize, j: usize) -> &QuatElem {
        &self.a[i * self.m + j]
    }

    fn b(&self, i: usize, j: usize) -> &QuatElem {
        &self.b[i * self.n + j]
    }

    /// Coefficients of y -> Trd(z y) as a linear form in the coordinates of y.
    fn trd_form(&self, z: &QuatElem) -> [u64; 4] {
        let r = &self.params;
        let m = r.modulus();
        let (p, e) = (r.p() % m, r.eps2());
        [2 * z.a % m, 2 * (e * z.b % m) % m, 2 * (p * z.c % m) % m, (m - 2 * (p * (e * z.d % m) % m) % m) % m]
    }

    #[inline]
    fn apply_form(&self, f: &[u64; 4], y: &QuatElem) -> u64 {
        let m = self.params.modulus();
        (f[0] * y.a % m + f[1] * y.b % m + f[2] * y.c % m + f[3] * y.d % m) % m
    }

    /// Visit every column c with c*Ac in `targets`, calling `leaf(col, target_index)`.
    /// The first entry is fixed to `first`.
    fn columns_from<F: FnMut(&[u32], usize)>(&self, first: u32, targets: &[u64], leaf: &mut F) {
        let m = self.m;
        let mut col = vec![0u32; m];
        let mut z = vec![QuatElem::ZERO; m];
        col[0] = first;
        self.place(0, first, 0, &mut z, &mut col, targets, leaf);
    }

    #[allow(clippy::too_many_arguments)]
    fn place<F: FnMut(&[u32], usize)>(
        &self,
        pos: usize,
        idx: u32,
        partial: u64,
        z: &mut [QuatElem],
        col: &mut [u32],
        targets: &[u64],
        leaf: &mut F,
    ) {
        let r = &self.params;
        let md = r.modulus();
        let y = &self.elems[idx as usize];
        let f = self.trd_form(&z[pos]);
        let diag = self.a(pos, pos).a;
        let val = (partial + diag * self.nrd[idx as usize] % md + self.apply_form(&f, y)) % md;
        col[pos] = idx;
        if pos + 1 == self.m {
            if let Some(t) = targets.iter().position(|&t| t == val) {
                leaf(col, t);
            }
            return;
        }
        let saved: Vec<QuatElem> = z[pos + 1..].to_vec();
        let yc = r.conj(y);
        for l in pos + 1..self.m {
            z[l] = r.add(&z[l], &r.mul(&yc, self.a(pos, l)));
        }
        for next in 0..self.elems.len() as u32 {
            self.place(pos + 1, next, val, z, col, targets, leaf);
        }
        z[pos + 1..].copy_from_slice(&saved);
    }

    fn residue_nonzero(&self, col: &[u32]) -> bool {
        col.iter().any(|&i| self.res[i as usize] != 0)
    }
}

/// Index of the class of x modulo P^{2 ell - 1}.
pub(crate) fn coarse_index(params: &RingParams, x: &QuatElem) -> u32 {
    let m = params.modulus();
    let mc = m / params.p();
    (x.a + m * (x.b + m * (x.c % mc + mc * (x.d % mc)))) as u32
}

fn check_shapes(b: &HermMatrix, a: &HermMatrix) -> Result<()> {
    if a.size() == 0 || b.size() == 0 {
        return Err(Error::DimensionMismatch("empty form".into()));
    }
    Ok(())
}

/// Count solutions; both the total and the primitive number are returned.
pub fn count_both(b: &HermMatrix, a: &HermMatrix, params: &RingParams, cfg: &CountConfig) -> Result<Counts> {
    check_shapes(b, a)?;
    a.matrix().check(params)?;
    b.matrix().check(params)?;
    let (m, n) = (a.size() as u32, b.size() as u32);
    let full_cols = (params.order_size() as u128).saturating_pow(m);
    let reduced = match cfg.mode {
        EnumMode::Full => false,
        EnumMode::Reduced => true,
        EnumMode::Auto => quick_bound(params.order_size() as u128, m, n).is_none_or(|c| c > cfg.budget),
    };
    let per_entry = if reduced { params.order_size() / (params.p() * params.p()) } else { params.order_size() };
    let cols = (per_entry as u128).checked_pow(m).and_then(|c| c.checked_mul(m as u128));
    if cols.is_none_or(|c| c > cfg.budget) {
        return Err(Error::BudgetExceeded { needed: cols.unwrap_or(u128::MAX), budget: cfg.budget });
    }
    let ctx = Ctx::new(b, a, params, reduced);
    let needed = estimate(&ctx, cfg.budget).unwrap_or(u128::MAX);
    if needed > cfg.budget {
        return Err(Error::BudgetExceeded { needed, budget: cfg.budget });
    }
    let c = if n == 1 { count_single(&ctx) } else { count_multi(&ctx) };
    let mult = if reduced { (params.p() as u128).pow(2 * m * n) } else { 1 };
    debug_assert!(c.total <= full_cols.saturating_pow(n));
    Ok(Counts { total: c.total * mult, primitive: c.primitive * mult })
}

/// Count with or without the primitivity restriction.
pub fn count_reps(b: &HermMatrix, a: &HermMatrix, params: &RingParams, primitive: bool, cfg: &CountConfig) -> Result<u128> {
    let c = count_both(b, a, params, cfg)?;
    Ok(if primitive { c.primitive } else { c.total })
}

/// Upper bound on the work of a full enumeration over `e` elements per entry.
fn quick_bound(e: u128, m: u32, n: u32) -> Option<u128> {
    let cols = e.checked_pow(m)?;
    match (m, n) {
        (_, 1) => cols.checked_mul(m as u128),
        (2, 2) => cols.checked_mul(5 * e + 4),
        _ => cols.checked_pow(n)?.checked_mul((m * n) as u128),
    }
}

/// Rough operation count; `None` if it overflows. Column sizes are measured,
/// not guessed, once the column pass itself fits the budget.
fn estimate(ctx: &Ctx, budget: u128) -> Option<u128> {
    let e = ctx.elems.len() as u128;
    let cols = e.checked_pow(ctx.m as u32)?.checked_mul(ctx.m as u128)?;
    if ctx.n == 1 || cols > budget {
        return Some(cols);
    }
    let sizes = diag_class_sizes(ctx);
    let s: Vec<u128> = (0..ctx.n).map(|j| sizes[target_slot(ctx, j)]).collect();
    let pairs = if ctx.n == 2 && ctx.m == 2 {
        s[0].checked_mul(4 * e + ctx.coarse_len as u128)?
    } else {
        s.iter().try_fold(1u128, |acc, x| acc.checked_mul(*x))?.checked_mul((ctx.m * ctx.n) as u128)?
    };
    cols.checked_mul(2)?.checked_add(pairs)
}

fn distinct_targets(ctx: &Ctx) -> Vec<u64> {
    let mut t: Vec<u64> = (0..ctx.n).map(|j| ctx.b(j, j).a).collect();
    t.sort_unstable();
    t.dedup();
    t
}

fn target_slot(ctx: &Ctx, j: usize) -> usize {
    let t = distinct_targets(ctx);
    t.iter().position(|&x| x == ctx.b(j, j).a).expect("target present")
}

fn diag_class_sizes(ctx: &Ctx) -> Vec<u128> {
    let targets = distinct_targets(ctx);
    (0..ctx.elems.len() as u32)
        .into_par_iter()
        .map(|first| {
            let mut local = vec![0u128; targets.len()];
            ctx.columns_from(first, &targets, &mut |_, t| local[t] += 1);
            local
        })
        .reduce(|| vec![0u128; targets.len()], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect())
}

fn count_single(ctx: &Ctx) -> Counts {
    let targets = [ctx.b(0, 0).a];
    (0..ctx.elems.len() as u32)
        .into_par_iter()
        .map(|first| {
            let mut c = Counts { total: 0, primitive: 0 };
            ctx.columns_from(first, &targets, &mut |col, _| {
                c.total += 1;
                if ctx.residue_nonzero(col) {
                    c.primitive += 1;
                }
            });
            c
        })
        .reduce(|| Counts { total: 0, primitive: 0 }, |a, b| Counts { total: a.total + b.total, primitive: a.primitive + b.primitive })
}

/// Columns grouped by diagonal value, stored flat with stride m.
fn collect_columns(ctx: &Ctx) -> (Vec<u64>, Vec<Vec<u32>>) {
    let targets = distinct_targets(ctx);
    let parts: Vec<Vec<Vec<u32>>> = (0..ctx.elems.len() as u32)
        .into_par_iter()
        .map(|first| {
            let mut local = vec![Vec::new(); targets.len()];
            ctx.columns_from(first, &targets, &mut |col, t| local[t].extend_from_slice(col));
            local
        })
        .collect();
    let mut sets = vec![Vec::new(); targets.len()];
    for part in parts {
        for (s, p) in sets.iter_mut().zip(part) {
            s.extend(p);
        }
    }
    (targets, sets)
}

fn count_multi(ctx: &Ctx) -> Counts {
    let (targets, sets) = collect_columns(ctx);
    let slot = |j: usize| targets.iter().position(|&t| t == ctx.b(j, j).a).expect("target");
    if ctx.n == 2 && ctx.m == 2 {
        return count_fibered(ctx, &sets[slot(0)], &sets[slot(1)]);
    }
    let chosen: Vec<&[u32]> = (0..ctx.n).map(|j| sets[slot(j)].as_slice()).collect();
    count_scan(ctx, &chosen)
}

/// Row vector c* A for a column c.
fn row_of(ctx: &Ctx, col: &[u32]) -> Vec<QuatElem> {
    let r = &ctx.params;
    (0..ctx.m)
        .map(|l| {
            (0..ctx.m).fold(QuatElem::ZERO, |acc, k| {
                let ck = r.conj(&ctx.elems[col[k] as usize]);
                r.add(&acc, &r.mul(&ck, ctx.a(k, l)))
            })
        })
        .collect()
}

fn offdiag_ok(ctx: &Ctx, row: &[QuatElem], col: &[u32], target: &QuatElem) -> bool {
    let r = &ctx.params;
    let v = (0..ctx.m).fold(QuatElem::ZERO, |acc, l| r.add(&acc, &r.mul(&row[l], &ctx.elems[col[l] as usize])));
    r.coarse(&v) == r.coarse(target)
}

/// Generic depth-first search over n columns.
fn count_scan(ctx: &Ctx, sets: &[&[u32]]) -> Counts {
    let m = ctx.m;
    let first = sets[0];
    (0..first.len() / m)
        .into_par_iter()
        .map(|i| {
            let c0 = &first[i * m..(i + 1) * m];
            let mut chosen = vec![c0.to_vec()];
            let mut rows = vec![row_of(ctx, c0)];
            let mut c = Counts { total: 0, primitive: 0 };
            scan_rec(ctx, sets, 1, &mut chosen, &mut rows, &mut c);
            c
        })
        .reduce(|| Counts { total: 0, primitive: 0 }, |a, b| Counts { total: a.total + b.total, primitive: a.primitive + b.primitive })
}

fn scan_rec(ctx: &Ctx, sets: &[&[u32]], j: usize, chosen: &mut Vec<Vec<u32>>, rows: &mut Vec<Vec<QuatElem>>, c: &mut Counts) {
    let m = ctx.m;
    if j == ctx.n {
        c.total += 1;
        if primitive_columns(ctx, chosen) {
            c.primitive += 1;
        }
        return;
    }
    for cand in sets[j].chunks_exact(m) {
        if (0..j).all(|i| offdiag_ok(ctx, &rows[i], cand, ctx.b(i, j))) {
            chosen.push(cand.to_vec());
            rows.push(row_of(ctx, cand));
            scan_rec(ctx, sets, j + 1, chosen, rows, c);
            chosen.pop();
            rows.pop();
        }
    }
}

fn primitive_columns(ctx: &Ctx, cols: &[Vec<u32>]) -> bool {
    let f = ResidueField::new(&ctx.params);
    let (m, n) = (ctx.m, cols.len());
    let mut data = vec![0u32; m * n];
    for (j, col) in cols.iter().enumerate() {
        for (i, &e) in col.iter().enumerate() {
            data[i * n + j] = ctx.res[e as usize];
        }
    }
    f.rank(m, n, &data) == n
}

/// m = n = 2: for each first column, solve the off-diagonal condition by
/// bucketing second entries on the class of B_12 - r_2 y modulo P^{2 ell - 1}.
fn count_fibered(ctx: &Ctx, s1: &[u32], s2: &[u32]) -> Counts {
    let r = &ctx.params;
    let ne = ctx.elems.len();
    let mut member = vec![false; ne * ne];
    for c in s2.chunks_exact(2) {
        member[c[0] as usize * ne + c[1] as usize] = true;
    }
    let f = ResidueField::new(r);
    let target = *ctx.b(0, 1);
    s1.par_chunks(2 * 512)
        .map(|chunk| {
            let mut head = vec![u32::MAX; ctx.coarse_len];
            let mut next = vec![u32::MAX; ne];
            let mut tvals = vec![0u32; ne];
            let mut touched: Vec<u32> = Vec::with_capacity(ne);
            let mut c = Counts { total: 0, primitive: 0 };
            for c1 in chunk.chunks_exact(2) {
                let row = row_of(ctx, c1);
                for (x, e) in ctx.elems.iter().enumerate() {
                    tvals[x] = coarse_index(r, &r.mul(&row[0], e));
                }
                for (y, e) in ctx.elems.iter().enumerate() {
                    let u = coarse_index(r, &r.sub(&target, &r.mul(&row[1], e))) as usize;
                    if head[u] == u32::MAX {
                        touched.push(u as u32);
                    }
                    next[y] = head[u];
                    head[u] = y as u32;
                }
                let (r1x, r1y) = (ctx.res[c1[0] as usize], ctx.res[c1[1] as usize]);
                for x in 0..ne {
                    let mut y = head[tvals[x] as usize];
                    while y != u32::MAX {
                        if member[x * ne + y as usize] {
                            c.total += 1;
                            let det = f.sub(f.mul(r1x, ctx.res[y as usize]), f.mul(r1y, ctx.res[x]));
                            if det != 0 {
                                c.primitive += 1;
                            }
                        }
                        y = next[y as usize];
                    }
                }
                for &u in &touched {
                    head[u as usize] = u32::MAX;
                }
                touched.clear();
            }
            c
        })
        .reduce(|| Counts { total: 0, primitive: 0 }, |a, b| Counts { total: a.total + b.total, primitive: a.primitive + b.primitive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{build_gram, herm_apply, QuatMatrix};
    use crate::Partition;

    fn gram(s: &str, r: &RingParams) -> HermMatrix {
        build_gram(&s.parse::<Partition>().unwrap(), r).unwrap()
    }

    fn zero_form(n: usize, r: &RingParams) -> HermMatrix {
        HermMatrix::new(r, QuatMatrix::zeros(n, n)).unwrap()
    }

    fn full() -> CountConfig {
        CountConfig { budget: DEFAULT_BUDGET, mode: EnumMode::Full }
    }

    fn reduced() -> CountConfig {
        CountConfig { budget: DEFAULT_BUDGET, mode: EnumMode::Reduced }
    }

    /// Oracle: iterate over every matrix u and apply the definition directly.
    fn brute(b: &HermMatrix, a: &HermMatrix, r: &RingParams) -> Counts {
        let (m, n) = (a.size(), b.size());
        let elems = r.elements();
        let k = m * n;
        let mut idx = vec![0usize; k];
        let mut c = Counts { total: 0, primitive: 0 };
        loop {
            let u = QuatMatrix::new(m, n, idx.iter().map(|&i| elems[i]).collect()).unwrap();
            let d = herm_apply(r, a, &u).unwrap().matrix().sub(r, b.matrix()).unwrap();
            if HermMatrix::new(r, d).unwrap().in_congruence(r) {
                c.total += 1;
                if u.residue_rank(r) == n {
                    c.primitive += 1;
                }
            }
            let mut p = 0;
            loop {
                if p == k {
                    return c;
                }
                idx[p] += 1;
                if idx[p] < elems.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }

    #[test]
    fn small_examples() {
        let r1 = RingParams::new(3, 1, None).unwrap();
        let r2 = RingParams::new(3, 2, None).unwrap();
        assert_eq!(count_reps(&gram("0", &r1), &gram("0", &r1), &r1, false, &full()).unwrap(), 36);
        assert_eq!(count_reps(&gram("0", &r2), &gram("0", &r2), &r2, false, &full()).unwrap(), 972);
        assert_eq!(count_reps(&zero_form(1, &r1), &gram("1,1", &r1), &r1, true, &full()).unwrap(), 6480);
    }

    #[test]
    fn engine_matches_definition() {
        let r1 = RingParams::new(3, 1, None).unwrap();
        for (b, a) in [("0", "0"), ("0", "1,1"), ("0", "0,0"), ("0,0", "0")] {
            let (b, a) = (gram(b, &r1), gram(a, &r1));
            assert_eq!(count_both(&b, &a, &r1, &full()).unwrap(), brute(&b, &a, &r1));
        }
        let r2 = RingParams::new(3, 2, None).unwrap();
        let (b, a) = (gram("2", &r2), gram("0", &r2));
        assert_eq!(count_both(&b, &a, &r2, &full()).unwrap(), brute(&b, &a, &r2));
    }

    #[test]
    fn reduced_matches_full() {
        let r1 = RingParams::new(3, 1, None).unwrap();
        for (b, a) in [("0", "1,1"), ("1,1", "1,1"), ("0,0", "0,0"), ("0", "0,0")] {
            let (b, a) = (gram(b, &r1), gram(a, &r1));
            assert_eq!(count_both(&b, &a, &r1, &full()).unwrap(), count_both(&b, &a, &r1, &reduced()).unwrap());
        }
        let r2 = RingParams::new(3, 2, None).unwrap();
        for (b, a) in [("2", "0"), ("0", "0"), ("2", "2")] {
            let (b, a) = (gram(b, &r2), gram(a, &r2));
            assert_eq!(count_both(&b, &a, &r2, &full()).unwrap(), count_both(&b, &a, &r2, &reduced()).unwrap());
        }
    }

    #[test]
    fn fibered_matches_scan() {
        let r = RingParams::new(3, 1, None).unwrap();
        for (b, a) in [("1,1", "1,1"), ("0,0", "0,0"), ("0,0", "1,1"), ("1,1", "0,0")] {
            let ctx = Ctx::new(&gram(b, &r), &gram(a, &r), &r, false);
            let (targets, sets) = collect_columns(&ctx);
            let slot = |j: usize| targets.iter().position(|&t| t == ctx.b(j, j).a).unwrap();
            let fib = count_fibered(&ctx, &sets[slot(0)], &sets[slot(1)]);
            let scan = count_scan(&ctx, &[&sets[slot(0)], &sets[slot(1)]]);
            assert_eq!(fib, scan);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let r = RingParams::new(3, 2, None).unwrap();
        let cfg = CountConfig { budget: 1000, mode: EnumMode::Full };
        let err = count_reps(&gram("0", &r), &gram("0,0", &r), &r, false, &cfg).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn primitive_never_exceeds_total() {
        let r = RingParams::new(3, 1, None).unwrap();
        for (b, a) in [("0", "0,0"), ("1,1", "1,1"), ("0", "1,1")] {
            let c = count_both(&gram(b, &r), &gram(a, &r), &r, &full()).unwrap();
            assert!(c.primitive <= c.total);
        }
    }
}
