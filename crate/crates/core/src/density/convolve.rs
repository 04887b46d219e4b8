//! Counting for n = 1 and diagonal A: A[u] = sum_i a_i Nrd(u_i), so the count
//! is a cyclic convolution of reduced-norm histograms over O/P^{2 ell}.

use crate::error::{Error, Result};
use crate::quat::{HermMatrix, RingParams};

/// Histogram of Nrd over O/P^{2 ell}; with `in_p` only elements of P are counted.
fn nrd_histogram(params: &RingParams, in_p: bool) -> Vec<u128> {
    let m = params.modulus();
    let p = params.p();
    let e = params.eps2();
    // Histogram of the norm form a^2 - E b^2 on (Z/p^ell)^2.
    let norm_hist = |only_p: bool| {
        let mut h = vec![0u128; m as usize];
        for a in 0..m {
            if only_p && a % p != 0 {
                continue;
            }
            for b in 0..m {
                if only_p && b % p != 0 {
                    continue;
                }
                let v = (a * a % m + m - e * (b * b % m) % m) % m;
                h[v as usize] += 1;
            }
        }
        h
    };
    let hx = norm_hist(in_p);
    let hy = norm_hist(false);
    let mut out = vec![0u128; m as usize];
    for (s, &cs) in hx.iter().enumerate() {
        if cs == 0 {
            continue;
        }
        for (t, &ct) in hy.iter().enumerate() {
            if ct == 0 {
                continue;
            }
            let v = (s as u64 + m - p * t as u64 % m) % m;
            out[v as usize] += cs * ct;
        }
    }
    out
}

fn scaled(h: &[u128], a: u64, m: u64) -> Vec<u128> {
    let mut out = vec![0u128; m as usize];
    for (r, &c) in h.iter().enumerate() {
        out[(a * r as u64 % m) as usize] += c;
    }
    out
}

fn convolve(x: &[u128], y: &[u128], m: u64) -> Vec<u128> {
    let mut out = vec![0u128; m as usize];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            if b != 0 {
                out[(i + j) % m as usize] += a * b;
            }
        }
    }
    out
}

/// Number of u in (O/P^{2 ell})^m with sum_i a_i Nrd(u_i) = b mod p^ell,
/// restricted to u not in P^m when `primitive`.
pub fn count_reps_convolved(b: u64, a: &HermMatrix, params: &RingParams, primitive: bool) -> Result<u128> {
    let m = a.size();
    let mut diag = Vec::with_capacity(m);
    for i in 0..m {
        for j in 0..m {
            let x = a.get(i, j);
            if i != j && !x.is_zero() {
                return Err(Error::NotApplicable("convolution needs a diagonal form".into()));
            }
        }
        diag.push(a.get(i, i).a);
    }
    let md = params.modulus();
    let b = (b % md) as usize;
    let all = nrd_histogram(params, false);
    let fold = |h: &[u128]| diag.iter().map(|&ai| scaled(h, ai, md)).reduce(|x, y| convolve(&x, &y, md)).expect("nonempty form");
    let total = fold(&all)[b];
    if !primitive {
        return Ok(total);
    }
    let inside = fold(&nrd_histogram(params, true))[b];
    Ok(total - inside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::count::{count_reps, CountConfig, EnumMode};
    use crate::quat::build_gram;
    use crate::Partition;

    fn gram(s: &str, r: &RingParams) -> HermMatrix {
        build_gram(&s.parse::<Partition>().unwrap(), r).unwrap()
    }

    #[test]
    fn histogram_sizes() {
        let r = RingParams::new(3, 2, None).unwrap();
        assert_eq!(nrd_histogram(&r, false).iter().sum::<u128>(), 3u128.pow(8));
        assert_eq!(nrd_histogram(&r, true).iter().sum::<u128>(), 3u128.pow(6));
    }

    #[test]
    fn agrees_with_enumeration() {
        let cfg = CountConfig { budget: 1 << 36, mode: EnumMode::Reduced };
        let r1 = RingParams::new(3, 1, None).unwrap();
        let r2 = RingParams::new(3, 2, None).unwrap();
        for (r, b, a) in [(&r1, "0", "0,0"), (&r2, "0", "0"), (&r2, "2", "0"), (&r2, "0", "2"), (&r2, "0", "2,0"), (&r2, "2", "2,0")] {
            let (bg, ag) = (gram(b, r), gram(a, r));
            for prim in [false, true] {
                let direct = count_reps(&bg, &ag, r, prim, &cfg).unwrap();
                assert_eq!(count_reps_convolved(bg.get(0, 0).a, &ag, r, prim).unwrap(), direct);
            }
        }
        assert_eq!(count_reps_convolved(1, &gram("0", &r2), &r2, false).unwrap(), 972);
    }

    #[test]
    fn rejects_non_diagonal() {
        let r = RingParams::new(3, 1, None).unwrap();
        assert!(count_reps_convolved(0, &gram("1,1", &r), &r, false).is_err());
    }

    #[test]
    fn large_level_is_cheap() {
        // 3^24 points for direct enumeration; histograms make it instant.
        let r = RingParams::new(3, 3, None).unwrap();
        let a = gram("0,0", &r);
        let c = count_reps_convolved(9, &a, &r, false).unwrap();
        assert!(c > 0);
    }
}
