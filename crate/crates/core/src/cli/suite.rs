//! The verification suite: each criterion produces a list of records.
//! Tier `Fast` is purely symbolic; `Counting` runs finite-ring enumerations.

use super::report::{from_error, Record, Status};
use crate::arith::{int, rational_to_string, RatFuncQ};
use crate::density::{density_at_level, density_ht_closed, density_self_closed, density_unit_closed, CountConfig, Method};
use crate::error::Result;
use crate::partition::Partition;
use crate::plancherel::{orthogonality_suite, ContourRule, PlancherelContext};
use crate::quat::{smallest_nonresidue, RingParams};
use crate::spherical::ideal::{default_labels, generator_labels, generators_match_display, psi_membership};
use crate::spherical::{delta_oracle, delta_series_size2, gn_factor, odd_pair_law, psi_explicit, size2_closed, verify_induction};
use num_rational::BigRational;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Tier {
    Fast,
    Counting,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub count: CountConfig,
    /// Include the n = 2 enumerations at level 2 next to the level-1 ones.
    pub supplementary: bool,
    /// Prime for the checks that are not pinned to p = 5.
    pub p: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { count: CountConfig::default(), supplementary: true, p: 3 }
    }
}

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub tier: Tier,
    pub run: fn(&SuiteOptions) -> Vec<Record>,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "counted densities equal the closed self-density", tier: Tier::Counting, run: c1_density_oracle },
        Criterion { id: 2, title: "general self-density reproduces the special cases", tier: Tier::Fast, run: c2_closed_forms },
        Criterion { id: 3, title: "size-2 spherical function matches the explicit formula", tier: Tier::Fast, run: c3_size_two },
        Criterion { id: 4, title: "explicit formula is an exact symmetric Laurent polynomial", tier: Tier::Fast, run: c4_symmetry },
        Criterion { id: 5, title: "induction identity for (m, n) = (2, 1)", tier: Tier::Counting, run: c5_induction },
        Criterion { id: 6, title: "Iwahori valuation distribution", tier: Tier::Counting, run: c6_delta },
        Criterion { id: 7, title: "ideal membership of the transform image", tier: Tier::Fast, run: c7_ideal },
        Criterion { id: 8, title: "orthogonality of the H family", tier: Tier::Fast, run: c8_orthogonality },
        Criterion { id: 9, title: "Plancherel and inversion for size 2", tier: Tier::Fast, run: c9_plancherel },
        Criterion { id: 10, title: "counts do not depend on the nonresidue", tier: Tier::Counting, run: c10_model_independence },
    ]
}

/// Pass iff no core record fails and at least one core record passes.
pub fn criterion_status(records: &[Record]) -> Status {
    let core: Vec<&Record> = records.iter().filter(|r| !r.supplementary).collect();
    if core.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if core.iter().any(|r| r.status == Status::Pass) {
        Status::Pass
    } else {
        Status::Skipped
    }
}

fn part(s: &str) -> Partition {
    s.parse().expect("suite labels are valid")
}

fn q(k: i64) -> RatFuncQ {
    RatFuncQ::q_pow(k)
}

fn one() -> RatFuncQ {
    RatFuncQ::one()
}

fn density_record(p: u64, ell: u32, eps2: Option<u64>, alpha: &Partition, opts: &SuiteOptions) -> Record {
    let start = Instant::now();
    let rec = Record::new(format!("mu({alpha}, {alpha}) p={p} level={ell}"), "counted self-density vs closed formula");
    let closed = match density_self_closed(alpha).eval(&int(p as i64)) {
        Ok(v) => v,
        Err(e) => return from_error(rec, &e),
    };
    let res =
        RingParams::new(p, ell, eps2).and_then(|params| density_at_level(alpha, alpha, &params, false, Method::Enumerate, &opts.count));
    match res {
        Ok(r) => rec.compare(rational_to_string(&closed), rational_to_string(&r.normalized)).timed(start),
        Err(e) => from_error(rec.expect(rational_to_string(&closed)), &e).timed(start),
    }
}

pub fn c1_density_oracle(opts: &SuiteOptions) -> Vec<Record> {
    let p = opts.p;
    let core = [(p, 2, "0"), (p, 2, "2"), (5, 1, "0"), (p, 1, "0,0"), (p, 1, "1,1"), (p, 1, "2,0")];
    let mut out: Vec<Record> = core.iter().map(|&(p, l, a)| density_record(p, l, None, &part(a), opts)).collect();
    if opts.supplementary {
        for a in ["0,0", "1,1", "2,0"] {
            out.push(density_record(p, 2, None, &part(a), opts).supplementary());
        }
    }
    out
}

fn rf_record(name: String, anchor: &str, expected: &RatFuncQ, actual: &RatFuncQ) -> Record {
    Record::new(name, anchor).verdict(expected == actual, actual).expect(expected)
}

pub fn c2_closed_forms(_: &SuiteOptions) -> Vec<Record> {
    let mut out = Vec::new();
    let anchor = "general self-density vs special closed forms";
    for n in 1..=4 {
        let alpha = Partition::constant(0, n).expect("valid");
        match density_unit_closed(n) {
            Ok(e) => out.push(rf_record(format!("unit form, n={n}"), anchor, &e, &density_self_closed(&alpha))),
            Err(err) => out.push(from_error(Record::new(format!("unit form, n={n}"), anchor), &err)),
        }
    }
    for t in 1..=3 {
        let alpha = Partition::constant(1, 2 * t).expect("valid");
        match density_ht_closed(t) {
            Ok(e) => out.push(rf_record(format!("hyperbolic h_{t}"), anchor, &e, &density_self_closed(&alpha))),
            Err(err) => out.push(from_error(Record::new(format!("hyperbolic h_{t}"), anchor), &err)),
        }
    }
    // Size 2: (2a, 2a), (2a, 2b) with a > b, and (2e-1, 2e-1).
    for a in -1..=2i64 {
        let e = &(&q(6 * a) * &(&one() + &q(-1))) * &(&one() - &q(-2));
        out.push(rf_record(
            format!("size 2, ({}, {})", 2 * a, 2 * a),
            anchor,
            &e,
            &density_self_closed(&part(&format!("{},{}", 2 * a, 2 * a))),
        ));
    }
    for (a, b) in [(1i64, 0i64), (2, 0), (2, 1), (3, 1), (0, -1), (1, -2)] {
        let s = &one() + &q(-1);
        let e = &q(a + 5 * b) * &(&s * &s);
        out.push(rf_record(
            format!("size 2, ({}, {})", 2 * a, 2 * b),
            anchor,
            &e,
            &density_self_closed(&part(&format!("{},{}", 2 * a, 2 * b))),
        ));
    }
    for e in -1..=2i64 {
        let v = &q(6 * e - 2) * &(&one() - &q(-4));
        let a = 2 * e - 1;
        out.push(rf_record(format!("size 2, ({a}, {a})"), anchor, &v, &density_self_closed(&part(&format!("{a},{a}")))));
    }
    out
}

pub fn c3_size_two(_: &SuiteOptions) -> Vec<Record> {
    let anchor = "G_2 times the size-2 closed spherical function vs the explicit formula";
    let mut out = Vec::new();
    for a in -4i64..=4 {
        for b in -4..=a {
            let Ok(alpha) = Partition::new(vec![a, b]) else { continue };
            let rec = Record::new(format!("psi{alpha}"), anchor);
            let r = (|| -> Result<Record> {
                let (num, den) = size2_closed(&alpha)?;
                let psi = psi_explicit(&alpha)?;
                Ok(rec.clone().verdict(den == gn_factor(2) && num == psi, &psi).expect(&num))
            })();
            out.push(r.unwrap_or_else(|e| from_error(rec, &e)));
        }
    }
    let rec = Record::new("psi(-1,-1) is q - 1", anchor);
    out.push(match psi_explicit(&part("-1,-1")) {
        Ok(psi) => {
            let want = crate::spherical::ZPoly::constant(&q(1) - &one(), 2);
            rec.verdict(psi == want, &psi).expect(&want)
        }
        Err(e) => from_error(rec, &e),
    });
    out
}

pub fn symmetry_labels(n: usize) -> Vec<Partition> {
    let raw: &[&str] = match n {
        1 => &["0", "2", "4", "-2", "6", "-4"],
        2 => &["0,0", "2,0", "1,1", "3,3", "4,2", "-1,-1", "2,-2"],
        3 => &["0,0,0", "2,0,0", "1,1,0", "2,1,1", "3,3,0", "0,-1,-1", "4,2,0"],
        4 => &["0,0,0,0", "2,0,0,0", "1,1,0,0", "1,1,1,1", "2,1,1,0", "2,2,0,0", "-1,-1,-1,-1"],
        _ => &[],
    };
    raw.iter().map(|s| part(s)).collect()
}

pub fn c4_symmetry(_: &SuiteOptions) -> Vec<Record> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for alpha in symmetry_labels(n) {
            let start = Instant::now();
            let rec = Record::new(format!("psi{alpha} symmetric"), "explicit formula: exact division and S_n invariance");
            out.push(match psi_explicit(&alpha) {
                Ok(psi) => rec.verdict(psi.is_symmetric(), format!("{} terms", psi.len())).timed(start),
                Err(e) => from_error(rec, &e),
            });
        }
    }
    out
}

pub fn c5_induction(opts: &SuiteOptions) -> Vec<Record> {
    let mut out = Vec::new();
    for xi in ["0,0", "1,1", "2,0"] {
        let start = Instant::now();
        let rec = Record::new(format!("induction xi=({xi}) order 1 p={} level 2", opts.p), "series in t = q^-s_1 vs primitive densities");
        out.push(match verify_induction(&part(xi), 1, opts.p, 2, &opts.count) {
            Ok(r) => {
                let show = |v: &[BigRational]| v.iter().map(rational_to_string).collect::<Vec<_>>().join(", ");
                rec.verdict(r.agree, format!("[{}]", show(&r.rhs.coeffs))).expect(format!("[{}]", show(&r.lhs.coeffs))).timed(start)
            }
            Err(e) => from_error(rec, &e).timed(start),
        });
    }
    out
}

pub fn c6_delta(opts: &SuiteOptions) -> Vec<Record> {
    let mut out = Vec::new();
    let p = opts.p;
    let q0 = int(p as i64);
    let show = |v: &[BigRational], o: &BigRational| {
        let mut s: Vec<String> = v.iter().map(rational_to_string).collect();
        s.push(format!("rest {}", rational_to_string(o)));
        s.join(", ")
    };
    for a in ["0,0", "2,0", "1,1"] {
        let alpha = part(a);
        let rec = Record::new(format!("delta({a}) p={p} level 2"), "enumerated valuation law vs closed form");
        let r = (|| -> Result<Record> {
            let dist = delta_oracle(&alpha, 2, p)?;
            let series = delta_series_size2(&alpha, dist.volumes.len(), &q0)?;
            let head: BigRational = series.coeffs[..dist.volumes.len()].iter().sum();
            let expected = format!("u^{} [{}]", series.u_exponent, show(&series.coeffs[..dist.volumes.len()], &(&series.total - head)));
            let actual = format!("u^{} [{}]", dist.v2, show(&dist.volumes, &dist.overflow));
            Ok(rec.clone().verdict(dist.matches(&series), actual).expect(expected))
        })();
        out.push(r.unwrap_or_else(|e| from_error(rec, &e)));
    }
    let rec = Record::new(format!("odd-pair tail (1,1) p={p} level 2"), "mass (1 - q^-1) q^{-r-e+1} at v(d_1) = |alpha|/2 + r");
    let r = (|| -> Result<Record> {
        let dist = delta_oracle(&part("1,1"), 2, p)?;
        let (vols, over) = odd_pair_law(&part("1,1"), 2, &q0)?;
        Ok(rec
            .clone()
            .verdict(dist.volumes == vols && dist.overflow == over, show(&dist.volumes, &dist.overflow))
            .expect(show(&vols, &over)))
    })();
    out.push(r.unwrap_or_else(|e| from_error(rec, &e)));
    out
}

pub fn c7_ideal(_: &SuiteOptions) -> Vec<Record> {
    let mut out = Vec::new();
    let specs = [int(2), int(3), int(5)];
    for (n, count) in [(3usize, 6usize), (4, 7)] {
        match generators_match_display(n) {
            Ok(m) => {
                let labels = generator_labels(n).expect("n is 3 or 4");
                for (k, ok) in m.iter().enumerate() {
                    out.push(
                        Record::new(format!("n={n} generator psi{} vs displayed form", labels[k]), "generator up to leading coefficient")
                            .verdict(*ok, if *ok { "match" } else { "differs" })
                            .expect("match"),
                    );
                }
            }
            Err(e) => out.push(from_error(Record::new(format!("n={n} generators"), "generator display"), &e)),
        }
        let labels = match default_labels(n) {
            Ok(l) => l.into_iter().take(count).collect::<Vec<_>>(),
            Err(e) => {
                out.push(from_error(Record::new(format!("n={n} labels"), "ideal membership"), &e));
                continue;
            }
        };
        let start = Instant::now();
        match psi_membership(n, &labels, &specs) {
            Ok(rep) => {
                for v in rep.verdicts {
                    out.push(
                        Record::new(format!("n={n} psi{} in ideal at q={}", v.label, v.q0), "membership via reduced Groebner basis")
                            .verdict(v.member && v.order_independent, if v.member { "member" } else { "not a member" })
                            .expect("member"),
                    );
                }
                if let Some(last) = out.last_mut() {
                    *last = last.clone().timed(start);
                }
            }
            Err(e) => out.push(from_error(Record::new(format!("n={n} membership"), "ideal membership"), &e)),
        }
    }
    out
}

pub fn c8_orthogonality(_: &SuiteOptions) -> Vec<Record> {
    match orthogonality_suite(4, &ContourRule::deformed()) {
        Ok(recs) => recs
            .into_iter()
            .map(|r| Record::new(r.name, "residue sum over W = 0, u_1, u_2").verdict(r.holds, r.actual).expect(r.expected))
            .collect(),
        Err(e) => vec![from_error(Record::new("orthogonality", "residue sum"), &e)],
    }
}

/// Diagonal pairings before renormalization, in the form they are usually written.
pub fn norm_values() -> Vec<(Partition, RatFuncQ)> {
    let a = &one() + &q(-2);
    let a2 = &a * &a;
    let b = &one() - &q(-1);
    let div = |x: RatFuncQ, y: &RatFuncQ| x.div(y).expect("nonzero");
    vec![
        (part("0,0"), div(b.clone(), &a2)),
        (part("2,0"), div(&q(2) * &(&b * &b), &a2)),
        (part("1,1"), div(&q(-1) * &(&one() - &q(-2)), &(&a2 * &a))),
    ]
}

pub fn c9_plancherel(_: &SuiteOptions) -> Vec<Record> {
    let labels: Vec<Partition> = ["0,0", "2,0", "2,2", "1,1", "3,3"].iter().map(|s| part(s)).collect();
    let mut ctx = match PlancherelContext::new() {
        Ok(c) => c,
        Err(e) => return vec![from_error(Record::new("plancherel", "setup"), &e)],
    };
    let mut out = Vec::new();
    for a in &labels {
        for b in &labels {
            let rec = Record::new(format!("<F{a}, F{b}>"), "renormalized contour pairing vs orbit volume");
            out.push(match ctx.plancherel(a, b) {
                Ok(r) => rec.verdict(r.holds, &r.transform_side).expect(&r.orbit_side),
                Err(e) => from_error(rec, &e),
            });
        }
    }
    for (a, v) in norm_values() {
        let rec = Record::new(format!("norm of F{a} before renormalization"), "diagonal pairing, three orbit classes");
        out.push(match ctx.raw_pairing(&a, &a) {
            Ok(x) => rec.verdict(x == v, &x).expect(&v),
            Err(e) => from_error(rec, &e),
        });
    }
    for a in ["1,1", "3,3", "5,5"] {
        let rec = Record::new(format!("transform of odd class ({a}) as R_e"), "odd pair (2e-1, 2e-1) lands on R_(e-1), R_e = X^(2(e+1))");
        let e = (part(a).entries()[0] + 1) / 2;
        out.push(match ctx.transform(&part(a)) {
            Ok(t) => {
                rec.compare(format!("R_{}", e - 1), t.r_index().map_or("not a pure X-power".into(), |r| format!("R_{r}"))).supplementary()
            }
            Err(err) => from_error(rec, &err).supplementary(),
        });
    }
    for a in &labels {
        for x in &labels {
            let rec = Record::new(format!("inversion: indicator of {a} on orbit {x}"), "pairing with F(ch_x) over v(K x)");
            out.push(match ctx.inversion(a, x) {
                Ok(r) => rec.verdict(r.holds, &r.value).expect(&r.expected),
                Err(e) => from_error(rec, &e),
            });
        }
    }
    out
}

pub fn c10_model_independence(opts: &SuiteOptions) -> Vec<Record> {
    let p = 5;
    let first = smallest_nonresidue(p);
    let second = (first + 1..p).find(|&e| crate::quat::pow_mod(e, (p - 1) / 2, p) == p - 1).unwrap_or(first);
    let mut out = Vec::new();
    let items = [(1u32, "0", false), (2, "0", true), (2, "2", true)];
    for (ell, a, extra) in items {
        let alpha = part(a);
        let start = Instant::now();
        let rec =
            Record::new(format!("count({a}, {a}) p=5 level {ell}, eps2 = {first} vs {second}"), "counts under two nonresidue choices");
        let count = |eps2| -> Result<String> {
            let params = RingParams::new(p, ell, Some(eps2))?;
            Ok(density_at_level(&alpha, &alpha, &params, false, Method::Enumerate, &opts.count)?.count.to_string())
        };
        let r = match (count(first), count(second)) {
            (Ok(x), Ok(y)) => rec.compare(x, y).timed(start),
            (Err(e), _) | (_, Err(e)) => from_error(rec, &e),
        };
        out.push(if extra { r.supplementary() } else { r });
    }
    out
}

/// Run every criterion of the selected tiers.
pub fn run_suite(max_tier: Tier, opts: &SuiteOptions) -> Vec<(u8, &'static str, Vec<Record>)> {
    criteria().into_iter().filter(|c| c.tier <= max_tier).map(|c| (c.id, c.title, (c.run)(opts))).collect()
}
