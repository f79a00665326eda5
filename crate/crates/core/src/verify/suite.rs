//! Randomized and grid checks of the exact modules against the oracles.
//!
//! Each check returns an [`Outcome`] instead of panicking so that the same
//! code can back both the test suites and the `selftest` command.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::hp::{close, Hp};
use super::{scan_halfinteger, weil_domain_min2};
use crate::classical::{g2_threshold, g3_threshold, ihara_t, n1_from_trace, prime_powers, CurveParams};
use crate::order3::{bound_a3, rec3_rows, search_a3, wo3_report, RefineMatrix3, SearchBudget, DEFAULT_PRECISION_BITS};
use crate::qext::{int, rat, Quad, Rational};
use crate::refine2::{alpha, asymptotics, bound_a2, gain, ihara_serre_t, seq_gain_4q, seq_gain_cap, RefineMatrix2};

/// Failure messages kept per check; the count is always exact.
const MAX_REPORTED: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub checks: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    fn new(name: &'static str) -> Outcome {
        Outcome { name, checks: 0, failed: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(msg());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checks > 0
    }
}

fn random_rational(rng: &mut StdRng) -> Rational {
    let mut n = BigInt::from(rng.gen_range(-1_000_000_000i64..=1_000_000_000));
    if rng.gen_ratio(1, 16) {
        n *= BigInt::from(10).pow(rng.gen_range(5..25));
    }
    Rational::new(n, BigInt::from(rng.gen_range(1i64..=10_000)))
}

fn random_quad(rng: &mut StdRng, d: &Rational) -> Quad {
    let y = random_rational(rng);
    let x = if rng.gen_ratio(1, 4) {
        // close to zero: x ≈ −y√D to k digits
        let k = rng.gen_range(0..30u32);
        let scale = int(BigInt::from(10).pow(k));
        let approx = Quad::new(int(0), y.clone(), d.clone()).unwrap().scale(&scale).floor();
        -(int(approx) / scale) + int(rng.gen_range(-1..=1))
    } else {
        random_rational(rng)
    };
    Quad::new(x, y, d.clone()).unwrap()
}

/// `x + y·√D` and `|x| + |y|·√D`, the latter scaling the rounding error,
/// given `√D` for the radicand of `u`.
fn eval(u: &Quad, root: &Hp) -> (Hp, Hp) {
    let x = Hp::from_rational(u.x());
    if u.is_rational() {
        let m = x.abs();
        return (x, m);
    }
    let y = Hp::from_rational(u.y()) * root;
    let m = x.abs() + y.abs();
    (x + y, m)
}

fn hp_sign(v: &Hp) -> i8 {
    if v.is_negative() {
        -1
    } else if v == &Hp::zero() {
        0
    } else {
        1
    }
}

/// Field axioms, canonical form and rendering on `n` random triples, and
/// sign, floor and comparison on each of their members.
#[allow(clippy::eq_op)]
pub fn qext_properties(seed: u64, n: usize) -> Outcome {
    let mut out = Outcome::new("qext properties");
    let mut rng = StdRng::seed_from_u64(seed);
    // squarefree, so every irrational result keeps the same radicand
    let radicands = [2i64, 3, 5, 7, 6, 10, 11, 13, 17, 1009];
    let roots: Vec<Hp> = radicands.iter().map(|&d| Hp::from_int(d).sqrt()).collect();
    let floor_gap = Hp::pow10(-50);
    for i in 0..n {
        let d = int(radicands[i % radicands.len()]);
        let root = &roots[i % radicands.len()];
        let (u, v, w) = (random_quad(&mut rng, &d), random_quad(&mut rng, &d), random_quad(&mut rng, &d));

        // exact axioms
        out.check((&u + &v) + &w == &u + &(&v + &w), || format!("add assoc {u} {v} {w}"));
        out.check((&u * &v) * &w == &u * &(&v * &w), || format!("mul assoc {u} {v} {w}"));
        out.check(&u * &(&v + &w) == &u * &v + &u * &w, || format!("distributivity {u} {v} {w}"));
        out.check(&u * &v == &v * &u, || format!("mul comm {u} {v}"));
        out.check(&u - &u == Quad::from_int(0), || format!("u - u {u}"));
        if !u.is_zero() {
            let inv = u.inv().unwrap();
            out.check(&u * &inv == Quad::from_int(1), || format!("inverse {u}"));
        }
        out.check(&u * &u.conjugate() == Quad::from(u.norm()), || format!("norm {u}"));

        // against the oracle
        let ((hu, mu), (hv, mv)) = (eval(&u, root), eval(&v, root));
        let (huv, muv) = eval(&(&u * &v), root);
        let tol = Hp::pow10(-100) * (Hp::one() + muv + &mu * &mv);
        out.check(close(&huv, &(&hu * &hv), &tol), || format!("mul value {u} {v}"));
        let (hsum, msum) = eval(&(&u + &v), root);
        let tol = Hp::pow10(-100) * (Hp::one() + msum + &mu + &mv);
        out.check(close(&hsum, &(&hu + &hv), &tol), || format!("add value {u} {v}"));
        if hu.abs() > Hp::pow10(-20) && hv.abs() > Hp::pow10(-20) {
            let quot = &hu / &hv;
            let (hq, mq) = eval(&u.checked_div(&v).unwrap(), root);
            let rel = &mu / hu.abs() + &mv / hv.abs();
            let tol = Hp::pow10(-95) * (Hp::one() + mq + quot.abs() * rel);
            out.check(close(&hq, &quot, &tol), || format!("div value {u} {v}"));
        }
        let hw = eval(&w, root);
        let vals = [(&u, &hu, &mu), (&v, &hv, &mv), (&w, &hw.0, &hw.1)];
        for (x, hx, mx) in vals {
            let noise = Hp::pow10(-100) * (Hp::one() + mx);
            if hx.abs() > noise {
                out.check(x.signum() == hp_sign(hx), || format!("sign {x}"));
            }

            // floor, certified and against the oracle
            let f = x.floor();
            let lower = x - &Quad::from(int(f.clone()));
            let upper = x - &Quad::from(int(&f + 1));
            out.check(lower.signum() >= 0 && upper.signum() < 0, || format!("floor certificate {x}"));
            let gap = hx.dist_to_integer();
            if gap > floor_gap && gap > noise {
                out.check(f == hx.floor(), || format!("floor value {x}"));
            }
            out.check(x.ceil() == -(-x).floor(), || format!("ceil {x}"));
        }
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            let ((x, hx, mx), (y, hy, my)) = (vals[a], vals[b]);
            if (hx - hy).abs() > Hp::pow10(-100) * (Hp::one() + mx + my) {
                let ord = x.checked_cmp(y).unwrap();
                out.check(ord == hx.cmp(hy), || format!("cmp {x} {y}"));
            }
        }

        // canonical form
        let k: i64 = rng.gen_range(1..=1000);
        let sq = Quad::new(int(0), int(1), int(k * k)).unwrap();
        out.check(sq.is_rational() && sq == Quad::from_int(k), || format!("sqrt({}) not folded", k * k));
        let big = Quad::new(u.x().clone(), u.y().clone(), int(k * k) * &d).unwrap();
        let small = Quad::new(u.x().clone(), u.y() * int(k), d.clone()).unwrap();
        out.check(big == small && big.radicand() == small.radicand(), || format!("radicand {k}^2*{d}"));

        // rendering
        let parsed: Result<Quad, _> = u.to_string().parse();
        out.check(parsed.as_ref() == Ok(&u), || format!("roundtrip {u}"));
    }
    out
}

/// `gain(q, 4q) = √q/3` at the optimal points and `≤ q/(2⌈(3√q − 1)/2⌉)`
/// on all prime powers in `[34, 2000]`.
pub fn seq4q_family() -> Outcome {
    let mut out = Outcome::new("g = 4q family");
    for q in [64u64, 256, 1024, 4096] {
        let params = CurveParams::new(q, 4 * q).unwrap();
        let expected = Quad::new(int(0), rat(1, 3), int(q)).unwrap();
        let got = gain(&params);
        out.check(got.as_ref() == Ok(&expected), || format!("gain({q}, {}) = {got:?}", 4 * q));
    }
    for q in prime_powers(34, 2000) {
        let params = CurveParams::new(q, 4 * q).unwrap();
        let (Ok(g), Ok(s)) = (gain(&params), seq_gain_4q(q)) else {
            out.check(false, || format!("q = {q} failed to evaluate"));
            continue;
        };
        out.check(g == s, || format!("specialised formula at q = {q}"));
        let cap = Quad::from(seq_gain_cap(q));
        out.check(g.checked_cmp(&cap).is_ok_and(|o| o.is_le()), || format!("cap exceeded at q = {q}"));
    }
    out
}

/// `q = 3` has an integral `α^∞`, so the gain stays bounded.
pub fn q3_exception() -> Outcome {
    let mut out = Outcome::new("q = 3 exception");
    let asy = asymptotics(3);
    out.check(asy.slope.is_zero(), || format!("slope {}", asy.slope));
    let g = 1_000_000u64;
    let gn = gain(&CurveParams::new(3, g).unwrap()).unwrap();
    let ratio = Hp::from_quad(&gn) / Hp::from_int(g);
    out.check(ratio < Hp::pow10(-3), || format!("gain/g = {ratio:.20}"));
    out
}

/// Ihara's trace against the minimum over the order-2 Weil domain.
pub fn oracle_agreement(seed: u64, n: usize) -> Outcome {
    let mut out = Outcome::new("Ihara vs Weil-domain oracle");
    let mut rng = StdRng::seed_from_u64(seed);
    let qs = prime_powers(2, 500);
    let tol = Hp::pow10(-9);
    for _ in 0..n {
        let q = qs[rng.gen_range(0..qs.len())];
        let g2 = g2_threshold(q).rounded.max(1);
        let g3 = g3_threshold(q).rounded.max(g2);
        let g = rng.gen_range(g2..=3 * g3);
        let params = CurveParams::new(q, g).unwrap();
        let ti = Hp::from_quad(&ihara_t(&params).unwrap());
        let oracle = weil_domain_min2(&params);
        out.check(close(&ti, &oracle, &tol), || format!("q={q} g={g}: {ti:.15} vs {oracle:.15}"));
    }
    out
}

/// The optimum over half-integers is `⌊α⌋ + ½`, and integer `a` never
/// beats Ihara.
pub fn halfinteger_optimality(seed: u64, n: usize) -> Outcome {
    let mut out = Outcome::new("half-integer optimality");
    let mut rng = StdRng::seed_from_u64(seed);
    let qs = prime_powers(2, 500);
    let mut done = 0;
    while done < n {
        let q = qs[rng.gen_range(0..qs.len())];
        let g2 = g2_threshold(q).rounded.max(1);
        let g3 = g3_threshold(q).rounded;
        if g3 < g2 {
            continue;
        }
        let params = CurveParams::new(q, rng.gen_range(g2..=g3)).unwrap();
        let al = alpha(&params).unwrap();
        if al.is_integer() {
            continue;
        }
        done += 1;
        let k = al.floor().to_u64().unwrap();
        let top = al.ceil().to_u64().unwrap() + 5;
        let best = scan_halfinteger(&params, 2 * top);
        out.check(best == Ok(2 * k + 1), || format!("q={} g={}: scan gave {best:?}, k={k}", q, params.g()));
        let ti = ihara_t(&params).unwrap();
        for a in 0..=top {
            let m = RefineMatrix2::new(1, 2 * a, a * a + 1).unwrap();
            let v = Quad::from(bound_a2(&params, &m));
            out.check(v.checked_cmp(&ti).is_ok_and(|o| o.is_le()), || format!("q={q} g={} a={a}", params.g()));
        }
    }
    out
}

/// `t_IS − t_I = gain ≥ 0`, zero exactly for integral `α`, on a fixed grid
/// of `points` pairs.
pub fn gain_grid(points: usize) -> Outcome {
    let mut out = Outcome::new("gain identity and sign");
    let mut pairs = vec![(3u64, 1u64), (2, 1), (5, 10)];
    'outer: for q in prime_powers(2, 10_000) {
        let g2 = g2_threshold(q).rounded.max(1);
        let g3 = g3_threshold(q).rounded.max(g2);
        let step = ((g3 - g2) / 9).max(1);
        for j in 0..10 {
            if pairs.len() >= points {
                break 'outer;
            }
            pairs.push((q, g2 + j * step));
        }
    }
    for (q, g) in pairs {
        let params = CurveParams::new(q, g).unwrap();
        let (Ok(ti), Ok(tis), Ok(gn), Ok(al)) =
            (ihara_t(&params), ihara_serre_t(&params), gain(&params), alpha(&params))
        else {
            out.check(false, || format!("q={q} g={g} failed to evaluate"));
            continue;
        };
        out.check(Quad::from(tis) - &ti == gn, || format!("identity at q={q} g={g}"));
        out.check(gn.signum() >= 0, || format!("negative gain at q={q} g={g}"));
        out.check(gn.is_zero() == al.is_integer(), || format!("zero gain vs integral alpha at q={q} g={g}"));
    }
    out
}

/// `gain(q, g) ≈ slope·g + const_term` at `g = 10⁷`.
pub fn asymptote_check() -> Outcome {
    let mut out = Outcome::new("asymptote");
    let g = 10_000_000u64;
    for q in [5u64, 23, 67] {
        let asy = asymptotics(q);
        let gn = Hp::from_quad(&gain(&CurveParams::new(q, g).unwrap()).unwrap());
        let line = Hp::from_quad(&asy.slope) * Hp::from_int(g) + Hp::from_quad(&asy.const_term);
        out.check(close(&gn, &line, &Hp::pow10(-3)), || format!("q={q}: gain {gn:.12} vs asymptote {line:.12}"));
    }
    out
}

/// The four order-3 records, exactly.
pub fn rec3_exact() -> Outcome {
    let mut out = Outcome::new("order-3 records");
    let expected = [(rat(-1723, 36), 53), (rat(-12348, 179), 76), (rat(-23352, 193), 129), (rat(-33580, 221), 163)];
    let rows = rec3_rows();
    out.check(rows.len() == expected.len(), || format!("{} rows", rows.len()));
    for ((params, _, t), (et, en)) in rows.iter().zip(expected) {
        let n = n1_from_trace(params.q(), &Quad::from(t.clone()));
        out.check(t == &et && n == BigInt::from(en), || format!("q={} g={}: {t}, N1 <= {n}", params.q(), params.g()));
    }
    out
}

/// Baseline, refinement and search at `(q, g) = (5, 19)`.
pub fn order3_consistency() -> Outcome {
    let mut out = Outcome::new("order-3 consistency");
    let params = CurveParams::new(5, 19).unwrap();
    let base = wo3_report(&params, DEFAULT_PRECISION_BITS);
    let base_n = base.as_ref().map(|r| r.n1_upper.clone());
    out.check(base_n == Ok(BigInt::from(54)), || format!("baseline N1 {base_n:?}"));
    let m = RefineMatrix3::new(5, 1, 7, 28, -7).unwrap();
    let t = bound_a3(&params, &m).unwrap();
    let n = n1_from_trace(5, &Quad::from(t.clone()));
    out.check(n == BigInt::from(53), || format!("refined N1 {n}"));
    if let Ok(b) = &base {
        out.check(Quad::from(t.clone()).checked_cmp(&b.t1_lower.certified_lower()).is_ok_and(|o| o.is_gt()), || {
            "refinement does not improve the baseline".into()
        });
    }
    let found = search_a3(&params, &SearchBudget::default());
    let ok = found.as_ref().is_ok_and(|f| f.t1_lower >= rat(-1723, 36));
    out.check(ok, || format!("search gave {:?}", found.map(|f| f.t1_lower)));
    out
}

/// Everything above with the default sizes.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    vec![
        qext_properties(seed, 4_000),
        seq4q_family(),
        q3_exception(),
        oracle_agreement(seed, 300),
        halfinteger_optimality(seed, 50),
        gain_grid(500),
        asymptote_check(),
        rec3_exact(),
        order3_consistency(),
    ]
}
