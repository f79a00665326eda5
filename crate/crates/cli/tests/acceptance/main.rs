//! Acceptance gate: every criterion prints one PASS/FAIL line with its
//! runtime, and the test fails if any criterion does.

mod commands;

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use pointbound::classical::{n1_from_trace, CurveParams};
use pointbound::order3::{bound_a3, search_a3, wo3_report, RefineMatrix3, SearchBudget, DEFAULT_PRECISION_BITS};
use pointbound::qext::rat;
use pointbound::verify::suite::{self, Outcome};
use pointbound::Quad;

const REFERENCE_PAIRS: &[(u64, &[u64])] = &[
    (9, &[12, 17]),
    (11, &[8, 19, 23, 24]),
    (13, &[16, 19, 22, 25]),
    (16, &[13, 20, 34, 35, 39, 40, 41]),
    (17, &[15, 17, 22, 24, 29, 42, 45]),
    (19, &[12, 23, 27, 30, 31, 34, 35, 37, 38, 41, 42, 44, 45, 48, 49]),
    (23, &[14, 22, 27, 30, 32, 35, 38, 43, 46]),
    (25, &[20, 31, 34, 37, 39, 40, 42, 43, 45, 47, 48, 50]),
    (27, &[11, 14, 48, 49, 50]),
    (29, &[18, 30, 34, 35, 38, 39, 43, 44, 48]),
    (31, &[24, 27, 29, 41, 43, 45, 47, 49, 50]),
    (32, &[26, 29, 41, 46, 48, 50]),
    (37, &[28, 31, 34, 41, 45, 46, 49, 50]),
    (41, &[18, 29, 30, 39, 40, 43, 44, 47, 50]),
    (43, &[21, 30, 31, 32, 46, 47, 48, 49, 50]),
    (47, &[23, 32, 38, 40, 42, 45, 47, 50]),
    (49, &[33, 37, 46, 49]),
    (53, &[33, 38, 47, 48, 49, 50]),
    (59, &[32, 33, 34, 40, 43, 44, 47, 50]),
    (61, &[27, 48, 49, 50]),
    (64, &[39, 43, 47]),
    (67, &[36, 44, 46, 48, 50]),
    (71, &[32, 41]),
    (73, &[35, 38, 43]),
    (79, &[38, 39, 49]),
    (81, &[50]),
    (83, &[43, 44]),
    (89, &[42, 45, 50]),
    (97, &[46, 49]),
];

/// Id, description, time limit in seconds, check.
type Criterion = (&'static str, &'static str, u64, fn() -> Verdict);

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new(ok: bool, detail: impl Into<String>) -> Verdict {
        Verdict { ok, detail: detail.into() }
    }
}

impl From<Outcome> for Verdict {
    fn from(o: Outcome) -> Verdict {
        let mut detail = format!("{} checks, {} failed", o.checks, o.failed);
        for f in o.failures.iter().take(5) {
            detail.push_str(&format!("; {f}"));
        }
        Verdict::new(o.passed(), detail)
    }
}

fn pointbound(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_pointbound")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8 output")
}

/// Data rows of a TSV as maps from header name to cell.
fn tsv_rows(text: &str) -> Vec<BTreeMap<String, String>> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().expect("header").split('\t').collect();
    lines.map(|l| header.iter().map(|h| h.to_string()).zip(l.split('\t').map(str::to_string)).collect()).collect()
}

fn ac1() -> Verdict {
    let rows = tsv_rows(&pointbound(&["rec3"]));
    let got: Vec<(String, String)> = rows.iter().map(|r| (r["t1_lower"].clone(), r["n1_upper"].clone())).collect();
    let want: Vec<(String, String)> =
        [("-1723/36", "53"), ("-12348/179", "76"), ("-23352/193", "129"), ("-33580/221", "163")]
            .iter()
            .map(|(t, n)| (t.to_string(), n.to_string()))
            .collect();
    Verdict::new(got == want, format!("{got:?}"))
}

fn ac2() -> Verdict {
    let rows = tsv_rows(&pointbound(&["table1", "--qmax", "100", "--gmax", "50"]));
    let got: BTreeSet<(u64, u64)> = rows.iter().map(|r| (r["q"].parse().unwrap(), r["g"].parse().unwrap())).collect();
    let want: BTreeSet<(u64, u64)> =
        REFERENCE_PAIRS.iter().flat_map(|(q, gs)| gs.iter().map(move |&g| (*q, g))).collect();
    let missing: Vec<_> = want.difference(&got).collect();
    let extra: Vec<_> = got.difference(&want).collect();
    Verdict::new(
        missing.is_empty() && extra.is_empty(),
        format!("{} pairs, {} expected; missing {missing:?}, extra {extra:?}", got.len(), want.len()),
    )
}

fn ac10() -> Verdict {
    let params = CurveParams::new(5, 19).unwrap();
    let base = match wo3_report(&params, DEFAULT_PRECISION_BITS) {
        Ok(r) => r,
        Err(e) => return Verdict::new(false, e.to_string()),
    };
    let m = RefineMatrix3::new(5, 1, 7, 28, -7).unwrap();
    let t = bound_a3(&params, &m).unwrap();
    let refined = n1_from_trace(5, &Quad::from(t));
    let found = search_a3(&params, &SearchBudget::default()).unwrap();
    let ok = base.n1_upper == 54.into() && refined == 53.into() && found.t1_lower >= rat(-1723, 36);
    Verdict::new(ok, format!("baseline N1 {}, refined N1 {refined}, search t1 {}", base.n1_upper, found.t1_lower))
}

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        ("AC1", "order-3 records reproduced exactly", 1, ac1),
        ("AC2", "table of improved pairs, qmax 100, gmax 50", 10, ac2),
        ("AC3", "gain along g = 4q", 5, || suite::seq4q_family().into()),
        ("AC4", "q = 3 has zero asymptotic slope", 1, || suite::q3_exception().into()),
        ("AC5", "Ihara agrees with the order-2 oracle", 10, || suite::oracle_agreement(5, 300).into()),
        ("AC6", "half-integer optimality", 10, || suite::halfinteger_optimality(6, 50).into()),
        ("AC7", "gain identity and sign on a grid", 5, || suite::gain_grid(500).into()),
        ("AC8", "gain asymptote", 5, || suite::asymptote_check().into()),
        ("AC9", "quadratic field property suite", 10, || suite::qext_properties(9, 4000).into()),
        ("AC10", "order-3 baseline, refinement and search", 30, ac10),
    ];
    let mut failed = Vec::new();
    println!();
    for (id, what, limit, run) in criteria {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let ok = v.ok && in_time;
        println!(
            "{} {id} {what} [{:.2}s / {limit}s] {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            v.detail
        );
        if !ok {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
