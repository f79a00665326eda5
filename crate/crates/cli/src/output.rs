//! TSV and JSON rendering of result rows.

use serde::Serialize;

pub trait Row: Serialize {
    const HEADER: &'static [&'static str];

    fn cells(&self) -> Vec<String>;
}

/// Fixed six-decimal rendering so that TSV output is byte-stable.
pub fn approx(x: f64) -> String {
    format!("{x:.6}")
}

pub fn tsv<R: Row>(rows: &[R]) -> String {
    let mut out = R::HEADER.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.cells().join("\t"));
        out.push('\n');
    }
    out
}

pub fn json<R: Row>(rows: &[R]) -> String {
    let mut out = serde_json::to_string_pretty(rows).expect("rows serialize");
    out.push('\n');
    out
}

pub fn render<R: Row>(rows: &[R], as_json: bool) -> String {
    if as_json {
        json(rows)
    } else {
        tsv(rows)
    }
}
