//! Row builders behind each subcommand.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use pointbound::classical::{g2_threshold, g3_threshold, ihara_t, n1_from_trace, prime_powers};
use pointbound::order3::{rec3_rows, search_a3, wo3_report, SearchBudget};
use pointbound::refine2::{asymptotics, gain, ihara_serre_t, seq_gain_4q, seq_gain_cap};
use pointbound::{BoundReport, CurveParams, Quad, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{approx, Row};
use crate::records::{contradicts, RecordStatus, Records};

fn small(n: &BigInt) -> i128 {
    n.to_i128().expect("point counts fit in i128")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub method: &'static str,
    pub q: u64,
    pub g: u64,
    pub t1_lower: String,
    pub t1_approx: f64,
    pub n1_upper: i128,
    pub in_validity_range: bool,
    pub notes: Vec<String>,
}

impl From<&BoundReport> for BoundRow {
    fn from(r: &BoundReport) -> BoundRow {
        BoundRow {
            method: r.method.name(),
            q: r.params.q(),
            g: r.params.g(),
            t1_lower: r.t1_lower.to_exact_string(),
            t1_approx: r.t1_lower.certified_lower().to_f64(),
            n1_upper: small(&r.n1_upper),
            in_validity_range: r.in_validity_range,
            notes: r.notes.clone(),
        }
    }
}

impl Row for BoundRow {
    const HEADER: &'static [&'static str] =
        &["method", "q", "g", "t1_lower", "t1_approx", "n1_upper", "in_validity_range", "notes"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.method.to_string(),
            self.q.to_string(),
            self.g.to_string(),
            self.t1_lower.clone(),
            approx(self.t1_approx),
            self.n1_upper.to_string(),
            self.in_validity_range.to_string(),
            if self.notes.is_empty() { "-".into() } else { self.notes.join("; ") },
        ]
    }
}

/// One `(q, g)` pair where the refined order-2 bound beats Ihara.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub q: u64,
    pub g: u64,
    pub ihara_n: i128,
    pub ihara_serre_n: i128,
    pub improved: bool,
}

impl Row for TableEntry {
    const HEADER: &'static [&'static str] = &["q", "g", "ihara_n", "ihara_serre_n", "improved"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.g.to_string(),
            self.ihara_n.to_string(),
            self.ihara_serre_n.to_string(),
            self.improved.to_string(),
        ]
    }
}

pub fn table_entry(params: &CurveParams) -> Result<TableEntry> {
    let q = params.q();
    let ihara = n1_from_trace(q, &ihara_t(params)?);
    let is = n1_from_trace(q, &Quad::from(ihara_serre_t(params)?));
    Ok(TableEntry { q, g: params.g(), improved: is < ihara, ihara_n: small(&ihara), ihara_serre_n: small(&is) })
}

/// Every pair with `q ≤ qmax` a prime power and `g₂ ≤ g ≤ min(gmax, g₃)`.
pub fn table_grid(qmax: u64, gmax: u64) -> Vec<CurveParams> {
    prime_powers(2, qmax)
        .into_iter()
        .flat_map(|q| {
            let lo = g2_threshold(q).rounded;
            let hi = gmax.min(g3_threshold(q).rounded);
            (lo..=hi).filter_map(move |g| CurveParams::new(q, g).ok())
        })
        .collect()
}

pub fn table1(qmax: u64, gmax: u64) -> Result<Vec<TableEntry>> {
    let entries: Result<Vec<TableEntry>> = table_grid(qmax, gmax).par_iter().map(table_entry).collect();
    Ok(entries?.into_iter().filter(|e| e.improved).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareEntry {
    #[serde(flatten)]
    pub entry: TableEntry,
    pub best_upper: Option<u64>,
    pub best_lower: Option<u64>,
    pub record_status: RecordStatus,
}

impl Row for CompareEntry {
    const HEADER: &'static [&'static str] =
        &["q", "g", "ihara_n", "ihara_serre_n", "improved", "best_upper", "best_lower", "record_status"];

    fn cells(&self) -> Vec<String> {
        let opt = |x: Option<u64>| x.map_or("-".into(), |v| v.to_string());
        let mut cells = self.entry.cells();
        cells.extend([opt(self.best_upper), opt(self.best_lower), self.record_status.name().to_string()]);
        cells
    }
}

/// Improved pairs joined against `records`, plus a warning for every
/// bound that falls below a known lower bound.
pub fn compare(qmax: u64, gmax: u64, records: &Records) -> Result<(Vec<CompareEntry>, Vec<String>)> {
    let mut warnings = Vec::new();
    let rows = table1(qmax, gmax)?
        .into_iter()
        .map(|entry| {
            let rec = records.get(entry.q, entry.g);
            let ours = BigInt::from(entry.ihara_serre_n);
            if contradicts(&ours, rec) {
                warnings.push(format!(
                    "WARNING: q = {}, g = {}: upper bound {} is below the recorded lower bound {}",
                    entry.q,
                    entry.g,
                    ours,
                    rec.and_then(|r| r.best_lower).unwrap_or_default()
                ));
            }
            CompareEntry {
                record_status: RecordStatus::classify(&ours, rec),
                best_upper: rec.map(|r| r.best_upper),
                best_lower: rec.and_then(|r| r.best_lower),
                entry,
            }
        })
        .collect();
    Ok((rows, warnings))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rec3Row {
    pub q: u64,
    pub g: u64,
    pub d: u64,
    pub two_a: u64,
    pub b_x: i128,
    pub b_y: i128,
    pub t1_lower: String,
    pub t1_approx: f64,
    pub n1_upper: i128,
    pub baseline_n1: i128,
}

impl Row for Rec3Row {
    const HEADER: &'static [&'static str] =
        &["q", "g", "d", "two_a", "b_x", "b_y", "t1_lower", "t1_approx", "n1_upper", "baseline_n1"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.g.to_string(),
            self.d.to_string(),
            self.two_a.to_string(),
            self.b_x.to_string(),
            self.b_y.to_string(),
            self.t1_lower.clone(),
            approx(self.t1_approx),
            self.n1_upper.to_string(),
            self.baseline_n1.to_string(),
        ]
    }
}

pub fn rec3(precision_bits: u32) -> Result<Vec<Rec3Row>> {
    rec3_rows()
        .into_iter()
        .map(|(params, m, t)| {
            let baseline = wo3_report(&params, precision_bits)?;
            Ok(Rec3Row {
                q: params.q(),
                g: params.g(),
                d: m.d(),
                two_a: m.two_a(),
                b_x: small(m.b_x()),
                b_y: small(m.b_y()),
                t1_approx: Quad::from(t.clone()).to_f64(),
                n1_upper: small(&n1_from_trace(params.q(), &Quad::from(t.clone()))),
                t1_lower: t.to_string(),
                baseline_n1: small(&baseline.n1_upper),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub q: u64,
    pub g: u64,
    pub d: u64,
    pub two_a: u64,
    pub b_x: i128,
    pub b_y: i128,
    pub t1_lower: String,
    pub t1_approx: f64,
    pub n1_upper: i128,
    pub candidates: usize,
}

impl Row for ScanRow {
    const HEADER: &'static [&'static str] =
        &["q", "g", "d", "two_a", "b_x", "b_y", "t1_lower", "t1_approx", "n1_upper", "candidates"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.g.to_string(),
            self.d.to_string(),
            self.two_a.to_string(),
            self.b_x.to_string(),
            self.b_y.to_string(),
            self.t1_lower.clone(),
            approx(self.t1_approx),
            self.n1_upper.to_string(),
            self.candidates.to_string(),
        ]
    }
}

pub fn scan_a3(params: &CurveParams, budget: &SearchBudget) -> Result<ScanRow> {
    let found = search_a3(params, budget)?;
    let t = Quad::from(found.t1_lower.clone());
    Ok(ScanRow {
        q: params.q(),
        g: params.g(),
        d: found.matrix.d(),
        two_a: found.matrix.two_a(),
        b_x: small(found.matrix.b_x()),
        b_y: small(found.matrix.b_y()),
        t1_lower: found.t1_lower.to_string(),
        t1_approx: t.to_f64(),
        n1_upper: small(&n1_from_trace(params.q(), &t)),
        candidates: found.candidates,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Seq4qRow {
    pub q: u64,
    pub g: u64,
    pub gain: String,
    pub gain_approx: f64,
    pub cap: String,
    pub cap_approx: f64,
}

impl Row for Seq4qRow {
    const HEADER: &'static [&'static str] = &["q", "g", "gain", "gain_approx", "cap", "cap_approx"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.g.to_string(),
            self.gain.clone(),
            approx(self.gain_approx),
            self.cap.clone(),
            approx(self.cap_approx),
        ]
    }
}

/// The `g = 4q` family over prime powers `34 ≤ q ≤ qmax`.
pub fn seq4q(qmax: u64) -> Result<Vec<Seq4qRow>> {
    prime_powers(34, qmax)
        .par_iter()
        .map(|&q| {
            let gain = seq_gain_4q(q)?;
            let cap = Quad::from(seq_gain_cap(q));
            Ok(Seq4qRow {
                q,
                g: 4 * q,
                gain: gain.to_exact_string(),
                gain_approx: gain.to_f64(),
                cap: cap.to_exact_string(),
                cap_approx: cap.to_f64(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymRow {
    pub g: u64,
    pub gain: String,
    pub gain_approx: f64,
    /// The linear asymptote of the gain at this genus.
    pub asymptote_approx: f64,
}

impl Row for AsymRow {
    const HEADER: &'static [&'static str] = &["g", "gain", "gain_approx", "asymptote_approx"];

    fn cells(&self) -> Vec<String> {
        vec![self.g.to_string(), self.gain.clone(), approx(self.gain_approx), approx(self.asymptote_approx)]
    }
}

pub fn default_asym_gmax(q: u64) -> u64 {
    3 * g3_threshold(q).rounded
}

/// Gains for `g₂ ≤ g ≤ gmax` at fixed `q`.
pub fn asym(q: u64, gmax: u64, checked: bool) -> Result<Vec<AsymRow>> {
    let lim = asymptotics(q);
    let slope = lim.slope.to_f64();
    let c = lim.const_term.to_f64();
    let genera: Vec<u64> = (g2_threshold(q).rounded..=gmax).collect();
    genera
        .par_iter()
        .map(|&g| {
            let params = if checked { CurveParams::new(q, g)? } else { CurveParams::unchecked(q, g)? };
            let v = gain(&params)?;
            Ok(AsymRow {
                g,
                gain: v.to_exact_string(),
                gain_approx: v.to_f64(),
                asymptote_approx: slope * g as f64 + c,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::output::tsv;

    #[test]
    fn table_entry_matches_known_pair() {
        let e = table_entry(&CurveParams::new(5, 10).unwrap()).unwrap();
        assert_eq!((e.ihara_n, e.ihara_serre_n, e.improved), (36, 36, false));
        let e = table_entry(&CurveParams::new(53, 47).unwrap()).unwrap();
        assert!(e.improved);
    }

    #[test]
    fn asym_row_count() {
        assert_eq!(asym(23, 222, true).unwrap().len(), 213);
    }

    #[test]
    fn tsv_header_first() {
        let out = tsv(&seq4q(50).unwrap());
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("q\tg\tgain\tgain_approx\tcap\tcap_approx"));
        assert_eq!(lines.count(), 5);
    }
}
