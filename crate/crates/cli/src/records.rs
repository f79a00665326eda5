//! Best-known values of N_q(g) read from a local CSV snapshot.
//!
//! Columns are `q,g,best_upper` with optional `best_lower` and `source`.
//! Lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use pointbound::classical::is_prime_power;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RecordsError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("records line {line}: {message}")]
    Malformed { line: u64, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordRow {
    pub q: u64,
    pub g: u64,
    pub best_upper: u64,
    pub best_lower: Option<u64>,
    pub source: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Records {
    rows: BTreeMap<(u64, u64), RecordRow>,
}

const COLUMNS: [&str; 5] = ["q", "g", "best_upper", "best_lower", "source"];

fn malformed(line: u64, message: impl Into<String>) -> RecordsError {
    RecordsError::Malformed { line, message: message.into() }
}

fn csv_error(e: csv::Error) -> RecordsError {
    let line = e.position().map_or(0, |p| p.line());
    malformed(line, e.to_string())
}

fn parse_field(field: Option<&str>, name: &str, line: u64) -> Result<Option<u64>, RecordsError> {
    match field {
        None | Some("") => Ok(None),
        Some(s) => s
            .parse()
            .map(Some)
            .map_err(|_| malformed(line, format!("{name}: expected a nonnegative integer, got {s:?}"))),
    }
}

impl Records {
    pub fn from_reader<R: Read>(reader: R) -> Result<Records, RecordsError> {
        let mut rdr =
            csv::ReaderBuilder::new().comment(Some(b'#')).flexible(true).trim(csv::Trim::All).from_reader(reader);
        let header = rdr.headers().map_err(csv_error)?.clone();
        let header_line = header.position().map_or(1, |p| p.line());
        if header.len() < 3 || header.len() > COLUMNS.len() || header.iter().zip(COLUMNS).any(|(h, c)| h != c) {
            let got: Vec<&str> = header.iter().collect();
            return Err(malformed(
                header_line,
                format!("header must be q,g,best_upper[,best_lower[,source]], got {}", got.join(",")),
            ));
        }
        let mut rows = BTreeMap::new();
        for record in rdr.records() {
            let record = record.map_err(csv_error)?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() < 3 || record.len() > header.len() {
                return Err(malformed(line, format!("expected 3 to {} fields, got {}", header.len(), record.len())));
            }
            let required = |i: usize| {
                parse_field(record.get(i), COLUMNS[i], line)?
                    .ok_or_else(|| malformed(line, format!("{} is required", COLUMNS[i])))
            };
            let row = RecordRow {
                q: required(0)?,
                g: required(1)?,
                best_upper: required(2)?,
                best_lower: parse_field(record.get(3), COLUMNS[3], line)?,
                source: record.get(4).filter(|s| !s.is_empty()).map(str::to_string),
            };
            if !is_prime_power(row.q) {
                return Err(malformed(line, format!("q = {} is not a prime power", row.q)));
            }
            if row.best_lower.is_some_and(|lo| lo > row.best_upper) {
                return Err(malformed(line, "best_lower exceeds best_upper"));
            }
            if rows.insert((row.q, row.g), row.clone()).is_some() {
                return Err(malformed(line, format!("duplicate entry for q = {}, g = {}", row.q, row.g)));
            }
        }
        Ok(Records { rows })
    }

    pub fn from_path(path: &Path) -> Result<Records, RecordsError> {
        let file = File::open(path).map_err(|source| RecordsError::Io { path: path.display().to_string(), source })?;
        Records::from_reader(file)
    }

    pub fn get(&self, q: u64, g: u64) -> Option<&RecordRow> {
        self.rows.get(&(q, g))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    /// Strictly below the published upper bound.
    NewRecord,
    MeetsRecord,
    WorseThanRecord,
    NoRecordData,
}

impl RecordStatus {
    pub fn classify(ours: &BigInt, record: Option<&RecordRow>) -> RecordStatus {
        match record {
            None => RecordStatus::NoRecordData,
            Some(r) => match ours.cmp(&BigInt::from(r.best_upper)) {
                std::cmp::Ordering::Less => RecordStatus::NewRecord,
                std::cmp::Ordering::Equal => RecordStatus::MeetsRecord,
                std::cmp::Ordering::Greater => RecordStatus::WorseThanRecord,
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RecordStatus::NewRecord => "new_record",
            RecordStatus::MeetsRecord => "meets_record",
            RecordStatus::WorseThanRecord => "worse_than_record",
            RecordStatus::NoRecordData => "no_record_data",
        }
    }
}

/// An upper bound below a known curve's point count means a bug somewhere.
pub fn contradicts(ours: &BigInt, record: Option<&RecordRow>) -> bool {
    record.and_then(|r| r.best_lower).is_some_and(|lo| ours < &BigInt::from(lo))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Records, RecordsError> {
        Records::from_reader(s.as_bytes())
    }

    fn line_of(e: RecordsError) -> u64 {
        match e {
            RecordsError::Malformed { line, .. } => line,
            other => panic!("{other}"),
        }
    }

    #[test]
    fn reads_optional_columns_and_comments() {
        let r = parse("# snapshot\nq,g,best_upper,best_lower,source\n53,47,216,,x\n9,12,31,31\n7,3,20\n").unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.get(53, 47).unwrap().source.as_deref(), Some("x"));
        assert_eq!(r.get(53, 47).unwrap().best_lower, None);
        assert_eq!(r.get(9, 12).unwrap().best_lower, Some(31));
        assert!(r.get(2, 2).is_none());
    }

    #[test]
    fn rejects_with_line_numbers() {
        assert_eq!(line_of(parse("q,g,upper\n").unwrap_err()), 1);
        assert_eq!(line_of(parse("q,g,best_upper\n4,1,9\n6,1,9\n").unwrap_err()), 3);
        assert_eq!(line_of(parse("q,g,best_upper,best_lower\n4,1,9,10\n").unwrap_err()), 2);
        assert_eq!(line_of(parse("q,g,best_upper\n4,1,9\n4,1,8\n").unwrap_err()), 3);
        assert_eq!(line_of(parse("q,g,best_upper\n4,-1,9\n").unwrap_err()), 2);
        assert_eq!(line_of(parse("q,g,best_upper\n4,1\n").unwrap_err()), 2);
    }

    #[test]
    fn classification() {
        let row = RecordRow { q: 5, g: 3, best_upper: 12, best_lower: Some(10), source: None };
        let n = |x: i64| BigInt::from(x);
        assert_eq!(RecordStatus::classify(&n(11), Some(&row)), RecordStatus::NewRecord);
        assert_eq!(RecordStatus::classify(&n(12), Some(&row)), RecordStatus::MeetsRecord);
        assert_eq!(RecordStatus::classify(&n(13), Some(&row)), RecordStatus::WorseThanRecord);
        assert_eq!(RecordStatus::classify(&n(13), None), RecordStatus::NoRecordData);
        assert!(contradicts(&n(9), Some(&row)));
        assert!(!contradicts(&n(10), Some(&row)));
    }
}
