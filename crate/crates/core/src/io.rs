//! Reading observation files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesFormat {
    /// One number per line; blank lines and `#` comments are skipped.
    #[default]
    OneColumn,
    /// Comma-separated `time,value` rows, optional header; the second column is read.
    TimeValueCsv,
}

pub fn load_series(path: impl AsRef<Path>, format: SeriesFormat) -> Result<TimeSeries> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_series(&text, format).map(|s| s.with_provenance(path.display().to_string()))
}

pub fn parse_series(text: &str, format: SeriesFormat) -> Result<TimeSeries> {
    let mut values = Vec::new();
    let mut seen_row = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = match format {
            SeriesFormat::OneColumn => line,
            SeriesFormat::TimeValueCsv => {
                let mut cols = line.split(',');
                let _time = cols.next();
                cols.next()
                    .map(str::trim)
                    .ok_or_else(|| Error::Parse { line: line_no, message: "expected two columns".into() })?
            }
        };
        let first = !seen_row;
        seen_row = true;
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(_) => return Err(Error::Parse { line: line_no, message: format!("non-finite value {field:?}") }),
            // A non-numeric first CSV row is a header.
            Err(_) if first && format == SeriesFormat::TimeValueCsv => {}
            Err(_) => return Err(Error::Parse { line: line_no, message: format!("not a number: {field:?}") }),
        }
    }
    if values.is_empty() {
        return Err(Error::Parse { line: 0, message: "no observations".into() });
    }
    TimeSeries::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn one_column() {
        assert_eq!(parse_series("1\n2\n3\n", SeriesFormat::OneColumn).unwrap().values(), &[1.0, 2.0, 3.0]);
        assert_eq!(parse_series("# comment\n5\n", SeriesFormat::OneColumn).unwrap().values(), &[5.0]);
    }

    #[test]
    fn time_value_csv_with_header() {
        let s = parse_series("a,b\n1,2.5\n2,3.5\n", SeriesFormat::TimeValueCsv).unwrap();
        assert_eq!(s.values(), &[2.5, 3.5]);
        let s = parse_series("1,2.5\n2,3.5\n", SeriesFormat::TimeValueCsv).unwrap();
        assert_eq!(s.values(), &[2.5, 3.5]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_series("1\n\nx\n", SeriesFormat::OneColumn) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_series("t,v\n1,2\n2,oops\n", SeriesFormat::TimeValueCsv) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_series("", SeriesFormat::OneColumn).is_err());
        assert!(parse_series("# only\n", SeriesFormat::OneColumn).is_err());
        assert!(parse_series("1\nnan\n", SeriesFormat::OneColumn).is_err());
    }

    #[test]
    fn loads_from_disk() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "4.5\n6").unwrap();
        let s = load_series(f.path(), SeriesFormat::OneColumn).unwrap();
        assert_eq!(s.values(), &[4.5, 6.0]);
        assert!(s.provenance().is_some());
    }
}
