//! Float formatting and CSV tables.

use std::io::Write;

use crate::error::{Error, Result};

/// Minimum significant digits in any printed float.
pub const MIN_SIGNIFICANT: usize = 12;

/// Shortest decimal with at least 12 significant digits that parses back to
/// exactly `v`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    for digits in MIN_SIGNIFICANT..=17 {
        let s = with_significant(v, digits);
        if s.parse::<f64>() == Ok(v) {
            return s;
        }
    }
    with_significant(v, 17)
}

fn with_significant(v: f64, digits: usize) -> String {
    let sci = format!("{:.*e}", digits - 1, v);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if v == 0.0 || (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}

/// A CSV table with `# key=value` metadata lines.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub leading_comments: Vec<(String, String)>,
    pub trailing_comments: Vec<(String, String)>,
}

impl OutputTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            leading_comments: Vec::new(),
            trailing_comments: Vec::new(),
        }
    }

    pub fn comment(&mut self, key: &str, value: impl ToString) {
        self.leading_comments.push((key.into(), value.to_string()));
    }

    pub fn trailing(&mut self, key: &str, value: impl ToString) {
        self.trailing_comments.push((key.into(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::Consistency(format!(
                "row has {} fields, header has {}",
                row.len(),
                self.header.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Io(e.to_string());
        for (k, v) in &self.leading_comments {
            writeln!(out, "# {k}={v}")?;
        }
        {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&self.header).map_err(io)?;
            for row in &self.rows {
                w.write_record(row.iter().map(|&v| format_float(v)))
                    .map_err(io)?;
            }
            w.flush()?;
        }
        for (k, v) in &self.trailing_comments {
            writeln!(out, "# {k}={v}")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
    }
}
