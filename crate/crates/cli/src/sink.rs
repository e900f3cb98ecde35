//! Report output: JSON lines or CSV, to a file or standard output.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde_json::Value;
use symmod::{Error, Result};

use crate::{Common, Format};

/// Everything a command emits: one JSON object per line, or one CSV table.
pub struct Report {
    pub lines: Vec<Value>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            lines: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn write(&self, common: &Common) -> Result<()> {
        let target: Box<dyn Write> = match &common.out {
            Some(path) => Box::new(
                File::create(path).map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", path.display())))?,
            ),
            None => Box::new(io::stdout().lock()),
        };
        let mut w = BufWriter::new(target);
        self.write_to(&mut w, common.format).map_err(|e| Error::Internal(format!("write failed: {e}")))
    }

    fn write_to<W: Write>(&self, w: &mut W, format: Format) -> io::Result<()> {
        match format {
            Format::Json => {
                for line in &self.lines {
                    serde_json::to_writer(&mut *w, line)?;
                    w.write_all(b"\n")?;
                }
                w.flush()
            }
            Format::Csv => {
                let mut csv = csv::Writer::from_writer(w);
                csv.write_record(&self.header)?;
                for row in &self.rows {
                    csv.write_record(row)?;
                }
                csv.flush()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_lines_and_csv() {
        let mut r = Report::new(vec!["a", "b"]);
        r.lines.push(serde_json::json!({"a": 1}));
        r.lines.push(serde_json::json!({"a": 2}));
        r.rows.push(vec!["1".into(), "x,y".into()]);
        let mut buf = Vec::new();
        r.write_to(&mut buf, Format::Json).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "{\"a\":1}\n{\"a\":2}\n");
        let mut buf = Vec::new();
        r.write_to(&mut buf, Format::Csv).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1,\"x,y\"\n");
    }
}
