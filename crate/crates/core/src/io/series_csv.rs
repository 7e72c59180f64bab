use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::diagnostics::NormSeries;
use crate::error::{Error, Result};

/// Seventeen significant digits: enough for every `f64` to parse back exactly.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn series_to_writer<W: Write>(series: &NormSeries, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["time".to_string()];
    header.extend(series.columns().iter().cloned());
    out.write_record(&header).map_err(csv_io)?;
    for (t, row) in series.times().iter().zip(series.rows()) {
        let mut rec = vec![format_f64(*t)];
        rec.extend(row.iter().map(|&v| format_f64(v)));
        out.write_record(&rec).map_err(csv_io)?;
    }
    out.flush()?;
    Ok(())
}

pub fn series_from_reader<R: Read>(r: R, origin: &str) -> Result<NormSeries> {
    let bad = |detail: String| Error::Format { path: origin.to_string(), detail };
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let header = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.get(0) != Some("time") {
        return Err(bad("first column must be `time`".into()));
    }
    let mut series = NormSeries::new(header.iter().skip(1).map(String::from).collect());
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| bad(format!("row {}: {e}", row + 1)))?;
        let mut vals = Vec::with_capacity(rec.len());
        for (col, field) in rec.iter().enumerate() {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| bad(format!("row {}, column {} (`{}`): not a number: {field:?}", row + 1, col + 1, &header[col])))?;
            vals.push(v);
        }
        let t = vals.remove(0);
        series.push(t, vals).map_err(|e| bad(format!("row {}: {e}", row + 1)))?;
    }
    Ok(series)
}

pub fn write_series(series: &NormSeries, path: &Path) -> Result<()> {
    series_to_writer(series, File::create(path)?)
}

pub fn read_series(path: &Path) -> Result<NormSeries> {
    series_from_reader(File::open(path)?, &path.display().to_string())
}

/// Writes a header and string rows as CSV.
pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut out = csv::Writer::from_writer(File::create(path)?);
    out.write_record(header).map_err(csv_io)?;
    for r in rows {
        out.write_record(r).map_err(csv_io)?;
    }
    out.flush()?;
    Ok(())
}

fn csv_io(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_series_is_header_only() {
        let s = NormSeries::new(vec!["x".into(), "y".into()]);
        let mut buf = Vec::new();
        series_to_writer(&s, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "time,x,y\n");
    }

    #[test]
    fn awkward_values_roundtrip() {
        let mut s = NormSeries::new(vec!["x".into()]);
        let vals = [0.1, 1.0 / 3.0, f64::MIN_POSITIVE, 5e-324, f64::MAX, -0.0, 1e300];
        for (k, &v) in vals.iter().enumerate() {
            s.push(k as f64 + 0.1, vec![v]).unwrap();
        }
        let mut buf = Vec::new();
        series_to_writer(&s, &mut buf).unwrap();
        let back = series_from_reader(buf.as_slice(), "mem").unwrap();
        for (a, b) in back.rows().iter().zip(s.rows()) {
            assert_eq!(a[0].to_bits(), b[0].to_bits());
        }
    }

    #[test]
    fn malformed_cell_located() {
        let text = "time,x\n0.0,1.0\n1.0,abc\n";
        let err = series_from_reader(text.as_bytes(), "mem").unwrap_err().to_string();
        assert!(err.contains("row 2") && err.contains("column 2"), "{err}");
    }
}
