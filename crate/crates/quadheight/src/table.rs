//! CSV rendering of scan records.

use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::Path;

use quadheight_core::ScanRecord;

use crate::error::{Error, Result};

pub const HEADER: [&str; 11] = [
    "d",
    "dmod4",
    "D",
    "L_p",
    "L_q",
    "L_den",
    "ratio",
    "witness_a",
    "witness_c",
    "k",
    "exceptional",
];

pub fn row(rec: &ScanRecord) -> [String; 11] {
    [
        rec.d.to_string(),
        rec.dmod4.to_string(),
        rec.disc.to_string(),
        rec.l.p().to_string(),
        rec.l.q().to_string(),
        rec.l.den().to_string(),
        rec.ratio.clone(),
        rec.witness_a.to_string(),
        rec.witness_c.to_string(),
        rec.k.to_string(),
        rec.exceptional.to_string(),
    ]
}

/// Destination for records in ascending `d`.
pub trait RecordSink {
    fn write(&mut self, rec: &ScanRecord) -> Result<()>;

    /// Called after each completed block, before the checkpoint moves.
    fn flush(&mut self) -> Result<()> {
        Ok(())
    }
}

impl RecordSink for Vec<ScanRecord> {
    fn write(&mut self, rec: &ScanRecord) -> Result<()> {
        self.push(rec.clone());
        Ok(())
    }
}

/// Adapts a closure into a sink.
pub struct FnSink<F>(pub F);

impl<F: FnMut(&ScanRecord)> RecordSink for FnSink<F> {
    fn write(&mut self, rec: &ScanRecord) -> Result<()> {
        (self.0)(rec);
        Ok(())
    }
}

pub struct CsvSink<W: Write> {
    inner: csv::Writer<W>,
}

fn builder(header: bool) -> csv::WriterBuilder {
    let mut b = csv::WriterBuilder::new();
    b.terminator(csv::Terminator::Any(b'\n')).has_headers(header);
    b
}

impl<W: Write> CsvSink<W> {
    /// Starts a fresh table with the header row.
    pub fn new(out: W) -> Result<Self> {
        let mut inner = builder(true).from_writer(out);
        inner.write_record(HEADER)?;
        Ok(CsvSink { inner })
    }

    /// Continues an existing table.
    pub fn append(out: W) -> Self {
        CsvSink { inner: builder(false).from_writer(out) }
    }

    pub fn into_inner(self) -> Result<W> {
        self.inner.into_inner().map_err(|e| Error::Stream(e.into_error()))
    }
}

impl<W: Write> RecordSink for CsvSink<W> {
    fn write(&mut self, rec: &ScanRecord) -> Result<()> {
        self.inner.write_record(row(rec))?;
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

/// Drops every data row with `d > last` and returns the file opened for
/// appending. The header must be intact.
pub fn reopen_after(path: &Path, last: u64) -> Result<File> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(io::BufReader::new(file));
    let header_ok = reader.headers()?.iter().eq(HEADER.iter().copied());
    if !header_ok {
        return Err(Error::Checkpoint {
            path: path.to_path_buf(),
            reason: "existing CSV has an unexpected header".into(),
        });
    }
    let mut keep = reader.position().byte();
    let mut rec = csv::StringRecord::new();
    while reader.read_record(&mut rec)? {
        let d: u64 = rec.get(0).and_then(|s| s.parse().ok()).ok_or_else(|| Error::Checkpoint {
            path: path.to_path_buf(),
            reason: format!("bad d column on line {}", rec.position().map_or(0, |p| p.line())),
        })?;
        if d > last {
            break;
        }
        keep = reader.position().byte();
    }
    let file = OpenOptions::new().write(true).open(path).map_err(|e| Error::io(path, e))?;
    file.set_len(keep).map_err(|e| Error::io(path, e))?;
    let file = OpenOptions::new().append(true).open(path).map_err(|e| Error::io(path, e))?;
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadheight_core::{scan_record, PrimeTable, SquarefreeD};

    fn rec(d: u64) -> ScanRecord {
        scan_record(SquarefreeD::new(d).unwrap(), &PrimeTable::up_to(100))
    }

    #[test]
    fn renders_header_and_rows() {
        let mut sink = CsvSink::new(Vec::new()).unwrap();
        sink.write(&rec(293)).unwrap();
        sink.write(&rec(398)).unwrap();
        let text = String::from_utf8(sink.into_inner().unwrap()).unwrap();
        assert_eq!(
            text,
            "d,dmod4,D,L_p,L_q,L_den,ratio,witness_a,witness_c,k,exceptional\n\
             293,1,293,17,0,1,0.993150604323,15,2,1,true\n\
             398,2,1592,18,1,1,0.951129236405,18,2,2,true\n"
        );
    }

    #[test]
    fn truncates_partial_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let mut sink = CsvSink::new(File::create(&path).unwrap()).unwrap();
        for d in [2, 3, 5, 6, 7] {
            sink.write(&rec(d)).unwrap();
        }
        sink.flush().unwrap();
        drop(sink);
        let f = reopen_after(&path, 5).unwrap();
        let mut sink = CsvSink::append(f);
        sink.write(&rec(6)).unwrap();
        sink.flush().unwrap();
        drop(sink);
        let text = std::fs::read_to_string(&path).unwrap();
        let ds: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(ds, ["2", "3", "5", "6"]);
    }
}
