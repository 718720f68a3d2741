//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use quadheight_core::{
    best_certificate, canonicalize, is_exceptional, lmin, mahler_measure, ratio_string, SquarefreeD,
};

use crate::census::{census_ratio, pair_failures};
use crate::error::{Error, Result};
use crate::scan::{scan_range, scan_to_csv, ResidueClass, ScanConfig, DEFAULT_BLOCK};
use crate::table::CsvSink;
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Decimal digits with an optional leading minus; no `+`, spaces or radix
/// prefixes.
fn decimal_i64(s: &str) -> std::result::Result<i64, String> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a decimal integer"));
    }
    s.parse().map_err(|_| format!("{s} is out of range"))
}

fn decimal_u64(s: &str) -> std::result::Result<u64, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a non-negative decimal integer"));
    }
    s.parse().map_err(|_| format!("{s} is out of range"))
}

fn positive_usize(s: &str) -> std::result::Result<usize, String> {
    match decimal_u64(s)? {
        0 => Err("must be positive".into()),
        n => usize::try_from(n).map_err(|_| format!("{s} is out of range")),
    }
}

fn squarefree(s: &str) -> std::result::Result<SquarefreeD, String> {
    let d = decimal_u64(s)?;
    SquarefreeD::new(d).map_err(|e| e.to_string())
}

fn threshold(s: &str) -> std::result::Result<String, String> {
    crate::census::parse_threshold(s).map(|_| s.to_string()).map_err(|e| e.to_string())
}

fn class(s: &str) -> std::result::Result<ResidueClass, String> {
    ResidueClass::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "quadheight", version, about = "Least Mahler measures in real quadratic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mahler measure of (a + b√d)/c.
    #[command(allow_negative_numbers = true)]
    Measure {
        #[arg(value_parser = decimal_i64)]
        a: i64,
        #[arg(value_parser = decimal_i64)]
        b: i64,
        #[arg(value_parser = decimal_i64)]
        c: i64,
        #[arg(value_parser = squarefree)]
        d: SquarefreeD,
    },
    /// L(d) with a minimizing witness.
    Lmin {
        #[arg(value_parser = squarefree)]
        d: SquarefreeD,
    },
    /// CSV of L(d) over a range of square-free d.
    Scan {
        #[arg(long, value_parser = decimal_u64)]
        from: u64,
        #[arg(long, value_parser = decimal_u64)]
        to: u64,
        /// Residue r mod 4, or r:m for d ≡ r mod m.
        #[arg(long, value_parser = class)]
        class: Option<ResidueClass>,
        #[arg(long, default_value = "1", value_parser = positive_usize)]
        workers: usize,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Checkpoint file; requires --out.
        #[arg(long, requires = "out")]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BLOCK, value_parser = decimal_u64)]
        block: u64,
        /// Stop after this many records, leaving the checkpoint behind.
        #[arg(long, hide = true, value_parser = decimal_u64)]
        halt_after: Option<u64>,
    },
    /// Square-free d whose ratio L(d)/√D exceeds a threshold.
    Census {
        #[arg(long, value_parser = decimal_u64)]
        from: u64,
        #[arg(long, value_parser = decimal_u64)]
        to: u64,
        #[arg(long, value_parser = threshold)]
        threshold: String,
        #[arg(long, default_value = "1", value_parser = positive_usize)]
        workers: usize,
    },
    /// Square-free d with no (a, c) pair.
    Pairs {
        #[arg(long, value_parser = decimal_u64)]
        from: u64,
        #[arg(long, value_parser = decimal_u64)]
        to: u64,
        /// Require c even with 2c | d − a² (d ≡ 1 mod 4 only).
        #[arg(long)]
        even: bool,
        #[arg(long, default_value = "1", value_parser = positive_usize)]
        workers: usize,
    },
    /// Best residue-based upper bound for L(d)/√D.
    Bounds {
        #[arg(value_parser = squarefree)]
        d: SquarefreeD,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value = "1", value_parser = positive_usize)]
        workers: usize,
    },
}

fn range_config(from: u64, to: u64, workers: usize) -> Result<ScanConfig> {
    let cfg = ScanConfig::new(from, to).workers(workers);
    cfg.validate()?;
    Ok(cfg)
}

/// Parses `args` (program name first) and runs the subcommand. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let text = e.to_string();
                    let line = text.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{line}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Usage(_) => EXIT_USAGE,
                ref e if e.is_io() => EXIT_IO,
                _ => EXIT_VERIFY,
            }
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Measure { a, b, c, d } => {
            let alpha = canonicalize(a, b, c, d).map_err(|e| Error::Usage(e.to_string()))?;
            let m = mahler_measure(&alpha);
            writeln!(out, "alpha = {alpha}")?;
            writeln!(out, "M = {} = {}", m.value, m.value.to_decimal(12))?;
            writeln!(out, "k = {}", m.k)?;
            writeln!(out, "poly = {}", m.poly_string())?;
        }
        Command::Lmin { d } => {
            let m = lmin(d);
            writeln!(out, "L = {}, ratio = {}, witness {}", m.value, ratio_string(&m.value), m.witness)?;
            writeln!(out, "k = {}, exceptional = {}", m.k, is_exceptional(d))?;
        }
        Command::Scan { from, to, class, workers, out: path, checkpoint, block, halt_after } => {
            let mut cfg = range_config(from, to, workers)?;
            cfg.class = class;
            cfg.checkpoint = checkpoint;
            cfg.halt_after = halt_after;
            cfg.block = block;
            cfg.validate()?;
            match path {
                Some(path) => {
                    scan_to_csv(&cfg, &path)?;
                }
                None => {
                    let mut sink = CsvSink::new(io::BufWriter::new(&mut *out))?;
                    scan_range(&cfg, &mut sink)?;
                    sink.into_inner()?.flush()?;
                }
            }
        }
        Command::Census { from, to, threshold, workers } => {
            range_config(from, to, workers)?;
            for d in census_ratio(from, to, &threshold, workers)? {
                writeln!(out, "{d}")?;
            }
        }
        Command::Pairs { from, to, even, workers } => {
            range_config(from, to, workers)?;
            for d in pair_failures(from, to, even, workers)? {
                writeln!(out, "{d}")?;
            }
        }
        Command::Bounds { d } => match best_certificate(d)? {
            None => writeln!(out, "no residue certificate applies to d={d}")?,
            Some(c) => {
                writeln!(out, "q = {} (r0 = {}, r = {})", c.q, c.r0, c.r)?;
                writeln!(out, "lambda = {} ({} branch)", c.lambda, c.branch)?;
                writeln!(out, "bound = {}", c.bound.to_decimal(12, quadheight_core::Rounding::Truncate))?;
                writeln!(out, "alpha1 = {}, M = {}", c.alpha1.witness, c.alpha1.value)?;
                writeln!(out, "alpha2 = {}, M = {}", c.alpha2.witness, c.alpha2.value)?;
                writeln!(out, "achieved = {}, ratio = {}", c.achieved.value, ratio_string(&c.achieved.value))?;
                writeln!(out, "L = {}, ratio = {}", c.lmin, ratio_string(&c.lmin))?;
            }
        },
        Command::Verify { suite, workers } => {
            let report = run_suite(suite, workers)?;
            for check in &report.checks {
                writeln!(out, "{check}")?;
            }
            let verdict = if report.passed() { "passed" } else { "FAILED" };
            writeln!(out, "suite {suite}: {verdict}")?;
            return Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY });
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("quadheight").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn integer_parsers() {
        assert_eq!(decimal_i64("-3"), Ok(-3));
        assert!(decimal_i64("+3").is_err());
        assert!(decimal_i64("0x10").is_err());
        assert!(decimal_u64("-1").is_err());
        assert!(decimal_u64(" 5").is_err());
        assert!(squarefree("12").unwrap_err().contains("2² divides"));
    }

    #[test]
    fn measure_golden_ratio() {
        let (code, out, _) = run_capture(&["measure", "1", "1", "2", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains("(1+√5)/2"));
        assert!(out.contains("k = 1"));
        assert!(out.contains("x²-x-1"));
    }

    #[test]
    fn lmin_line() {
        let (code, out, _) = run_capture(&["lmin", "293"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("L = 17, ratio = 0.993150604323, witness (15+√293)/2\n"));
    }

    #[test]
    fn usage_errors() {
        for args in [
            &["lmin", "12"][..],
            &["lmin", "abc"],
            &["frobnicate"],
            &["scan", "--from", "2"],
            &["census", "--from", "2", "--to", "10", "--threshold", "1.5"],
            &["scan", "--from", "2", "--to", "9", "--checkpoint", "x"],
            &["scan", "--from", "9", "--to", "2"],
            &["measure", "1", "0", "2", "5"],
        ] {
            let (code, out, err) = run_capture(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}");
            assert!(out.is_empty());
            assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        }
    }

    #[test]
    fn unwritable_output() {
        let (code, _, err) = run_capture(&["scan", "--from", "2", "--to", "10", "--out", "/nonexistent/dir/x.csv"]);
        assert_eq!(code, EXIT_IO);
        assert_eq!(err.lines().count(), 1);
    }
}
