//! CSV output. Every file starts with `# config:` (the effective settings)
//! followed by a header line; floats are written with 17 significant digits
//! so they parse back to the same bits.

use std::io::Write;
use std::path::Path;

use fraclog_core::{Lyapunov, OrbitStatus, ScanRow};

use crate::error::CliError;

/// Formats a float with 17 significant digits.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub fn status_label(status: &OrbitStatus) -> &'static str {
    match status {
        OrbitStatus::Completed => "completed",
        OrbitStatus::Escaped { .. } => "escaped",
        OrbitStatus::DomainViolation { .. } => "domain_violation",
    }
}

pub fn lyapunov_field(l: &Lyapunov) -> String {
    match l {
        Lyapunov::Value(v) => num(*v),
        Lyapunov::Undefined => "undefined".to_string(),
    }
}

pub fn period_field(p: Option<usize>) -> String {
    p.map_or_else(|| "none".to_string(), |p| p.to_string())
}

/// A CSV file in memory: comment lines, a header and data lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: String,
    pub lines: Vec<String>,
}

impl Table {
    pub fn new(config: &str, header: &str) -> Self {
        Table {
            comments: vec![format!("config: {config}")],
            header: header.to_string(),
            lines: Vec::new(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.header);
        out.push('\n');
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

pub const SCAN_HEADER: &str = "param,period,lyapunov,status,samples";

pub fn scan_line(row: &ScanRow) -> String {
    let samples: Vec<String> = row.attractor_samples.iter().map(|&x| num(x)).collect();
    format!(
        "{},{},{},{},{}",
        num(row.param_value),
        period_field(row.period),
        lyapunov_field(&row.lyapunov),
        status_label(&row.orbit_status),
        samples.join(";")
    )
}

/// Bifurcation or alpha-slice table.
pub fn scan_table(rows: &[ScanRow], config: &str) -> Result<Table, CliError> {
    if rows.is_empty() {
        return Err(CliError::Usage {
            flag: "--steps".into(),
            message: "no rows to write".into(),
        });
    }
    let mut table = Table::new(config, SCAN_HEADER);
    table.lines = rows.iter().map(scan_line).collect();
    Ok(table)
}

/// Writes `rows` as a scan CSV at `path`.
pub fn emit_csv(rows: &[ScanRow], path: &Path, config: &str) -> Result<(), CliError> {
    write_atomic(path, &scan_table(rows, config)?.render())
}

/// Writes through a temporary file in the destination directory and renames
/// it into place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.flush().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// A scan row read back from CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedScanRow {
    pub param: f64,
    pub period: Option<usize>,
    pub lyapunov: Option<f64>,
    pub status: String,
    pub samples: Vec<f64>,
}

/// Parses a scan CSV produced by [`emit_csv`].
pub fn parse_scan_csv(text: &str) -> Result<Vec<ParsedScanRow>, String> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    match lines.next() {
        Some(h) if h == SCAN_HEADER => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(format!("expected 5 fields in {line:?}"));
            }
            let float = |s: &str| s.parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
            Ok(ParsedScanRow {
                param: float(fields[0])?,
                period: match fields[1] {
                    "none" => None,
                    p => Some(p.parse().map_err(|e| format!("{p:?}: {e}"))?),
                },
                lyapunov: match fields[2] {
                    "undefined" => None,
                    l => Some(float(l)?),
                },
                status: fields[3].to_string(),
                samples: if fields[4].is_empty() {
                    Vec::new()
                } else {
                    fields[4].split(';').map(float).collect::<Result<_, _>>()?
                },
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(period: Option<usize>, status: OrbitStatus, samples: Vec<f64>) -> ScanRow {
        ScanRow {
            param_value: 3.2,
            attractor_samples: samples,
            period,
            lyapunov: if status.is_completed() {
                Lyapunov::Value(-0.1)
            } else {
                Lyapunov::Undefined
            },
            orbit_status: status,
        }
    }

    #[test]
    fn period_two_row() {
        let r = row(Some(2), OrbitStatus::Completed, vec![0.513, 0.799]);
        let t = scan_table(&[r], "command=test").unwrap().render();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "# config: command=test");
        assert_eq!(lines[1], SCAN_HEADER);
        assert_eq!(lines.len(), 3);
        let fields: Vec<&str> = lines[2].split(',').collect();
        assert_eq!(fields[1], "2");
        assert_eq!(fields[3], "completed");
        assert_eq!(fields[4].split(';').count(), 2);
    }

    #[test]
    fn domain_violation_row() {
        let r = row(None, OrbitStatus::DomainViolation { step: 4 }, vec![]);
        let line = scan_line(&r);
        assert!(
            line.ends_with(",none,undefined,domain_violation,"),
            "{line}"
        );
    }

    #[test]
    fn empty_rows_rejected() {
        assert!(scan_table(&[], "x").is_err());
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(0.0), "0.0000000000000000e0");
        assert_eq!(num(f64::NAN), "nan");
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "a\n").unwrap();
        write_atomic(&path, "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn write_into_missing_directory_fails_cleanly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("out.csv");
        assert!(matches!(write_atomic(&path, "a"), Err(CliError::Io { .. })));
        assert!(!path.exists());
    }

    mod roundtrip {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn floats_roundtrip_bit_exact(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
                prop_assert_eq!(num(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
            }

            #[test]
            fn scan_rows_roundtrip(
                param in 0.0..10.0f64,
                samples in proptest::collection::vec(0.0..2.0f64, 0..20),
                lyap in -5.0..5.0f64,
            ) {
                let r = ScanRow {
                    param_value: param,
                    attractor_samples: samples.clone(),
                    period: None,
                    lyapunov: Lyapunov::Value(lyap),
                    orbit_status: OrbitStatus::Completed,
                };
                let parsed = parse_scan_csv(&scan_table(&[r], "c").unwrap().render()).unwrap();
                prop_assert_eq!(parsed[0].param.to_bits(), param.to_bits());
                prop_assert_eq!(parsed[0].lyapunov.unwrap().to_bits(), lyap.to_bits());
                let bits: Vec<u64> = parsed[0].samples.iter().map(|x| x.to_bits()).collect();
                let expect: Vec<u64> = samples.iter().map(|x| x.to_bits()).collect();
                prop_assert_eq!(bits, expect);
            }
        }
    }
}
