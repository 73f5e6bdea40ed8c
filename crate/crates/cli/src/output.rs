//! CSV and JSON writers for simulation and sweep tables.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use nlc_core::CorrelationSample;
use serde::{Deserialize, Serialize};

use crate::config::{OutputFormat, STDOUT_PATH};
use crate::error::CliError;
use crate::runner::SweepRow;

pub const CSV_HEADER: &str = "t,lqfi,lqu,log_negativity,purity";
pub const SWEEP_CSV_HEADER: &str = "param,value,t,lqfi,lqu,log_negativity,purity";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub t: f64,
    pub lqfi: f64,
    pub lqu: f64,
    pub log_negativity: f64,
    pub purity: f64,
}

impl From<CorrelationSample> for SampleRecord {
    fn from(s: CorrelationSample) -> Self {
        Self {
            t: s.t,
            lqfi: s.lqfi,
            lqu: s.lqu,
            log_negativity: s.log_negativity,
            purity: s.purity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub param: String,
    pub value: f64,
    #[serde(flatten)]
    pub sample: SampleRecord,
}

impl From<&SweepRow> for SweepRecord {
    fn from(r: &SweepRow) -> Self {
        Self {
            param: r.param.clone(),
            value: r.value,
            sample: r.sample.into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Table<'a> {
    Simulation(&'a [CorrelationSample]),
    Sweep(&'a [SweepRow]),
}

/// Shortest round-trip decimal, with `-0` written as `0`.
fn number(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        x.to_string()
    }
}

fn csv_fields(s: &CorrelationSample) -> String {
    [s.t, s.lqfi, s.lqu, s.log_negativity, s.purity]
        .map(number)
        .join(",")
}

fn write_csv(table: Table<'_>, w: &mut impl Write) -> io::Result<()> {
    match table {
        Table::Simulation(rows) => {
            writeln!(w, "{CSV_HEADER}")?;
            for s in rows {
                writeln!(w, "{}", csv_fields(s))?;
            }
        }
        Table::Sweep(rows) => {
            writeln!(w, "{SWEEP_CSV_HEADER}")?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{}",
                    r.param,
                    number(r.value),
                    csv_fields(&r.sample)
                )?;
            }
        }
    }
    Ok(())
}

fn write_json(table: Table<'_>, w: &mut impl Write) -> io::Result<()> {
    match table {
        Table::Simulation(rows) => {
            let records: Vec<SampleRecord> = rows.iter().copied().map(Into::into).collect();
            serde_json::to_writer_pretty(&mut *w, &records)?;
        }
        Table::Sweep(rows) => {
            let records: Vec<SweepRecord> = rows.iter().map(Into::into).collect();
            serde_json::to_writer_pretty(&mut *w, &records)?;
        }
    }
    writeln!(w)
}

pub fn write_table(table: Table<'_>, format: OutputFormat, w: &mut impl Write) -> io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(table, w),
        OutputFormat::Json => write_json(table, w),
    }?;
    w.flush()
}

/// Writes the table to `path`, or to stdout when `path` is `-`.
pub fn emit(table: Table<'_>, format: OutputFormat, path: &str) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.into(),
        source,
    };
    if path == STDOUT_PATH {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        return write_table(table, format, &mut lock).map_err(io_err);
    }
    let file = File::create(Path::new(path)).map_err(io_err)?;
    write_table(table, format, &mut BufWriter::new(file)).map_err(io_err)
}

pub fn render(table: Table<'_>, format: OutputFormat) -> String {
    let mut buf = Vec::new();
    write_table(table, format, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(t: f64, lqfi: f64, lqu: f64, log_negativity: f64, purity: f64) -> CorrelationSample {
        CorrelationSample {
            t,
            lqfi,
            lqu,
            log_negativity,
            purity,
        }
    }

    #[test]
    fn single_trivial_row() {
        let rows = [sample(0.0, 0.0, 0.0, 0.0, 1.0)];
        assert_eq!(
            render(Table::Simulation(&rows), OutputFormat::Csv),
            "t,lqfi,lqu,log_negativity,purity\n0,0,0,0,1\n"
        );
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(
            render(Table::Simulation(&[]), OutputFormat::Csv),
            format!("{CSV_HEADER}\n")
        );
        assert_eq!(
            render(Table::Sweep(&[]), OutputFormat::Csv),
            format!("{SWEEP_CSV_HEADER}\n")
        );
        assert_eq!(
            render(Table::Simulation(&[]), OutputFormat::Json).trim(),
            "[]"
        );
    }

    #[test]
    fn negative_zero_and_full_precision() {
        let rows = [sample(-0.0, 0.1 + 0.2, 1.0 / 3.0, 1e-20, 0.25)];
        let csv = render(Table::Simulation(&rows), OutputFormat::Csv);
        let line = csv.lines().nth(1).unwrap();
        assert!(line.starts_with("0,0.30000000000000004,0.3333333333333333,"));
        let parsed: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(parsed, vec![0.0, 0.1 + 0.2, 1.0 / 3.0, 1e-20, 0.25]);
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn sweep_rows_carry_param_and_value() {
        let rows = [SweepRow {
            param: "dx+dy".into(),
            value: 0.5,
            sample: sample(1.0, 0.2, 0.1, 0.3, 0.9),
        }];
        let csv = render(Table::Sweep(&rows), OutputFormat::Csv);
        assert_eq!(csv.lines().nth(1), Some("dx+dy,0.5,1,0.2,0.1,0.3,0.9"));

        let json = render(Table::Sweep(&rows), OutputFormat::Json);
        let back: Vec<SweepRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![SweepRecord::from(&rows[0])]);
        let keys: serde_json::Value = serde_json::from_str(&json).unwrap();
        let obj = keys[0].as_object().unwrap();
        for k in [
            "param",
            "value",
            "t",
            "lqfi",
            "lqu",
            "log_negativity",
            "purity",
        ] {
            assert!(obj.contains_key(k), "{k}");
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let rows: Vec<_> = (0..50)
            .map(|k| {
                let x = k as f64 * 0.123456789012345;
                sample(
                    x,
                    x.sin().abs(),
                    (x * 0.7).cos().powi(2),
                    x.sqrt() / 7.0,
                    1.0 / (1.0 + x),
                )
            })
            .collect();
        let json = render(Table::Simulation(&rows), OutputFormat::Json);
        let back: Vec<SampleRecord> = serde_json::from_str(&json).unwrap();
        let expected: Vec<SampleRecord> = rows.iter().copied().map(Into::into).collect();
        assert_eq!(back, expected);
    }

    #[test]
    fn emit_to_unwritable_path_is_io_error() {
        let err = emit(
            Table::Simulation(&[]),
            OutputFormat::Csv,
            "/nonexistent-dir/x.csv",
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }
}
