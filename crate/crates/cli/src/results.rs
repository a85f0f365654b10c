//! Result CSV: one row per (point, method).
//!
//! Floats are written in shortest round-trip decimal form. With `hex`,
//! hexadecimal-float copies of every float column are appended and take
//! precedence when reading.

use std::io::{Read, Write};

use chebenclose::bench::{BenchReport, ResultRow};
use chebenclose::interval::numparse::{parse_f64_exact, to_hex};
use chebenclose::{EnclosureResult, Method, RealInterval, Status};

use crate::FormatError;

pub const HEADER: [&str; 9] = [
    "point_id",
    "x_inf",
    "x_sup",
    "method",
    "enc_inf",
    "enc_sup",
    "radius",
    "elapsed_ns",
    "status",
];
pub const HEX_HEADER: [&str; 5] = [
    "x_inf_hex",
    "x_sup_hex",
    "enc_inf_hex",
    "enc_sup_hex",
    "radius_hex",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CsvRow {
    pub point_id: usize,
    pub x: RealInterval,
    pub method: Method,
    pub value: RealInterval,
    pub radius: f64,
    pub elapsed_ns: u64,
    pub status: Status,
}

impl From<ResultRow> for CsvRow {
    fn from(r: ResultRow) -> Self {
        CsvRow {
            point_id: r.point_id,
            x: r.x,
            method: r.result.method,
            value: r.result.value,
            radius: r.result.radius(),
            elapsed_ns: r.result.elapsed_ns,
            status: r.result.status,
        }
    }
}

impl CsvRow {
    pub fn from_result(point_id: usize, x: RealInterval, result: &EnclosureResult) -> Self {
        ResultRow {
            point_id,
            x,
            result: *result,
        }
        .into()
    }
}

pub fn report_rows(report: &BenchReport) -> Vec<CsvRow> {
    report.rows().map(CsvRow::from).collect()
}

fn dec(v: f64) -> String {
    format!("{v:?}")
}

pub fn write_csv<W: Write>(rows: &[CsvRow], hex: bool, out: W) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = HEADER.to_vec();
    if hex {
        header.extend(HEX_HEADER);
    }
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.point_id.to_string(),
            dec(r.x.inf()),
            dec(r.x.sup()),
            r.method.as_str().to_string(),
            dec(r.value.inf()),
            dec(r.value.sup()),
            dec(r.radius),
            r.elapsed_ns.to_string(),
            r.status.as_str().to_string(),
        ];
        if hex {
            rec.extend([r.x.inf(), r.x.sup(), r.value.inf(), r.value.sup(), r.radius].map(to_hex));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>, FormatError> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let mut idx = Vec::with_capacity(HEADER.len());
    for name in HEADER {
        idx.push(
            col(name).ok_or_else(|| FormatError::Invalid(format!("missing column {name:?}")))?,
        );
    }
    let hex_idx: Option<Vec<usize>> = HEX_HEADER.iter().map(|n| col(n)).collect();

    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let bad = |m: String| FormatError::Line { line, message: m };
        let field = |c: usize| rec.get(c).ok_or_else(|| bad(format!("missing field {c}")));
        let float = |c: usize, is_hex: bool| -> Result<f64, FormatError> {
            let s = field(c)?;
            if is_hex {
                parse_f64_exact(s).map_err(|e| bad(e.to_string()))
            } else {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| bad(format!("{s:?}: {e}")))
            }
        };
        let (xi, xs, ei, es, rad) = match &hex_idx {
            Some(h) => (
                float(h[0], true)?,
                float(h[1], true)?,
                float(h[2], true)?,
                float(h[3], true)?,
                float(h[4], true)?,
            ),
            None => (
                float(idx[1], false)?,
                float(idx[2], false)?,
                float(idx[4], false)?,
                float(idx[5], false)?,
                float(idx[6], false)?,
            ),
        };
        let interval = |a: f64, b: f64| RealInterval::new(a, b).map_err(|e| bad(e.to_string()));
        rows.push(CsvRow {
            point_id: field(idx[0])?
                .trim()
                .parse()
                .map_err(|e| bad(format!("point_id: {e}")))?,
            x: interval(xi, xs)?,
            method: field(idx[3])?.parse().map_err(bad)?,
            value: interval(ei, es)?,
            radius: rad,
            elapsed_ns: field(idx[7])?
                .trim()
                .parse()
                .map_err(|e| bad(format!("elapsed_ns: {e}")))?,
            status: field(idx[8])?.parse().map_err(bad)?,
        });
    }
    Ok(rows)
}
