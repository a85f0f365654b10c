//! Coefficient files.
//!
//! ```text
//! chebenclose-coeffs v1 3
//! m 0.5 1e-15
//! i -0x1p-2 -0x1p-2
//! m 0x1.8p-3 0
//! ```
//!
//! `m <mid> <rad>` is the interval `[mid - rad, mid + rad]`, `i <inf> <sup>`
//! gives endpoints directly. Numbers are decimal or hexadecimal floats;
//! decimals are enclosed outward, hexadecimal floats are bit-exact. Text
//! after `#` is a comment; blank lines are ignored.

use std::fmt::Write as _;

use chebenclose::interval::numparse::{literal_down, literal_up, to_hex};
use chebenclose::interval::round::{add_up, sub_down};
use chebenclose::{ChebExpansion, RealInterval};

use crate::FormatError;

pub const MAGIC: &str = "chebenclose-coeffs";
pub const VERSION: &str = "v1";

fn at(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

fn parse_line(line_no: usize, kind: &str, a: &str, b: &str) -> Result<RealInterval, FormatError> {
    let num = |f: fn(&str) -> Result<f64, chebenclose::IntervalError>, s: &str| {
        f(s).map_err(|e| at(line_no, e.to_string()))
    };
    match kind {
        "i" => {
            let inf = num(literal_down, a)?;
            let sup = num(literal_up, b)?;
            RealInterval::new(inf, sup).map_err(|e| at(line_no, e.to_string()))
        }
        "m" => {
            let (mid_lo, mid_hi) = (num(literal_down, a)?, num(literal_up, a)?);
            let rad = num(literal_up, b)?;
            if num(literal_down, b)? < 0.0 {
                return Err(at(line_no, "radius must be nonnegative"));
            }
            RealInterval::new(sub_down(mid_lo, rad), add_up(mid_hi, rad))
                .map_err(|e| at(line_no, e.to_string()))
        }
        other => Err(at(
            line_no,
            format!("unknown record kind {other:?}, expected 'm' or 'i'"),
        )),
    }
}

pub fn parse_coeff_file(text: &str) -> Result<ChebExpansion, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_once('#').map_or(l, |(code, _)| code).trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| at(1, "empty file, expected a header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let count = match fields.as_slice() {
        [magic, version, count] if *magic == MAGIC && *version == VERSION => count
            .parse::<usize>()
            .map_err(|_| at(header_no, format!("bad coefficient count {count:?}")))?,
        _ => {
            return Err(at(
                header_no,
                format!("malformed header, expected \"{MAGIC} {VERSION} <count>\""),
            ))
        }
    };
    if count == 0 {
        return Err(at(header_no, "coefficient count must be at least 1"));
    }

    let mut coeffs = Vec::with_capacity(count);
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [kind, a, b] = fields.as_slice() else {
            return Err(at(
                line_no,
                "expected three fields: <m|i> <number> <number>",
            ));
        };
        let c = parse_line(line_no, kind, a, b)?;
        if !c.is_finite() {
            return Err(at(line_no, "coefficient must be finite"));
        }
        coeffs.push(c);
        if coeffs.len() > count {
            return Err(at(
                line_no,
                format!("more coefficient lines than the declared {count}"),
            ));
        }
    }
    if coeffs.len() != count {
        return Err(FormatError::Count {
            declared: count,
            found: coeffs.len(),
        });
    }
    ChebExpansion::new(coeffs).map_err(|e| FormatError::Invalid(e.to_string()))
}

/// Serializes as `i` records. Hexadecimal output round-trips bit-exactly;
/// decimal output is the shortest round-trip form of each endpoint, which
/// re-reads as an enclosure of it.
pub fn write_coeff_file(p: &ChebExpansion, hex: bool) -> String {
    let mut out = format!("{MAGIC} {VERSION} {}\n", p.coeffs().len());
    for c in p.coeffs() {
        if hex {
            writeln!(out, "i {} {}", to_hex(c.inf()), to_hex(c.sup())).unwrap();
        } else {
            writeln!(out, "i {:?} {:?}", c.inf(), c.sup()).unwrap();
        }
    }
    out
}
