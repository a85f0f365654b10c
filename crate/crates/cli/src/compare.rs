use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use chebenclose::Method;

use crate::results::CsvRow;
use crate::FormatError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WinCount {
    pub a: usize,
    pub b: usize,
    pub ties: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub wins: BTreeMap<Method, WinCount>,
    /// Human-readable descriptions of rows whose status differs or that
    /// exist on one side only.
    pub mismatches: Vec<String>,
}

/// Compares two result sets keyed by `(point_id, method)`. A side wins a
/// row when its radius is strictly smaller.
pub fn compare(a: &[CsvRow], b: &[CsvRow]) -> Result<Comparison, FormatError> {
    let ids = |rows: &[CsvRow]| rows.iter().map(|r| r.point_id).collect::<BTreeSet<_>>();
    let (ids_a, ids_b) = (ids(a), ids(b));
    if ids_a != ids_b {
        let only_a = ids_a.difference(&ids_b).count();
        let only_b = ids_b.difference(&ids_a).count();
        return Err(FormatError::Invalid(format!(
            "point sets differ: {only_a} point ids only in the first file, {only_b} only in the second"
        )));
    }
    let key = |rows: &[CsvRow]| {
        rows.iter()
            .map(|r| ((r.point_id, r.method), *r))
            .collect::<BTreeMap<_, _>>()
    };
    let (map_a, map_b) = (key(a), key(b));

    let mut wins: BTreeMap<Method, WinCount> = BTreeMap::new();
    let mut mismatches = Vec::new();
    for (k, ra) in &map_a {
        let Some(rb) = map_b.get(k) else {
            mismatches.push(format!("point {} {}: only in first file", k.0, k.1));
            continue;
        };
        let w = wins.entry(k.1).or_default();
        if ra.radius < rb.radius {
            w.a += 1;
        } else if rb.radius < ra.radius {
            w.b += 1;
        } else {
            w.ties += 1;
        }
        if ra.status != rb.status {
            mismatches.push(format!(
                "point {} {}: {} vs {}",
                k.0, k.1, ra.status, rb.status
            ));
        }
    }
    for k in map_b.keys().filter(|k| !map_a.contains_key(k)) {
        mismatches.push(format!("point {} {}: only in second file", k.0, k.1));
    }
    Ok(Comparison { wins, mismatches })
}

impl Comparison {
    pub fn render(&self) -> String {
        let mut out = format!(
            "{:<20} {:>8} {:>8} {:>8}\n",
            "method", "wins_a", "wins_b", "ties"
        );
        for (m, w) in &self.wins {
            writeln!(
                out,
                "{:<20} {:>8} {:>8} {:>8}",
                m.as_str(),
                w.a,
                w.b,
                w.ties
            )
            .unwrap();
        }
        writeln!(out, "mismatches: {}", self.mismatches.len()).unwrap();
        for m in &self.mismatches {
            writeln!(out, "  {m}").unwrap();
        }
        out
    }
}
