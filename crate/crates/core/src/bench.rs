//! Benchmark harness: synthetic expansions, random evaluation intervals,
//! per-method radii and timings, and aggregate metrics.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cheb::{ChebExpansion, EnclosureResult, Method, Status};
use crate::error::BenchError;
use crate::interval::RealInterval;

/// Midpoints with `|t|` above this count as boundary points.
pub const BOUNDARY_THRESHOLD: f64 = 0.99;

const COEFF_STREAM: u64 = 0;
const POINT_STREAM: u64 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub degree: usize,
    pub num_points: usize,
    /// Coefficient `k` has magnitude at most `decay_rho^-k`.
    pub decay_rho: f64,
    pub coeff_radius: f64,
    pub point_radius: f64,
    pub seed: u64,
    pub methods: Vec<Method>,
    /// Fraction of points whose midpoint satisfies `|t| > 0.99`.
    pub boundary_bias: f64,
    /// Timing repetitions per evaluation; the median is reported.
    pub repeats: usize,
    /// Worker cap; `None` uses the rayon default.
    pub threads: Option<usize>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            degree: 1024,
            num_points: 100,
            decay_rho: 1.01,
            coeff_radius: 0.0,
            point_radius: 0.0,
            seed: 0,
            methods: Method::ALL.to_vec(),
            boundary_bias: 0.1,
            repeats: 3,
            threads: None,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |msg: String| Err(BenchError::InvalidConfig(msg));
        if self.num_points == 0 {
            return bad("num_points must be at least 1".into());
        }
        if !(self.decay_rho.is_finite() && self.decay_rho > 1.0) {
            return bad(format!(
                "decay_rho must be a finite value > 1, got {}",
                self.decay_rho
            ));
        }
        if !(self.coeff_radius.is_finite() && self.coeff_radius >= 0.0) {
            return bad(format!(
                "coeff_radius must be finite and >= 0, got {}",
                self.coeff_radius
            ));
        }
        if !(self.point_radius.is_finite() && self.point_radius >= 0.0) {
            return bad(format!(
                "point_radius must be finite and >= 0, got {}",
                self.point_radius
            ));
        }
        if !(0.0..=1.0).contains(&self.boundary_bias) {
            return bad(format!(
                "boundary_bias must lie in [0, 1], got {}",
                self.boundary_bias
            ));
        }
        if self.methods.is_empty() {
            return bad("at least one method is required".into());
        }
        if self.repeats == 0 {
            return bad("repeats must be at least 1".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        Ok(())
    }

    /// Selected methods in canonical order, without duplicates.
    pub fn method_list(&self) -> Vec<Method> {
        let mut m = self.methods.clone();
        m.sort();
        m.dedup();
        m
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// `rho^-k`, rounded.
pub fn decay_bound(decay_rho: f64, k: usize) -> f64 {
    (-(k as f64) * decay_rho.ln()).exp()
}

/// Random smooth-function-like expansion: `c_k = u_k rho^-k`, `u_k ~ U[-1, 1]`,
/// each inflated to an interval of radius `coeff_radius`.
pub fn gen_decaying_coeffs(
    degree: usize,
    decay_rho: f64,
    coeff_radius: f64,
    seed: u64,
) -> ChebExpansion {
    assert!(decay_rho > 1.0, "decay_rho must exceed 1");
    assert!(
        coeff_radius >= 0.0 && coeff_radius.is_finite(),
        "coeff_radius must be finite and nonnegative"
    );
    let mut r = rng(seed, COEFF_STREAM);
    let coeffs = (0..=degree)
        .map(|k| {
            let u: f64 = r.gen_range(-1.0..=1.0);
            let mid = u * decay_bound(decay_rho, k);
            RealInterval::from_mid_rad(mid, coeff_radius).expect("finite midpoint and radius")
        })
        .collect();
    ChebExpansion::new(coeffs).expect("finite coefficients")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSample {
    /// Sampled center.
    pub t: f64,
    pub x: RealInterval,
}

/// Random evaluation intervals `[t - r, t + r] ∩ [-1, 1]`.
///
/// Exactly `ceil(boundary_bias * num_points)` of them have `|t| > 0.99`,
/// at seeded random positions in the sequence.
pub fn sample_points(
    num_points: usize,
    point_radius: f64,
    boundary_bias: f64,
    seed: u64,
) -> Vec<PointSample> {
    let mut r = rng(seed, POINT_STREAM);
    let n_boundary = ((boundary_bias * num_points as f64).ceil() as usize).min(num_points);
    let mut order: Vec<usize> = (0..num_points).collect();
    // Fisher-Yates on our own stream keeps the layout reproducible.
    for i in (1..num_points).rev() {
        let j = r.gen_range(0..=i);
        order.swap(i, j);
    }
    let mut is_boundary = vec![false; num_points];
    for &i in &order[..n_boundary] {
        is_boundary[i] = true;
    }
    is_boundary
        .into_iter()
        .map(|boundary| {
            let t = if boundary {
                loop {
                    let mag: f64 = r.gen_range(BOUNDARY_THRESHOLD..=1.0);
                    if mag > BOUNDARY_THRESHOLD {
                        break if r.gen::<bool>() { mag } else { -mag };
                    }
                }
            } else {
                r.gen_range(-1.0..=1.0)
            };
            let x = RealInterval::from_mid_rad(t, point_radius)
                .and_then(|x| x.intersect(&RealInterval::UNIT))
                .expect("t lies in [-1, 1]");
            PointSample { t, x }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DigitsSummary {
    /// `None` when every radius was excluded.
    pub mean: Option<f64>,
    pub included: usize,
    /// Zero, infinite or NaN radii.
    pub excluded: usize,
}

/// Mean of `-log10(radius)` over positive finite radii.
pub fn mean_correct_digits(radii: &[f64]) -> DigitsSummary {
    let digits: Vec<f64> = radii
        .iter()
        .filter(|r| r.is_finite() && **r > 0.0)
        .map(|r| -r.log10())
        .collect();
    let included = digits.len();
    let mean = (included > 0).then(|| digits.iter().sum::<f64>() / included as f64);
    DigitsSummary {
        mean,
        included,
        excluded: radii.len() - included,
    }
}

/// Median with infinities ordered last; mean of the middle pair for even counts.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * v[n / 2 - 1] + 0.5 * v[n / 2]
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub point_id: usize,
    pub x: RealInterval,
    pub results: Vec<EnclosureResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: Method,
    pub digits: DigitsSummary,
    pub median_radius: f64,
    pub total_seconds: f64,
    pub status_counts: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub points: Vec<PointRecord>,
    pub summaries: Vec<MethodSummary>,
}

/// One (point, method) row.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResultRow {
    pub point_id: usize,
    pub x: RealInterval,
    pub result: EnclosureResult,
}

impl BenchReport {
    pub fn rows(&self) -> impl Iterator<Item = ResultRow> + '_ {
        self.points.iter().flat_map(|p| {
            p.results.iter().map(move |r| ResultRow {
                point_id: p.point_id,
                x: p.x,
                result: *r,
            })
        })
    }

    pub fn radii(&self, method: Method) -> Vec<f64> {
        self.rows()
            .filter(|r| r.result.method == method)
            .map(|r| r.result.radius())
            .collect()
    }

    pub fn summary(&self, method: Method) -> Option<&MethodSummary> {
        self.summaries.iter().find(|s| s.method == method)
    }
}

fn timed_enclose(
    method: Method,
    p: &ChebExpansion,
    x: &RealInterval,
    repeats: usize,
) -> EnclosureResult {
    let mut runs: Vec<EnclosureResult> = (0..repeats).map(|_| method.enclose(p, x)).collect();
    let mut times: Vec<u64> = runs.iter().map(|r| r.elapsed_ns).collect();
    times.sort_unstable();
    let mut out = runs.swap_remove(0);
    out.elapsed_ns = times[times.len() / 2];
    out
}

pub fn summarize(method: Method, results: &[EnclosureResult]) -> MethodSummary {
    let radii: Vec<f64> = results.iter().map(EnclosureResult::radius).collect();
    let mut status_counts = BTreeMap::new();
    for r in results {
        *status_counts
            .entry(r.status.as_str().to_string())
            .or_insert(0) += 1;
    }
    MethodSummary {
        method,
        digits: mean_correct_digits(&radii),
        median_radius: median(&radii).unwrap_or(f64::NAN),
        total_seconds: results.iter().map(|r| r.elapsed_ns as f64).sum::<f64>() * 1e-9,
        status_counts,
    }
}

/// Evaluates every selected method at every sampled point.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchReport, BenchError> {
    config.validate()?;
    let methods = config.method_list();
    let p = gen_decaying_coeffs(
        config.degree,
        config.decay_rho,
        config.coeff_radius,
        config.seed,
    );
    let samples = sample_points(
        config.num_points,
        config.point_radius,
        config.boundary_bias,
        config.seed,
    );

    let work = || -> Vec<PointRecord> {
        samples
            .par_iter()
            .enumerate()
            .map(|(point_id, s)| PointRecord {
                point_id,
                x: s.x,
                results: methods
                    .iter()
                    .map(|&m| timed_enclose(m, &p, &s.x, config.repeats))
                    .collect(),
            })
            .collect()
    };
    let points = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| BenchError::InvalidConfig(format!("cannot start {n} workers: {e}")))?
            .install(work),
        None => work(),
    };

    let summaries = methods
        .iter()
        .map(|&m| {
            let results: Vec<EnclosureResult> = points
                .iter()
                .flat_map(|pt| pt.results.iter().filter(|r| r.method == m).copied())
                .collect();
            summarize(m, &results)
        })
        .collect();

    Ok(BenchReport {
        config: config.clone(),
        points,
        summaries,
    })
}

/// Count of results with the given status for one method.
pub fn status_count(report: &BenchReport, method: Method, status: Status) -> usize {
    report
        .rows()
        .filter(|r| r.result.method == method && r.result.status == status)
        .count()
}
