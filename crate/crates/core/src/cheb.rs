//! Enclosure methods for finite Chebyshev expansions `p(x) = Σ c_k T_k(x)`.
//!
//! Four methods share one interface:
//!
//! * [`eval_laurent_horner`] maps `x` onto the upper unit semicircle,
//!   `z = x + i√(1-x²)`, and runs Horner's rule on `Σ c_k z^k`; since
//!   `T_k(x) = Re z^k` on the circle, the real part of the result encloses
//!   `p(x)`.
//! * [`eval_clenshaw_interval`] is the Clenshaw recurrence run in real
//!   interval arithmetic. It suffers from the wrapping effect and its
//!   radius grows exponentially with the degree for most `x`.
//! * [`eval_ica_eig`] diagonalizes the Clenshaw step matrix and iterates
//!   in eigen-coordinates, paying for the (ill-conditioned near `±1`)
//!   eigenvector transformation on the way in and out.
//! * [`eval_recurrence_direct`] sums `c_k T_k(x)` with the three-term
//!   recurrence for `T_k`.
//!
//! The two complex methods iterate in midpoint-radius discs (see
//! [`ComplexBall`]).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexBall, ComplexInterval};
use crate::error::EvalError;
use crate::interval::RealInterval;

/// `Σ_{k=0}^{n} c_k T_k(x)` with interval coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChebExpansion {
    coeffs: Vec<RealInterval>,
}

impl ChebExpansion {
    pub fn new(coeffs: Vec<RealInterval>) -> Result<Self, EvalError> {
        if coeffs.is_empty() {
            return Err(EvalError::InvalidExpansion(
                "at least one coefficient is required".into(),
            ));
        }
        if let Some(k) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(EvalError::InvalidExpansion(format!(
                "coefficient {k} is not finite"
            )));
        }
        Ok(ChebExpansion { coeffs })
    }

    /// Thin coefficients.
    pub fn from_f64(coeffs: &[f64]) -> Result<Self, EvalError> {
        if let Some(k) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(EvalError::InvalidExpansion(format!(
                "coefficient {k} is not finite"
            )));
        }
        Self::new(coeffs.iter().map(|&c| RealInterval::point(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RealInterval] {
        &self.coeffs
    }

    pub fn midpoints(&self) -> Vec<f64> {
        self.coeffs.iter().map(RealInterval::midpoint).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    LaurentHorner,
    ClenshawInterval,
    IcaEig,
    RecurrenceDirect,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::LaurentHorner,
        Method::ClenshawInterval,
        Method::IcaEig,
        Method::RecurrenceDirect,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::LaurentHorner => "laurent_horner",
            Method::ClenshawInterval => "clenshaw_interval",
            Method::IcaEig => "ica_eig",
            Method::RecurrenceDirect => "recurrence_direct",
        }
    }

    /// Runs the method without timing.
    pub fn eval(&self, p: &ChebExpansion, x: &RealInterval) -> Result<RealInterval, EvalError> {
        match self {
            Method::LaurentHorner => eval_laurent_horner(p, x),
            Method::ClenshawInterval => Ok(eval_clenshaw_interval(p, x)),
            Method::IcaEig => eval_ica_eig(p, x),
            Method::RecurrenceDirect => Ok(eval_recurrence_direct(p, x)),
        }
    }

    /// Runs and times one evaluation; failures become a status.
    pub fn enclose(&self, p: &ChebExpansion, x: &RealInterval) -> EnclosureResult {
        let start = Instant::now();
        let out = self.eval(p, x);
        let elapsed_ns = start.elapsed().as_nanos() as u64;
        EnclosureResult::from_outcome(*self, out, elapsed_ns)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s.trim())
            .ok_or_else(|| format!("unknown method {s:?} (expected one of laurent_horner, clenshaw_interval, ica_eig, recurrence_direct)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// The eigenvector transformation was singular.
    Degenerate,
    /// The enclosure has an infinite endpoint.
    Unbounded,
    /// The point does not meet `[-1, 1]`.
    DomainError,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Degenerate => "degenerate",
            Status::Unbounded => "unbounded",
            Status::DomainError => "domain_error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "ok" => Ok(Status::Ok),
            "degenerate" => Ok(Status::Degenerate),
            "unbounded" => Ok(Status::Unbounded),
            "domain_error" => Ok(Status::DomainError),
            other => Err(format!("unknown status {other:?}")),
        }
    }
}

/// One evaluation outcome. Failed evaluations carry the whole real line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnclosureResult {
    pub method: Method,
    pub value: RealInterval,
    pub elapsed_ns: u64,
    pub status: Status,
}

impl EnclosureResult {
    pub fn from_outcome(
        method: Method,
        out: Result<RealInterval, EvalError>,
        elapsed_ns: u64,
    ) -> Self {
        let (value, status) = match out {
            Ok(v) if v.is_finite() => (v, Status::Ok),
            Ok(v) => (v, Status::Unbounded),
            Err(EvalError::EigDegenerate) => (RealInterval::ENTIRE, Status::Degenerate),
            Err(_) => (RealInterval::ENTIRE, Status::DomainError),
        };
        EnclosureResult {
            method,
            value,
            elapsed_ns,
            status,
        }
    }

    pub fn radius(&self) -> f64 {
        self.value.radius()
    }
}

/// Encloses `z = t + i√(1-t²)` for every `t ∈ x ∩ [-1, 1]` (upper branch).
pub fn to_unit_circle(x: &RealInterval) -> Result<ComplexInterval, EvalError> {
    let xc = x
        .intersect(&RealInterval::UNIT)
        .map_err(|_| EvalError::DomainError)?;
    // 1 - t² two ways; (1-t)(1+t) is far tighter for thin t near ±1.
    let direct = RealInterval::ONE - xc.sqr();
    let factored = (RealInterval::ONE - xc) * (RealInterval::ONE + xc);
    let one_minus_sq = direct
        .intersect(&factored)
        .and_then(|v| v.intersect(&RealInterval::new(0.0, 1.0)?))
        .unwrap_or(direct);
    let s = one_minus_sq.sqrt()?;
    let s = s.intersect(&RealInterval::new(0.0, 1.0)?).unwrap_or(s);
    Ok(ComplexInterval::new(xc, s))
}

/// Disc around `to_unit_circle(x)` whose center depends on the midpoint of
/// `x` alone. Ball centers are rounded to nearest, so a widening that moves
/// them can shift the result by a rounding step; anchoring them keeps
/// every midpoint-preserving widening of the inputs inclusion monotone.
fn unit_circle_ball(x: &RealInterval) -> Result<(ComplexBall, ComplexInterval), EvalError> {
    let rect = to_unit_circle(x)?;
    let t = x.midpoint().clamp(-1.0, 1.0);
    let s = ((1.0 - t) * (1.0 + t)).max(0.0).sqrt();
    Ok((ComplexBall::centered_on(t, s, &rect), rect))
}

/// The Horner accumulator `Σ c_k z^k` over the disc enclosing `z`.
pub fn laurent_horner_accumulator(
    p: &ChebExpansion,
    x: &RealInterval,
) -> Result<ComplexBall, EvalError> {
    let (z, _) = unit_circle_ball(x)?;
    let mut coeffs = p.coeffs().iter().rev();
    let lead = coeffs.next().expect("expansions are nonempty");
    let mut acc = ComplexBall::from_real(lead);
    for c in coeffs {
        acc = acc.mul_add(&z, &ComplexBall::from_real(c));
    }
    Ok(acc)
}

pub fn eval_laurent_horner(p: &ChebExpansion, x: &RealInterval) -> Result<RealInterval, EvalError> {
    Ok(laurent_horner_accumulator(p, x)?.real_part())
}

/// State `(b_{k}, b_{k+1})` of the Clenshaw recurrence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClenshawState {
    pub b_hi: RealInterval,
    pub b_lo: RealInterval,
}

impl ClenshawState {
    pub const ZERO: ClenshawState = ClenshawState {
        b_hi: RealInterval::ZERO,
        b_lo: RealInterval::ZERO,
    };

    /// `b_k = 2x b_{k+1} - b_{k+2} + c_k`.
    #[inline]
    pub fn step(&mut self, two_x: &RealInterval, c: &RealInterval) {
        let next = *two_x * self.b_hi - self.b_lo + *c;
        self.b_lo = self.b_hi;
        self.b_hi = next;
    }
}

pub fn eval_clenshaw_interval(p: &ChebExpansion, x: &RealInterval) -> RealInterval {
    let two_x = x.double();
    let mut state = ClenshawState::ZERO;
    for c in p.coeffs().iter().rev() {
        state.step(&two_x, c);
    }
    state.b_hi - *x * state.b_lo
}

/// The two eigen-coordinates of the Clenshaw state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformedState {
    pub v1: ComplexBall,
    pub v2: ComplexBall,
}

pub fn eval_ica_eig(p: &ChebExpansion, x: &RealInterval) -> Result<RealInterval, EvalError> {
    let (z, z_rect) = unit_circle_ball(x)?;
    let s = z_rect.im;
    if s.contains_zero() {
        return Err(EvalError::EigDegenerate);
    }
    // The scalar factor of V^{-1}, enclosed once.
    let inv_two_s = RealInterval::ONE.checked_div(&s.double())?;
    let inv_two_s_mid = 0.5 / z.im;
    let z_bar = z.conj();
    let mut state = TransformedState {
        v1: ComplexBall::ZERO,
        v2: ComplexBall::ZERO,
    };
    for c in p.coeffs().iter().rev() {
        // V^{-1} (c, 0)^T = (-i c / 2s, +i c / 2s).
        let w = *c * inv_two_s;
        let c2 = ComplexBall::centered_on(
            0.0,
            c.midpoint() * inv_two_s_mid,
            &ComplexInterval::new(RealInterval::ZERO, w),
        );
        let c1 = -c2;
        state.v1 = state.v1.mul_add(&z, &c1);
        state.v2 = state.v2.mul_add(&z_bar, &c2);
    }
    // p = [1, -x] V b̌_0 = i s (v1 - v2), whose real part is -s Im(v1 - v2).
    let d = state.v1 - state.v2;
    Ok(-(s * d.imag_part()))
}

pub fn eval_recurrence_direct(p: &ChebExpansion, x: &RealInterval) -> RealInterval {
    let c = p.coeffs();
    let mut sum = c[0];
    if c.len() == 1 {
        return sum;
    }
    let two_x = x.double();
    let mut t_prev = RealInterval::ONE;
    let mut t_cur = *x;
    sum = sum + c[1] * t_cur;
    for ck in &c[2..] {
        let t_next = two_x * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = t_next;
        sum = sum + *ck * t_cur;
    }
    sum
}

/// Plain floating-point Clenshaw on coefficient midpoints. Not validated.
pub fn eval_clenshaw_float(p: &ChebExpansion, x: f64) -> f64 {
    let two_x = 2.0 * x;
    let (mut b1, mut b2) = (0.0, 0.0);
    for c in p.coeffs().iter().rev() {
        let b0 = two_x * b1 - b2 + c.midpoint();
        b2 = b1;
        b1 = b0;
    }
    b1 - x * b2
}

/// 2-norm condition number of the eigenvector matrix of the Clenshaw step at `x`.
pub fn eigenvector_condition(x: f64) -> Result<f64, EvalError> {
    if x.is_nan() || x.abs() >= 1.0 {
        return Err(EvalError::DomainError);
    }
    let a = x.abs();
    Ok(((1.0 + a) / (1.0 - a)).sqrt())
}
