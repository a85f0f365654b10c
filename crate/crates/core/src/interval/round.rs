//! Directed rounding on binary64 without touching the FPU control word.
//!
//! Each operation computes the round-to-nearest result and an exact
//! residual (two-sum, two-product, remainders). The residual sign says on
//! which side of the rounded value the exact result lies, so the bound
//! moves by one ulp only when the operation was inexact. Outside the range
//! where the residuals are exact (near underflow, or operands large enough
//! to overflow Dekker's split) the result is widened unconditionally.
//!
//! Infinite operands follow the endpoint conventions of inf-sup interval
//! arithmetic: `0 * inf = 0` and overflow saturates to `±inf` in the
//! outward direction only.

/// Below this magnitude product residuals may be rounded by gradual underflow.
const RESIDUAL_EXACT_MIN: f64 = 1.1830521861667747e-271; // 2^-900

/// Operands at or above this magnitude may overflow Dekker's split.
const SPLIT_SAFE_MAX: f64 = 6.696928794914171e299; // 2^996

/// Above this magnitude the two-sum intermediates may overflow.
const TWO_SUM_SAFE_MAX: f64 = 8.98846567431158e307; // 2^1023

/// `s = fl(a + b)` and the exact error `a + b - s` (Knuth's two-sum).
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, two_sum_err(a, b, s))
}

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[cfg(not(target_feature = "fma"))]
#[inline]
fn split(a: f64) -> (f64, f64) {
    const FACTOR: f64 = 134_217_729.0; // 2^27 + 1
    let c = FACTOR * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

/// `p = fl(a * b)` and the exact error `a * b - p`.
///
/// Exact when `|a|, |b| < 2^996` and `|p| >= 2^-900`; see [`product_is_exact_range`].
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    #[cfg(target_feature = "fma")]
    {
        (p, a.mul_add(b, -p))
    }
    #[cfg(not(target_feature = "fma"))]
    {
        let (ah, al) = split(a);
        let (bh, bl) = split(b);
        (p, al * bl - (((p - ah * bh) - al * bh) - ah * bl))
    }
}

/// Whether [`two_prod`] returns an exact residual for these operands.
#[inline]
pub fn product_is_exact_range(a: f64, b: f64, p: f64) -> bool {
    a.abs() < SPLIT_SAFE_MAX && b.abs() < SPLIT_SAFE_MAX && p.abs() >= RESIDUAL_EXACT_MIN
}

/// Lower bound used when the rounded value overflowed but the exact one is finite.
#[inline]
fn overflow_down(s: f64) -> f64 {
    if s > 0.0 {
        f64::MAX
    } else {
        f64::NEG_INFINITY
    }
}

#[inline]
fn overflow_up(s: f64) -> f64 {
    if s < 0.0 {
        f64::MIN
    } else {
        f64::INFINITY
    }
}

pub fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if a.is_finite() && b.is_finite() {
            overflow_down(s)
        } else {
            s
        };
    }
    if s.abs() >= TWO_SUM_SAFE_MAX {
        return s.next_down();
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

pub fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if a.is_finite() && b.is_finite() {
            overflow_up(s)
        } else {
            s
        };
    }
    if s.abs() >= TWO_SUM_SAFE_MAX {
        return s.next_up();
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

pub fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return if a.is_finite() && b.is_finite() {
            overflow_down(p)
        } else {
            p
        };
    }
    if !product_is_exact_range(a, b, p) {
        return p.next_down();
    }
    if two_prod(a, b).1 < 0.0 {
        p.next_down()
    } else {
        p
    }
}

pub fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return if a.is_finite() && b.is_finite() {
            overflow_up(p)
        } else {
            p
        };
    }
    if !product_is_exact_range(a, b, p) {
        return p.next_up();
    }
    if two_prod(a, b).1 > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// Sign of `a/b - q` where `q` is the rounded quotient; `None` if unknown.
#[inline]
fn quotient_residual_sign(a: f64, b: f64, q: f64) -> Option<f64> {
    if !b.is_finite() || a.abs() < RESIDUAL_EXACT_MIN {
        return None;
    }
    let (p, e) = two_prod(q, b);
    if !product_is_exact_range(q, b, p) {
        return None;
    }
    // a - p is exact: p is within a factor of two of a.
    let r = (a - p) - e;
    Some(if r == 0.0 {
        0.0
    } else {
        r.signum() * b.signum()
    })
}

/// `b` must be nonzero.
pub fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if q.is_nan() {
        return f64::NEG_INFINITY;
    }
    if !q.is_finite() {
        return if a.is_finite() && b.is_finite() {
            overflow_down(q)
        } else {
            q
        };
    }
    if b.is_infinite() {
        // finite / inf: the endpoint limit is zero.
        return 0.0;
    }
    match quotient_residual_sign(a, b, q) {
        Some(s) if s >= 0.0 => q,
        _ => q.next_down(),
    }
}

/// `b` must be nonzero.
pub fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if q.is_nan() {
        return f64::INFINITY;
    }
    if !q.is_finite() {
        return if a.is_finite() && b.is_finite() {
            overflow_up(q)
        } else {
            q
        };
    }
    if b.is_infinite() {
        return 0.0;
    }
    match quotient_residual_sign(a, b, q) {
        Some(s) if s <= 0.0 => q,
        _ => q.next_up(),
    }
}

/// `a` must be nonnegative.
pub fn sqrt_down(a: f64) -> f64 {
    if a <= 0.0 || a.is_infinite() {
        return a.max(0.0);
    }
    let s = a.sqrt();
    let (p, e) = two_prod(s, s);
    if !product_is_exact_range(s, s, p) {
        return s.next_down().max(0.0);
    }
    if (a - p) - e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

/// `a` must be nonnegative.
pub fn sqrt_up(a: f64) -> f64 {
    if a <= 0.0 || a.is_infinite() {
        return a.max(0.0);
    }
    let s = a.sqrt();
    let (p, e) = two_prod(s, s);
    if !product_is_exact_range(s, s, p) {
        return s.next_up();
    }
    if (a - p) - e > 0.0 {
        s.next_up()
    } else {
        s
    }
}
