//! Inf-sup real intervals with outward rounding.

pub mod numparse;
pub mod round;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::IntervalError;
use round::{
    add_down, add_up, div_down, div_up, mul_down, mul_up, sqrt_down, sqrt_up, sub_down, sub_up,
};

/// A closed interval `[inf, sup]` of binary64 endpoints.
///
/// Endpoints are never NaN and `inf <= sup`. An endpoint may be infinite
/// after overflow saturation, but `inf` is never `+inf` and `sup` is never
/// `-inf`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealInterval {
    inf: f64,
    sup: f64,
}

impl RealInterval {
    pub const ZERO: RealInterval = RealInterval { inf: 0.0, sup: 0.0 };
    pub const ONE: RealInterval = RealInterval { inf: 1.0, sup: 1.0 };
    /// `[-1, 1]`, the domain of the Chebyshev polynomials.
    pub const UNIT: RealInterval = RealInterval {
        inf: -1.0,
        sup: 1.0,
    };
    pub const ENTIRE: RealInterval = RealInterval {
        inf: f64::NEG_INFINITY,
        sup: f64::INFINITY,
    };

    pub fn new(inf: f64, sup: f64) -> Result<Self, IntervalError> {
        if inf.is_nan()
            || sup.is_nan()
            || inf > sup
            || inf == f64::INFINITY
            || sup == f64::NEG_INFINITY
        {
            return Err(IntervalError::InvalidEndpoints { inf, sup });
        }
        Ok(Self::from_bounds(inf, sup))
    }

    /// The thin interval `[v, v]`. Panics if `v` is not finite.
    pub fn point(v: f64) -> Self {
        assert!(v.is_finite(), "thin interval needs a finite value, got {v}");
        Self::from_bounds(v, v)
    }

    /// `[mid - rad, mid + rad]`, rounded outward. `rad` must be nonnegative.
    pub fn from_mid_rad(mid: f64, rad: f64) -> Result<Self, IntervalError> {
        if !mid.is_finite() || rad.is_nan() || rad < 0.0 {
            return Err(IntervalError::InvalidEndpoints { inf: mid, sup: rad });
        }
        Ok(Self::from_bounds(sub_down(mid, rad), add_up(mid, rad)))
    }

    /// Encloses the exact value of a decimal or hexadecimal-float literal.
    pub fn from_decimal_str(s: &str) -> Result<Self, IntervalError> {
        numparse::enclose_literal(s)
    }

    /// Normalizes `-0.0` endpoints; callers guarantee ordering.
    #[inline]
    fn from_bounds(inf: f64, sup: f64) -> Self {
        debug_assert!(inf <= sup, "[{inf}, {sup}]");
        RealInterval {
            inf: inf + 0.0,
            sup: sup + 0.0,
        }
    }

    /// Rebuilds an interval from raw endpoint results, falling back to
    /// the whole line if an indeterminate form slipped through.
    #[inline]
    fn from_raw(inf: f64, sup: f64) -> Self {
        let inf = if inf.is_nan() || inf == f64::INFINITY {
            f64::NEG_INFINITY
        } else {
            inf
        };
        let sup = if sup.is_nan() || sup == f64::NEG_INFINITY {
            f64::INFINITY
        } else {
            sup
        };
        Self::from_bounds(inf, sup)
    }

    #[inline]
    pub fn inf(&self) -> f64 {
        self.inf
    }

    #[inline]
    pub fn sup(&self) -> f64 {
        self.sup
    }

    pub fn is_finite(&self) -> bool {
        self.inf.is_finite() && self.sup.is_finite()
    }

    pub fn is_thin(&self) -> bool {
        self.inf == self.sup
    }

    /// `inf <= v <= sup`, compared exactly.
    pub fn contains(&self, v: f64) -> bool {
        self.inf <= v && v <= self.sup
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset_of(&self, other: &RealInterval) -> bool {
        other.inf <= self.inf && self.sup <= other.sup
    }

    /// Half-width, rounded upward.
    pub fn radius(&self) -> f64 {
        if !self.is_finite() {
            return f64::INFINITY;
        }
        // Halving is exact unless the difference is subnormal.
        let w = sub_up(self.sup, self.inf);
        let h = w * 0.5;
        if h * 2.0 == w {
            h
        } else {
            h.next_up()
        }
    }

    /// Rounded midpoint; always inside the interval.
    pub fn midpoint(&self) -> f64 {
        match (self.inf.is_finite(), self.sup.is_finite()) {
            (true, true) => {
                let m = 0.5 * self.inf + 0.5 * self.sup;
                m.clamp(self.inf, self.sup)
            }
            (false, true) => self.sup.min(f64::MIN),
            (true, false) => self.inf.max(f64::MAX),
            (false, false) => 0.0,
        }
    }

    /// Largest absolute value of any member.
    pub fn mag(&self) -> f64 {
        self.inf.abs().max(self.sup.abs())
    }

    pub fn intersect(&self, other: &RealInterval) -> Result<RealInterval, IntervalError> {
        let inf = self.inf.max(other.inf);
        let sup = self.sup.min(other.sup);
        if inf > sup {
            return Err(IntervalError::EmptyIntersection);
        }
        Ok(Self::from_bounds(inf, sup))
    }

    pub fn hull(&self, other: &RealInterval) -> RealInterval {
        Self::from_bounds(self.inf.min(other.inf), self.sup.max(other.sup))
    }

    pub fn checked_div(&self, rhs: &RealInterval) -> Result<RealInterval, IntervalError> {
        if rhs.contains_zero() {
            return Err(IntervalError::DivisionByZeroInterval);
        }
        let a = self;
        let b = rhs;
        let lo = div_down(a.inf, b.inf)
            .min(div_down(a.inf, b.sup))
            .min(div_down(a.sup, b.inf))
            .min(div_down(a.sup, b.sup));
        let hi = div_up(a.inf, b.inf)
            .max(div_up(a.inf, b.sup))
            .max(div_up(a.sup, b.inf))
            .max(div_up(a.sup, b.sup));
        Ok(Self::from_raw(lo, hi))
    }

    /// Square root with any negative part of the argument clamped to zero.
    pub fn sqrt(&self) -> Result<RealInterval, IntervalError> {
        if self.sup < 0.0 {
            return Err(IntervalError::NegativeSqrt);
        }
        Ok(Self::from_bounds(
            sqrt_down(self.inf.max(0.0)),
            sqrt_up(self.sup),
        ))
    }

    /// `{v² : v ∈ self}`, tighter than `self * self`.
    pub fn sqr(&self) -> RealInterval {
        let lo_abs = if self.contains_zero() {
            0.0
        } else {
            self.inf.abs().min(self.sup.abs())
        };
        let hi_abs = self.mag();
        Self::from_bounds(mul_down(lo_abs, lo_abs), mul_up(hi_abs, hi_abs))
    }

    /// Multiplication by two is exact up to overflow.
    pub fn double(&self) -> RealInterval {
        Self::from_raw(mul_down(self.inf, 2.0), mul_up(self.sup, 2.0))
    }
}

impl Default for RealInterval {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for RealInterval {
    fn from(v: f64) -> Self {
        Self::point(v)
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.inf, self.sup)
    }
}

impl Neg for RealInterval {
    type Output = RealInterval;
    fn neg(self) -> RealInterval {
        Self::from_bounds(-self.sup, -self.inf)
    }
}

impl Add for RealInterval {
    type Output = RealInterval;
    fn add(self, rhs: RealInterval) -> RealInterval {
        Self::from_raw(add_down(self.inf, rhs.inf), add_up(self.sup, rhs.sup))
    }
}

impl Sub for RealInterval {
    type Output = RealInterval;
    fn sub(self, rhs: RealInterval) -> RealInterval {
        Self::from_raw(sub_down(self.inf, rhs.sup), sub_up(self.sup, rhs.inf))
    }
}

impl Mul for RealInterval {
    type Output = RealInterval;
    fn mul(self, rhs: RealInterval) -> RealInterval {
        let (a, b) = (self, rhs);
        let lo = mul_down(a.inf, b.inf)
            .min(mul_down(a.inf, b.sup))
            .min(mul_down(a.sup, b.inf))
            .min(mul_down(a.sup, b.sup));
        let hi = mul_up(a.inf, b.inf)
            .max(mul_up(a.inf, b.sup))
            .max(mul_up(a.sup, b.inf))
            .max(mul_up(a.sup, b.sup));
        Self::from_raw(lo, hi)
    }
}
