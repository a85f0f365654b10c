//! Complex enclosures.
//!
//! [`ComplexInterval`] is an axis-aligned rectangle built from two real
//! intervals. [`ComplexBall`] is a midpoint-radius disc. Long products
//! with unimodular factors go through balls: the axis-aligned hull of a
//! rotated rectangle grows by `|cos θ| + |sin θ|` per product, while a
//! disc rotated about the origin stays a disc of the same radius.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::interval::round::{add_up, mul_up, sqrt_up, sub_down, sub_up};
use crate::interval::RealInterval;

/// The rectangle `{a + bi : a ∈ re, b ∈ im}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexInterval {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexInterval {
    pub const ZERO: ComplexInterval = ComplexInterval {
        re: RealInterval::ZERO,
        im: RealInterval::ZERO,
    };

    pub fn new(re: RealInterval, im: RealInterval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn from_real(re: RealInterval) -> Self {
        ComplexInterval {
            re,
            im: RealInterval::ZERO,
        }
    }

    pub fn conj(&self) -> Self {
        ComplexInterval {
            re: self.re,
            im: -self.im,
        }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        ComplexInterval {
            re: -self.im,
            im: self.re,
        }
    }

    pub fn is_subset_of(&self, other: &ComplexInterval) -> bool {
        self.re.is_subset_of(&other.re) && self.im.is_subset_of(&other.im)
    }

    /// Enclosure of `|w|²` over the rectangle.
    pub fn abs_sqr(&self) -> RealInterval {
        self.re.sqr() + self.im.sqr()
    }
}

impl Add for ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: ComplexInterval) -> ComplexInterval {
        let (a, b) = (self, rhs);
        ComplexInterval {
            re: a.re * b.re - a.im * b.im,
            im: a.re * b.im + a.im * b.re,
        }
    }
}

/// The closed disc `{w : |w - center| <= radius}`.
///
/// `radius` is an upper bound kept with upward rounding; an infinite
/// radius or a non-finite center means no information.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexBall {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

/// Unit roundoff.
const U: f64 = 1.1102230246251565e-16; // 2^-53
/// Covers `(1 + U)^k` for the few dozen rounded operations behind one radius.
const INFLATE: f64 = 1.0000000000000142; // 1 + 2^-46
/// Covers the absolute rounding error of those operations under gradual underflow.
const ETA: f64 = 8.289046e-317; // 2^-1050
/// Squares of magnitudes outside `[2^-500, 2^500]` may underflow or overflow.
const HYPOT_SAFE_MIN: f64 = 3.054936363499605e-151;
const HYPOT_SAFE_MAX: f64 = 3.273390607896142e150;

/// Turns a nonnegative quantity computed with a handful of round-to-nearest
/// operations on exact nonnegative inputs into a guaranteed upper bound.
#[inline]
fn seal(rn: f64) -> f64 {
    add_up(mul_up(rn, INFLATE), ETA)
}

#[inline]
fn hypot_up(a: f64, b: f64) -> f64 {
    sqrt_up(add_up(mul_up(a, a), mul_up(b, b)))
}

/// `|a + bi|`, rounded to nearest; at most a few ulps below the exact
/// value, which the caller's [`seal`] absorbs.
#[inline]
fn hypot_rn(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else if (HYPOT_SAFE_MIN..=HYPOT_SAFE_MAX).contains(&m) {
        (a * a + b * b).sqrt()
    } else {
        hypot_up(a, b)
    }
}

impl ComplexBall {
    pub const ZERO: ComplexBall = ComplexBall {
        re: 0.0,
        im: 0.0,
        radius: 0.0,
    };

    pub fn new(re: f64, im: f64, radius: f64) -> Self {
        ComplexBall { re, im, radius }
    }

    pub fn from_real(x: &RealInterval) -> Self {
        Self::from_rect(&ComplexInterval::from_real(*x))
    }

    /// Smallest-center disc containing the rectangle (center at the rectangle midpoint).
    pub fn from_rect(r: &ComplexInterval) -> Self {
        if !(r.re.is_finite() && r.im.is_finite()) {
            return Self::unbounded();
        }
        let cr = r.re.midpoint();
        let ci = r.im.midpoint();
        let dr = sub_up(r.re.sup(), cr).max(sub_up(cr, r.re.inf()));
        let di = sub_up(r.im.sup(), ci).max(sub_up(ci, r.im.inf()));
        let radius = if di == 0.0 {
            dr
        } else if dr == 0.0 {
            di
        } else {
            hypot_up(dr, di)
        };
        ComplexBall {
            re: cr,
            im: ci,
            radius,
        }
    }

    /// Disc with the given center that contains the rectangle. The radius
    /// is monotone in the rectangle for a fixed center.
    pub fn centered_on(re: f64, im: f64, r: &ComplexInterval) -> Self {
        if !(re.is_finite() && im.is_finite() && r.re.is_finite() && r.im.is_finite()) {
            return Self::unbounded();
        }
        let dr = sub_up(r.re.sup(), re).max(sub_up(re, r.re.inf()));
        let di = sub_up(r.im.sup(), im).max(sub_up(im, r.im.inf()));
        Self::finish(re, im, hypot_up(dr, di))
    }

    pub fn unbounded() -> Self {
        ComplexBall {
            re: 0.0,
            im: 0.0,
            radius: f64::INFINITY,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.re.is_finite() && self.im.is_finite() && self.radius.is_finite()
    }

    /// Upper bound of `|w|` over the disc.
    pub fn mag(&self) -> f64 {
        add_up(hypot_up(self.re, self.im), self.radius)
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            re: self.re,
            im: -self.im,
            radius: self.radius,
        }
    }

    /// Multiplication by `i` is exact.
    pub fn mul_i(&self) -> Self {
        ComplexBall {
            re: -self.im,
            im: self.re,
            radius: self.radius,
        }
    }

    pub fn real_part(&self) -> RealInterval {
        if !self.is_bounded() {
            return RealInterval::ENTIRE;
        }
        RealInterval::new(sub_down(self.re, self.radius), add_up(self.re, self.radius))
            .unwrap_or(RealInterval::ENTIRE)
    }

    pub fn imag_part(&self) -> RealInterval {
        if !self.is_bounded() {
            return RealInterval::ENTIRE;
        }
        RealInterval::new(sub_down(self.im, self.radius), add_up(self.im, self.radius))
            .unwrap_or(RealInterval::ENTIRE)
    }

    /// Bounding rectangle.
    pub fn to_rect(&self) -> ComplexInterval {
        ComplexInterval::new(self.real_part(), self.imag_part())
    }

    /// Whether the point `re + i·im` lies in the disc (conservatively: may say
    /// false for points within rounding distance of the boundary).
    pub fn contains_point(&self, re: f64, im: f64) -> bool {
        if !self.is_bounded() {
            return true;
        }
        let dr = (sub_down(re, self.re), sub_up(re, self.re));
        let di = (sub_down(im, self.im), sub_up(im, self.im));
        let dr = dr.0.abs().max(dr.1.abs());
        let di = di.0.abs().max(di.1.abs());
        hypot_up(dr, di) <= self.radius
    }

    #[inline]
    fn finish(re: f64, im: f64, radius: f64) -> Self {
        let b = ComplexBall { re, im, radius };
        if b.is_bounded() {
            b
        } else {
            Self::unbounded()
        }
    }

    /// `self * rhs + addend`, the Horner step.
    pub fn mul_add(&self, rhs: &ComplexBall, addend: &ComplexBall) -> ComplexBall {
        (*self * *rhs) + *addend
    }
}

impl Add for ComplexBall {
    type Output = ComplexBall;
    fn add(self, rhs: ComplexBall) -> ComplexBall {
        let re = self.re + rhs.re;
        let im = self.im + rhs.im;
        // |fl(x + y) - (x + y)| <= U |fl(x + y)|
        let rounding = U * (re.abs() + im.abs());
        ComplexBall::finish(re, im, seal(self.radius + rhs.radius + rounding))
    }
}

impl Neg for ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall {
            re: -self.re,
            im: -self.im,
            radius: self.radius,
        }
    }
}

impl Sub for ComplexBall {
    type Output = ComplexBall;
    fn sub(self, rhs: ComplexBall) -> ComplexBall {
        self + (-rhs)
    }
}

impl Mul for ComplexBall {
    type Output = ComplexBall;
    fn mul(self, rhs: ComplexBall) -> ComplexBall {
        let (a, b) = (self, rhs);
        let (p1, p2) = (a.re * b.re, a.im * b.im);
        let (p3, p4) = (a.re * b.im, a.im * b.re);
        let re = p1 - p2;
        let im = p3 + p4;
        // Each product and each sum is off by at most U times its rounded value.
        let rounding = U * (p1.abs() + p2.abs() + re.abs() + p3.abs() + p4.abs() + im.abs());
        // |xy - ab| <= |a| rb + |b| ra + ra rb for x in B(a, ra), y in B(b, rb).
        let spread = if a.radius == 0.0 && b.radius == 0.0 {
            0.0
        } else {
            hypot_rn(a.re, a.im) * b.radius + hypot_rn(b.re, b.im) * a.radius + a.radius * b.radius
        };
        ComplexBall::finish(re, im, seal(spread + rounding))
    }
}
