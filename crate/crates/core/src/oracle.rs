//! Exact rational evaluation of Chebyshev expansions, the ground truth for
//! soundness checks.
//!
//! Inputs are expected to be dyadic rationals that are exactly
//! representable in binary64, so the floating-point methods and the
//! oracle see the same mathematical problem.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cheb::ChebExpansion;
use crate::error::OracleError;
use crate::interval::numparse::f64_to_rational;
use crate::interval::RealInterval;

pub type Rational = BigRational;

/// Default degree cap for exact tests.
pub const DEFAULT_DEGREE_CAP: usize = 64;
/// Hard degree cap.
pub const MAX_DEGREE_CAP: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub degree_cap: usize,
    /// Bound on numerator plus denominator bit length of any intermediate.
    pub max_bits: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            degree_cap: MAX_DEGREE_CAP,
            max_bits: 1 << 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalExpansion {
    coeffs: Vec<Rational>,
}

impl RationalExpansion {
    /// `coeffs` must be nonempty.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "expansion needs at least one coefficient"
        );
        RationalExpansion { coeffs }
    }

    pub fn from_f64(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| f64_to_rational(c)).collect())
    }

    /// Ratios of small integers, e.g. `&[(1, 4), (-1, 2)]`.
    pub fn from_ratios(coeffs: &[(i64, i64)]) -> Self {
        Self::new(coeffs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Thin interval expansion with the same values. Fails if some
    /// coefficient is not a binary64 value.
    pub fn to_interval_expansion(&self) -> Option<ChebExpansion> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| exact_f64(c).map(RealInterval::point))
            .collect::<Option<Vec<_>>>()?;
        ChebExpansion::new(coeffs).ok()
    }
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The binary64 value equal to `r`, if there is one.
pub fn exact_f64(r: &Rational) -> Option<f64> {
    let (lo, hi) = crate::interval::numparse::enclose_rational(r);
    (lo == hi && lo.is_finite()).then_some(lo)
}

fn bits(r: &Rational) -> u64 {
    r.numer().bits() + r.denom().bits()
}

fn check(r: &Rational, limits: &OracleLimits) -> Result<(), OracleError> {
    let b = bits(r);
    if b > limits.max_bits {
        return Err(OracleError::ResourceLimit {
            bits: b,
            limit: limits.max_bits,
        });
    }
    Ok(())
}

fn check_degree(p: &RationalExpansion, limits: &OracleLimits) -> Result<(), OracleError> {
    if p.degree() > limits.degree_cap {
        return Err(OracleError::DegreeTooLarge {
            degree: p.degree(),
            cap: limits.degree_cap,
        });
    }
    Ok(())
}

/// Exact `Σ c_k T_k(x)` by the Clenshaw recurrence, `p = b_0 - x b_1`.
pub fn exact_clenshaw(p: &RationalExpansion, x: &Rational) -> Result<Rational, OracleError> {
    exact_clenshaw_with(p, x, &OracleLimits::default())
}

pub fn exact_clenshaw_with(
    p: &RationalExpansion,
    x: &Rational,
    limits: &OracleLimits,
) -> Result<Rational, OracleError> {
    check_degree(p, limits)?;
    let two_x = x * BigInt::from(2);
    let mut b1 = Rational::zero();
    let mut b2 = Rational::zero();
    for c in p.coeffs.iter().rev() {
        let b0 = &two_x * &b1 - &b2 + c;
        check(&b0, limits)?;
        b2 = b1;
        b1 = b0;
    }
    Ok(b1 - x * b2)
}

/// Exact `Σ c_k T_k(x)` with `T_k` built by the three-term recurrence.
/// Independent of [`exact_clenshaw`]; used to cross-check it.
pub fn exact_direct(p: &RationalExpansion, x: &Rational) -> Result<Rational, OracleError> {
    let limits = OracleLimits::default();
    check_degree(p, &limits)?;
    let two_x = x * BigInt::from(2);
    let mut t_prev = Rational::one();
    let mut t_cur = x.clone();
    let mut sum = p.coeffs[0].clone();
    for (k, c) in p.coeffs.iter().enumerate().skip(1) {
        if k >= 2 {
            let t_next = &two_x * &t_cur - &t_prev;
            check(&t_next, &limits)?;
            t_prev = std::mem::replace(&mut t_cur, t_next);
        }
        sum += c * &t_cur;
    }
    Ok(sum)
}

/// Exact membership of a rational in an interval with binary64 endpoints.
pub fn interval_contains(enc: &RealInterval, v: &Rational) -> bool {
    let above_inf = enc.inf() == f64::NEG_INFINITY || &f64_to_rational(enc.inf()) <= v;
    let below_sup = enc.sup() == f64::INFINITY || v <= &f64_to_rational(enc.sup());
    above_inf && below_sup
}

/// Whether `enc` contains the exact value of `p` at `x`.
pub fn verify_enclosure(p: &RationalExpansion, x: &Rational, enc: &RealInterval) -> bool {
    match exact_clenshaw(p, x) {
        Ok(v) => interval_contains(enc, &v),
        Err(_) => false,
    }
}
