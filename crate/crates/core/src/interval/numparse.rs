//! Exact parsing of numeric literals and bit-exact hexadecimal floats.
//!
//! Literals are read into exact rationals and then enclosed by the two
//! neighbouring binary64 values, so a decimal like `0.1` becomes a
//! one-ulp interval while `0.5` or `0x1.8p-1` stays thin.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::IntervalError;
use crate::interval::RealInterval;

/// Exponents beyond this are rejected instead of building huge integers.
const MAX_EXPONENT: i64 = 100_000;

/// An exactly parsed literal.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactValue {
    Finite(BigRational),
    PosInf,
    NegInf,
}

fn parse_err(s: &str, why: &str) -> IntervalError {
    IntervalError::Parse(format!("{why}: {s:?}"))
}

/// Parses a decimal (`-1.25e-3`) or hexadecimal-float (`0x1.4p-2`) literal exactly.
pub fn parse_exact(s: &str) -> Result<ExactValue, IntervalError> {
    let t = s.trim();
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let lower = body.to_ascii_lowercase();
    if lower == "inf" || lower == "infinity" {
        return Ok(if neg {
            ExactValue::NegInf
        } else {
            ExactValue::PosInf
        });
    }
    let mag = if let Some(hex) = lower.strip_prefix("0x") {
        parse_hex_body(hex).ok_or_else(|| parse_err(s, "malformed hexadecimal float"))?
    } else {
        parse_decimal_body(&lower).ok_or_else(|| parse_err(s, "malformed number"))?
    };
    Ok(ExactValue::Finite(if neg { -mag } else { mag }))
}

fn split_mantissa(body: &str, radix: u32, exp_char: char) -> Option<(BigInt, i64, i64)> {
    let (mant, exp) = match body.find(exp_char) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits: String = [int_part, frac_part].concat();
    if !digits.chars().all(|c| c.is_digit(radix)) {
        return None;
    }
    let m = BigInt::parse_bytes(digits.as_bytes(), radix)?;
    let e = match exp {
        Some(e) => {
            let e = e.strip_prefix('+').unwrap_or(e);
            if e.is_empty() || e.trim_start_matches('-').is_empty() {
                return None;
            }
            e.parse::<i64>().ok()?
        }
        None => 0,
    };
    if e.abs() > MAX_EXPONENT {
        return None;
    }
    Some((m, e, frac_part.len() as i64))
}

fn pow_ratio(base: u32, exp: i64) -> BigRational {
    let p = BigInt::from(base).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

fn parse_decimal_body(body: &str) -> Option<BigRational> {
    if body.starts_with('e') {
        return None;
    }
    let (m, e, frac_digits) = split_mantissa(body, 10, 'e')?;
    Some(BigRational::from_integer(m) * pow_ratio(10, e - frac_digits))
}

fn parse_hex_body(body: &str) -> Option<BigRational> {
    let (m, e, frac_digits) = split_mantissa(body, 16, 'p')?;
    Some(BigRational::from_integer(m) * pow_ratio(2, e - 4 * frac_digits))
}

/// Exact rational value of a finite double.
pub fn f64_to_rational(v: f64) -> BigRational {
    debug_assert!(v.is_finite());
    BigRational::from_float(v).unwrap_or_else(BigRational::zero)
}

/// The tightest binary64 pair `(lo, hi)` with `lo <= r <= hi`.
///
/// Values beyond the finite range saturate to `(MAX, inf)` or `(-inf, MIN)`.
pub fn enclose_rational(r: &BigRational) -> (f64, f64) {
    if r.is_zero() {
        return (0.0, 0.0);
    }
    let max = f64_to_rational(f64::MAX);
    if r.abs() > max {
        return if r.is_positive() {
            (f64::MAX, f64::INFINITY)
        } else {
            (f64::NEG_INFINITY, f64::MIN)
        };
    }
    let mut guess = r
        .to_f64()
        .filter(|v| v.is_finite())
        .unwrap_or(if r.is_positive() { f64::MAX } else { f64::MIN });
    // The library conversion is close; walk the last ulp or two exactly.
    loop {
        let g = f64_to_rational(guess);
        if &g > r {
            guess = guess.next_down();
        } else {
            break;
        }
    }
    loop {
        let next = guess.next_up();
        if next.is_finite() && &f64_to_rational(next) <= r {
            guess = next;
        } else {
            break;
        }
    }
    let lo = guess;
    if &f64_to_rational(lo) == r {
        (lo, lo)
    } else {
        (lo, lo.next_up())
    }
}

pub(crate) fn enclose_literal(s: &str) -> Result<RealInterval, IntervalError> {
    match parse_exact(s)? {
        ExactValue::Finite(r) => {
            let (lo, hi) = enclose_rational(&r);
            RealInterval::new(lo, hi)
        }
        _ => Err(parse_err(
            s,
            "a single literal cannot denote an infinite point",
        )),
    }
}

/// Lower binary64 bound of a literal; `-inf` is allowed.
pub fn literal_down(s: &str) -> Result<f64, IntervalError> {
    Ok(match parse_exact(s)? {
        ExactValue::Finite(r) => enclose_rational(&r).0,
        ExactValue::NegInf => f64::NEG_INFINITY,
        ExactValue::PosInf => return Err(parse_err(s, "+inf is not a valid lower bound")),
    })
}

/// Upper binary64 bound of a literal; `+inf` is allowed.
pub fn literal_up(s: &str) -> Result<f64, IntervalError> {
    Ok(match parse_exact(s)? {
        ExactValue::Finite(r) => enclose_rational(&r).1,
        ExactValue::PosInf => f64::INFINITY,
        ExactValue::NegInf => return Err(parse_err(s, "-inf is not a valid upper bound")),
    })
}

/// C99-style hexadecimal rendering (`-0x1.8p+1`, `0x0p+0`, `inf`).
pub fn to_hex(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let bits = v.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if biased == 0 && frac == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, exp) = if biased == 0 {
        (0, -1022)
    } else {
        (1, biased - 1023)
    };
    let mut out = String::new();
    write!(out, "{sign}0x{lead}").unwrap();
    if frac != 0 {
        let digits = format!("{frac:013x}");
        write!(out, ".{}", digits.trim_end_matches('0')).unwrap();
    }
    write!(out, "p{exp:+}").unwrap();
    out
}

/// Parses a literal that must denote exactly one binary64 value.
pub fn parse_f64_exact(s: &str) -> Result<f64, IntervalError> {
    match parse_exact(s)? {
        ExactValue::PosInf => Ok(f64::INFINITY),
        ExactValue::NegInf => Ok(f64::NEG_INFINITY),
        ExactValue::Finite(r) => {
            let (lo, hi) = enclose_rational(&r);
            if lo == hi {
                Ok(lo)
            } else {
                Err(parse_err(s, "not exactly representable as binary64"))
            }
        }
    }
}

/// Exact integer check used by tests of dyadic inputs.
pub fn is_dyadic(r: &BigRational) -> bool {
    let d: BigUint = r.denom().magnitude().clone();
    d.count_ones() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals_enclose() {
        let x = RealInterval::from_decimal_str("0.1").unwrap();
        assert_eq!(x.inf().next_up(), x.sup());
        assert!(x.contains(0.1));
        let x = RealInterval::from_decimal_str("0.5").unwrap();
        assert!(x.is_thin());
        let x = RealInterval::from_decimal_str("-2.5e-3").unwrap();
        assert!(x.contains(-2.5e-3) && x.sup() < 0.0);
        let x = RealInterval::from_decimal_str("1e400").unwrap();
        assert_eq!((x.inf(), x.sup()), (f64::MAX, f64::INFINITY));
    }

    #[test]
    fn hex_round_trip_special_values() {
        for v in [
            0.0,
            -0.0,
            1.0,
            -1.5,
            0.1,
            f64::MAX,
            f64::MIN_POSITIVE,
            5e-324,
            -3.7e-310,
        ] {
            let h = to_hex(v);
            let back = parse_f64_exact(&h).unwrap();
            assert_eq!(back, v, "{h}");
        }
        assert_eq!(to_hex(1.0), "0x1p+0");
        assert_eq!(to_hex(-1.5), "-0x1.8p+0");
        assert_eq!(to_hex(0.0), "0x0p+0");
        assert_eq!(parse_f64_exact("inf").unwrap(), f64::INFINITY);
    }

    #[test]
    fn malformed_literals_are_errors() {
        for s in [
            "",
            "abc",
            "1.2.3",
            "0x",
            "1e",
            "e5",
            "0x1.gp0",
            "1e99999999",
        ] {
            assert!(parse_exact(s).is_err(), "{s}");
        }
        assert!(parse_f64_exact("0.1").is_err());
        assert!(literal_down("inf").is_err());
        assert_eq!(literal_down("-inf").unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn dyadic_detection() {
        assert!(is_dyadic(&f64_to_rational(0.375)));
        match parse_exact("0.1").unwrap() {
            ExactValue::Finite(r) => assert!(!is_dyadic(&r)),
            _ => unreachable!(),
        }
    }
}
