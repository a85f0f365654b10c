//! Validated enclosures of finite Chebyshev expansions.
//!
//! The crate provides outward-rounded real and complex interval
//! arithmetic ([`interval`], [`complex`]), four enclosure methods
//! ([`cheb`]), an exact rational evaluator for ground truth ([`oracle`])
//! and a benchmark harness ([`bench`]).
//!
//! ```
//! use chebenclose::{ChebExpansion, RealInterval, eval_laurent_horner};
//!
//! // 0.25 T_0 - 0.5 T_1 + 0.125 T_2 at x = 0.3
//! let p = ChebExpansion::from_f64(&[0.25, -0.5, 0.125]).unwrap();
//! let x = RealInterval::from_decimal_str("0.3").unwrap();
//! let enc = eval_laurent_horner(&p, &x).unwrap();
//! assert!(enc.contains(-0.0025));
//! ```

pub mod bench;
pub mod cheb;
pub mod complex;
pub mod error;
pub mod interval;
pub mod oracle;

pub use cheb::{
    eigenvector_condition, eval_clenshaw_float, eval_clenshaw_interval, eval_ica_eig,
    eval_laurent_horner, eval_recurrence_direct, to_unit_circle, ChebExpansion, EnclosureResult,
    Method, Status,
};
pub use complex::{ComplexBall, ComplexInterval};
pub use error::{BenchError, EvalError, IntervalError, OracleError};
pub use interval::RealInterval;
