//! Odd-odd continued fractions: exact expansion, convergents, best odd/odd
//! approximation, and the links to regular and even-integer continued
//! fractions.
//!
//! Numbers are exact: reduced rationals or real quadratic irrationals
//! `(p + s·√d)/q`, both wrapped in [`Real`].
//!
//! ```
//! use oocf::{oocf::expand, Real};
//!
//! let x: Real = "(-1+sqrt(2))/1".parse().unwrap();
//! let e = expand(&x, 100).unwrap();
//! assert_eq!(e.digits.len(), 1);
//! assert_eq!(e.terminator.name(), "periodic");
//! ```

pub mod approx;
pub mod arith;
pub mod convergents;
pub mod error;
pub mod maps;
pub mod oocf;
pub mod rcf_bridge;

pub use arith::{rat, Mat2, Parity, QuadIrr, Rational, Real};
pub use error::{Error, Result};
