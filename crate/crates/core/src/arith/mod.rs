//! Exact arithmetic: reduced rationals, real quadratic irrationals, and
//! integer 2×2 matrices acting by linear fractional maps.

mod mat;
mod parse;
mod quad;
mod rational;
mod real;

pub use mat::Mat2;
pub use quad::{is_square, QuadIrr};
pub use rational::{rat, Parity, Rational};
pub use real::Real;

#[allow(unused_imports)]
pub(crate) use quad::{surd_floor, surd_sign};
