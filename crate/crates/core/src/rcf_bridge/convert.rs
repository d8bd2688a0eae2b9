//! Streaming conversion of RCF digits into canonical OOCF digits.
//!
//! Writing `x = [0; d₁, d₂, τ]`:
//!
//! * `d₁ ≥ 3`: emit `(2,−1)` and continue with `[0; d₁−2, d₂, …]`;
//! * `d₁ = 2`: emit `(1,1)` and continue with `[0; d₂, …]`;
//! * `d₁ = 1`, `τ ∈ [1/2, 1)`: emit `(d₂+1, 1)` and continue with `(1−τ)/τ`;
//! * `d₁ = 1`, `τ ∈ [0, 1/2)`: emit `(d₂+2, −1)` and continue with `τ/(1−τ)`.
//!
//! The end of the stream needs care so that ties land where the half-open
//! partition puts them: `[0; 3]` reads `(1,1)` and `[0; 2]` reads `(3,−1)`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::One;

use super::rcf::RcfExpansion;
use crate::error::{Error, Result};
use crate::oocf::{Expansion, OocfDigit, OocfExpansion, Terminator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Poll {
    Digit(OocfDigit),
    /// The next digit depends on input not yet pushed.
    NeedMore,
    /// The expansion is complete.
    End(Terminator),
}

/// Push RCF digits in, poll OOCF digits out. Call [`finish`](Self::finish)
/// once the input is complete.
#[derive(Clone, Debug, Default)]
pub struct RcfToOocf {
    pending: VecDeque<BigInt>,
    closed: bool,
    done: bool,
}

impl RcfToOocf {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, d: BigInt) -> Result<()> {
        if self.closed {
            return Err(Error::InvalidArgument("input already finished".into()));
        }
        if d < BigInt::one() {
            return Err(Error::MalformedExpansion(format!(
                "continued fraction digit {d} is not positive"
            )));
        }
        self.pending.push_back(d);
        Ok(())
    }

    /// Marks the input complete, folding a trailing `…, d, 1` into `…, d+1`.
    pub fn finish(&mut self) {
        if !self.closed && self.pending.len() > 1 && self.pending.back().unwrap() == &BigInt::one() {
            self.pending.pop_back();
            *self.pending.back_mut().unwrap() += 1u32;
        }
        self.closed = true;
    }

    /// `Some(true)` with `n` digits buffered, `Some(false)` when the input
    /// ended short of `n`, `None` while that is still open.
    fn have(&self, n: usize) -> Option<bool> {
        if self.pending.len() >= n {
            Some(true)
        } else if self.closed {
            Some(false)
        } else {
            None
        }
    }

    fn emit(a: BigInt, eps: i8) -> Result<Poll> {
        Ok(Poll::Digit(OocfDigit::new(a, eps)?))
    }

    pub fn poll(&mut self) -> Result<Poll> {
        if self.done {
            return Err(Error::InvalidArgument("expansion already ended".into()));
        }
        let poll = self.step()?;
        if let Poll::End(_) = poll {
            self.done = true;
        }
        Ok(poll)
    }

    fn step(&mut self) -> Result<Poll> {
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        let Some(has_d1) = self.have(1) else {
            return Ok(Poll::NeedMore);
        };
        if !has_d1 {
            // x = 0
            return Ok(Poll::End(Terminator::Tail2m1));
        }
        let d1 = self.pending[0].clone();
        if d1 > three {
            self.pending[0] -= 2u32;
            return Self::emit(two, -1);
        }
        if d1 == three || d1 == two {
            let Some(more) = self.have(2) else {
                return Ok(Poll::NeedMore);
            };
            return match (more, d1 == two) {
                (true, false) => {
                    self.pending[0] = BigInt::one();
                    Self::emit(two, -1)
                }
                (true, true) => {
                    self.pending.pop_front();
                    Self::emit(BigInt::one(), 1)
                }
                // 1/3 ends at 1 through (1,1).
                (false, false) => {
                    self.pending[0] = BigInt::one();
                    Self::emit(BigInt::one(), 1)
                }
                // 1/2 ends at 0 through (3,−1).
                (false, true) => {
                    self.pending.clear();
                    Self::emit(three, -1)
                }
            };
        }
        // d₁ = 1
        let Some(has_d2) = self.have(2) else {
            return Ok(Poll::NeedMore);
        };
        if !has_d2 {
            // x = 1
            return Ok(Poll::End(Terminator::Finite));
        }
        let d2 = self.pending[1].clone();
        let Some(has_e1) = self.have(3) else {
            return Ok(Poll::NeedMore);
        };
        if !has_e1 {
            // τ = 0: continue at 0.
            self.pending.clear();
            return Self::emit(d2 + 2u32, -1);
        }
        let e1 = self.pending[2].clone();
        if e1.is_one() {
            // A final 1 would be folded into d₂ by `finish`, so wait for e₂.
            if self.have(4).is_none() {
                return Ok(Poll::NeedMore);
            }
            // τ ∈ (1/2, 1): F(τ) = [0; e₂, …]
            self.pending.drain(..3);
            return Self::emit(d2 + 1u32, 1);
        }
        if e1 == two {
            let Some(more) = self.have(4) else {
                return Ok(Poll::NeedMore);
            };
            if !more {
                // τ = 1/2 goes with [1/2, 1), and F(1/2) = 1.
                self.pending.clear();
                self.pending.push_back(BigInt::one());
                return Self::emit(d2 + 1u32, 1);
            }
        }
        // τ ∈ (0, 1/2): F(τ) = [0; e₁−1, e₂, …]
        self.pending.drain(..2);
        self.pending[0] -= 1u32;
        Self::emit(d2 + 2u32, -1)
    }
}

/// Runs the transducer over a whole expansion. Truncated input yields the
/// digits that are already determined, with a `Truncated` terminator.
pub fn rcf_to_oocf(e: &RcfExpansion) -> Result<OocfExpansion> {
    let mut t = RcfToOocf::new();
    for d in e.digits() {
        t.push(d.clone())?;
    }
    if e.is_finite() {
        t.finish();
    }
    let mut digits = Vec::new();
    loop {
        match t.poll()? {
            Poll::Digit(d) => digits.push(d),
            Poll::NeedMore => return Expansion::new(digits, Terminator::Truncated),
            Poll::End(term) => return Expansion::new(digits, term),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Real};
    use crate::oocf::expand;
    use crate::rcf_bridge::rcf_expand;

    fn dg(a: i64, e: i8) -> OocfDigit {
        OocfDigit::new(a, e).unwrap()
    }

    #[test]
    fn examples() {
        let e = RcfExpansion::from_u64s(&[3, 2], true).unwrap();
        let out = rcf_to_oocf(&e).unwrap();
        assert_eq!(out.digits, vec![dg(2, -1), dg(4, -1)]);
        assert_eq!(out.terminator, Terminator::Tail2m1);

        let e = RcfExpansion::from_u64s(&[2, 1, 2], true).unwrap();
        let out = rcf_to_oocf(&e).unwrap();
        assert_eq!(out.digits[0], dg(1, 1));
        assert_eq!(out, expand(&rat(3, 8).into(), 50).unwrap());

        let e = RcfExpansion::from_u64s(&[1, 2, 1, 2], true).unwrap();
        let out = rcf_to_oocf(&e).unwrap();
        assert_eq!(out.digits[0], dg(3, 1));
        assert_eq!(out, expand(&rat(8, 11).into(), 50).unwrap());
    }

    #[test]
    fn stream_stalls_instead_of_guessing() {
        let mut t = RcfToOocf::new();
        t.push(BigInt::from(1)).unwrap();
        t.push(BigInt::from(4)).unwrap();
        assert_eq!(t.poll().unwrap(), Poll::NeedMore);
        t.push(BigInt::from(2)).unwrap();
        assert_eq!(t.poll().unwrap(), Poll::NeedMore);
        t.push(BigInt::from(5)).unwrap();
        assert_eq!(t.poll().unwrap(), Poll::Digit(dg(6, -1)));
        assert!(t.push(BigInt::from(0)).is_err());

        // [0; 1, 3, 1] is [0; 1, 4]; the trailing 1 must not be read early.
        let mut t = RcfToOocf::new();
        for d in [1, 3, 1] {
            t.push(BigInt::from(d)).unwrap();
        }
        assert_eq!(t.poll().unwrap(), Poll::NeedMore);
        t.finish();
        assert_eq!(t.poll().unwrap(), Poll::Digit(dg(6, -1)));
        assert_eq!(t.poll().unwrap(), Poll::End(Terminator::Tail2m1));
    }

    #[test]
    fn matches_expand_on_small_rationals() {
        for q in 1..=60i64 {
            for p in 0..=q {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let x: Real = rat(p, q).into();
                let via = rcf_to_oocf(&rcf_expand(&x, 1000).unwrap()).unwrap();
                assert_eq!(via, expand(&x, 1000).unwrap(), "{p}/{q}");
            }
        }
    }
}
