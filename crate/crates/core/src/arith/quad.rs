use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Element `(p + s·√d)/q` of a real quadratic field, kept in canonical form:
/// `q > 0`, `s ≠ 0`, `gcd(p, s, q) = 1` and `d` a positive non-square.
///
/// `d` is not reduced to its squarefree part. Values over different literal
/// radicands still compare equal when they denote the same real number.
#[derive(Clone)]
pub struct QuadIrr {
    p: BigInt,
    s: BigInt,
    d: BigInt,
    q: BigInt,
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Sign of `p + s·√d` for `d ≥ 0`, decided with integer arithmetic only.
pub(crate) fn surd_sign(p: &BigInt, s: &BigInt, d: &BigInt) -> Ordering {
    let ps = p.sign();
    let ss = if d.is_zero() { num_bigint::Sign::NoSign } else { s.sign() };
    use num_bigint::Sign::*;
    match (ps, ss) {
        (NoSign, NoSign) => Ordering::Equal,
        (Plus, NoSign) | (NoSign, Plus) | (Plus, Plus) => Ordering::Greater,
        (Minus, NoSign) | (NoSign, Minus) | (Minus, Minus) => Ordering::Less,
        // Opposite signs: compare p² with s²d.
        (Plus, Minus) => (p * p).cmp(&(s * s * d)),
        (Minus, Plus) => (s * s * d).cmp(&(p * p)),
    }
}

/// `floor((p + s·√d)/q)` for `q > 0` and non-square `d`.
pub(crate) fn surd_floor(p: &BigInt, s: &BigInt, d: &BigInt, q: &BigInt) -> BigInt {
    // r = floor(|s|·√d); s·√d lies strictly inside (r, r+1) or (-r-1, -r).
    let r = (s * s * d).sqrt();
    if s.is_positive() {
        (p + r).div_floor(q)
    } else {
        (p - r - 1u32).div_floor(q)
    }
}

/// If `√from = (m/n)·√to` for integers m, n, returns `(m, n)`.
pub(crate) fn radicand_ratio(from: &BigInt, to: &BigInt) -> Option<(BigInt, BigInt)> {
    if from == to {
        return Some((BigInt::one(), BigInt::one()));
    }
    let g = from.gcd(to);
    let (u, v) = (from / &g, to / &g);
    if is_square(&u) && is_square(&v) {
        Some((u.sqrt(), v.sqrt()))
    } else {
        None
    }
}

impl QuadIrr {
    pub fn new(
        p: impl Into<BigInt>,
        s: impl Into<BigInt>,
        d: impl Into<BigInt>,
        q: impl Into<BigInt>,
    ) -> Result<Self> {
        let (p, s, d, q) = (p.into(), s.into(), d.into(), q.into());
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !d.is_positive() || is_square(&d) {
            return Err(Error::BadRadicand(d));
        }
        if s.is_zero() {
            return Err(Error::InvalidArgument(
                "surd coefficient must be nonzero".into(),
            ));
        }
        Ok(Self::canonical(p, s, d, q))
    }

    /// `√d`.
    pub fn sqrt(d: impl Into<BigInt>) -> Result<Self> {
        Self::new(0, 1, d, 1)
    }

    /// Caller guarantees `s ≠ 0`, `q ≠ 0` and a valid radicand.
    pub(crate) fn canonical(mut p: BigInt, mut s: BigInt, d: BigInt, mut q: BigInt) -> Self {
        if q.is_negative() {
            p = -p;
            s = -s;
            q = -q;
        }
        let g = p.gcd(&s).gcd(&q);
        if !g.is_one() {
            p /= &g;
            s /= &g;
            q /= &g;
        }
        QuadIrr { p, s, d, q }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Canonical coefficients; identical for equal values over the same radicand.
    pub fn key(&self) -> (BigInt, BigInt, BigInt) {
        (self.p.clone(), self.s.clone(), self.q.clone())
    }

    pub fn conjugate(&self) -> Self {
        QuadIrr {
            p: self.p.clone(),
            s: -&self.s,
            d: self.d.clone(),
            q: self.q.clone(),
        }
    }

    pub fn signum(&self) -> Ordering {
        surd_sign(&self.p, &self.s, &self.d)
    }

    pub fn floor(&self) -> BigInt {
        surd_floor(&self.p, &self.s, &self.d, &self.q)
    }

    /// The same value written over radicand `d`, when the two radicands differ by a
    /// rational square factor.
    pub fn rebase(&self, d: &BigInt) -> Option<Self> {
        if *d == self.d {
            return Some(self.clone());
        }
        if !d.is_positive() {
            return None;
        }
        let (m, n) = radicand_ratio(&self.d, d)?;
        Some(Self::canonical(
            &self.p * &n,
            &self.s * m,
            d.clone(),
            &self.q * n,
        ))
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let s = self.s.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        (p + s * d.sqrt()) / q
    }
}

impl PartialEq for QuadIrr {
    fn eq(&self, other: &Self) -> bool {
        if self.d == other.d {
            return self.p == other.p && self.s == other.s && self.q == other.q;
        }
        // Rational parts agree and the irrational parts have equal squares and sign.
        &self.p * &other.q == &other.p * &self.q
            && self.s.sign() == other.s.sign()
            && &self.s * &self.s * &self.d * &other.q * &other.q
                == &other.s * &other.s * &other.d * &self.q * &self.q
    }
}

impl Eq for QuadIrr {}

impl fmt::Display for QuadIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.s.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.p,
            sign,
            self.s.abs(),
            self.d,
            self.q
        )
    }
}

impl fmt::Debug for QuadIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
