use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::quad::{surd_sign, QuadIrr};
use super::rational::Rational;
use crate::error::{Error, Result};

/// An exact real number: a rational or an element of a real quadratic field.
///
/// This is the input type of every expansion routine. Operands of a binary
/// operation must live in a common quadratic field; radicands that differ by a
/// square factor are reconciled, anything else is an [`Error::MixedRadicand`].
#[derive(Clone, PartialEq, Eq)]
pub enum Real {
    Rational(Rational),
    Quad(QuadIrr),
}

/// `(p + s·√d)/q` with a shared radicand, used as the working form of arithmetic.
struct Surd {
    p: BigInt,
    s: BigInt,
    q: BigInt,
}

impl Real {
    pub fn zero() -> Self {
        Real::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Real::Rational(Rational::one())
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        Ok(Real::Rational(Rational::new(num, den)?))
    }

    /// Builds `(p + s·√d)/q`, collapsing to a rational when `s = 0`.
    pub fn from_surd(p: BigInt, s: BigInt, q: BigInt, d: &BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if s.is_zero() {
            return Ok(Real::Rational(Rational::new(p, q)?));
        }
        Ok(Real::Quad(QuadIrr::canonical(p, s, d.clone(), q)))
    }

    pub fn radicand(&self) -> Option<&BigInt> {
        match self {
            Real::Rational(_) => None,
            Real::Quad(x) => Some(x.d()),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Real::Rational(r) => Some(r),
            Real::Quad(_) => None,
        }
    }

    pub fn as_quad(&self) -> Option<&QuadIrr> {
        match self {
            Real::Quad(x) => Some(x),
            Real::Rational(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Real::Rational(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Real::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Real::Rational(r) if r.is_one())
    }

    pub fn signum(&self) -> Ordering {
        match self {
            Real::Rational(r) => r.num().sign().cmp_zero(),
            Real::Quad(x) => x.signum(),
        }
    }

    pub fn floor(&self) -> BigInt {
        match self {
            Real::Rational(r) => r.floor(),
            Real::Quad(x) => x.floor(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Rational(r) => r.to_f64(),
            Real::Quad(x) => x.to_f64(),
        }
    }

    /// Fails unless `0 ≤ self ≤ 1`.
    pub fn ensure_unit(&self) -> Result<()> {
        if self.signum() == Ordering::Less || self.cmp_exact(&Real::one())? == Ordering::Greater {
            return Err(Error::OutOfUnitInterval(self.to_string()));
        }
        Ok(())
    }

    /// Common radicand of two operands, if any.
    fn common_radicand(&self, other: &Real) -> Result<Option<BigInt>> {
        match (self.radicand(), other.radicand()) {
            (None, None) => Ok(None),
            (Some(d), None) | (None, Some(d)) => Ok(Some(d.clone())),
            (Some(d1), Some(d2)) => {
                if d1 == d2 || super::quad::radicand_ratio(d2, d1).is_some() {
                    Ok(Some(d1.clone()))
                } else {
                    Err(Error::MixedRadicand(d1.clone(), d2.clone()))
                }
            }
        }
    }

    fn lift(&self, d: &BigInt) -> Surd {
        match self {
            Real::Rational(r) => Surd {
                p: r.num().clone(),
                s: BigInt::zero(),
                q: r.den().clone(),
            },
            Real::Quad(x) => {
                let x = x.rebase(d).expect("radicands checked by common_radicand");
                Surd {
                    p: x.p().clone(),
                    s: x.s().clone(),
                    q: x.q().clone(),
                }
            }
        }
    }

    fn binary(&self, other: &Real, op: impl Fn(&Surd, &Surd, &BigInt) -> Result<Surd>) -> Result<Real> {
        if self.is_rational() && other.is_rational() {
            let d = BigInt::zero();
            let r = op(&self.lift(&d), &other.lift(&d), &d)?;
            return Ok(Real::Rational(Rational::new(r.p, r.q)?));
        }
        let d = self.common_radicand(other)?.expect("one operand is quadratic");
        let r = op(&self.lift(&d), &other.lift(&d), &d)?;
        Real::from_surd(r.p, r.s, r.q, &d)
    }

    pub fn add(&self, other: &Real) -> Result<Real> {
        self.binary(other, |a, b, _| {
            Ok(Surd {
                p: &a.p * &b.q + &b.p * &a.q,
                s: &a.s * &b.q + &b.s * &a.q,
                q: &a.q * &b.q,
            })
        })
    }

    pub fn sub(&self, other: &Real) -> Result<Real> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Real) -> Result<Real> {
        self.binary(other, |a, b, d| {
            Ok(Surd {
                p: &a.p * &b.p + &a.s * &b.s * d,
                s: &a.p * &b.s + &a.s * &b.p,
                q: &a.q * &b.q,
            })
        })
    }

    pub fn div(&self, other: &Real) -> Result<Real> {
        self.mul(&other.recip()?)
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Rational(r) => Real::Rational(Rational::zero().sub(r)),
            Real::Quad(x) => Real::Quad(QuadIrr::canonical(
                -x.p(),
                -x.s(),
                x.d().clone(),
                x.q().clone(),
            )),
        }
    }

    pub fn abs(&self) -> Real {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Real> {
        match self {
            Real::Rational(r) => Ok(Real::Rational(r.recip()?)),
            Real::Quad(x) => {
                // q/(p + s√d) = q(p - s√d)/(p² - s²d); the norm is nonzero for non-square d.
                let norm = x.p() * x.p() - x.s() * x.s() * x.d();
                Real::from_surd(x.q() * x.p(), -(x.q() * x.s()), norm, x.d())
            }
        }
    }

    /// Exact comparison; fails only for operands in different quadratic fields.
    pub fn cmp_exact(&self, other: &Real) -> Result<Ordering> {
        if let (Real::Rational(a), Real::Rational(b)) = (self, other) {
            return Ok(a.cmp(b));
        }
        let d = self.common_radicand(other)?.expect("one operand is quadratic");
        let (a, b) = (self.lift(&d), other.lift(&d));
        // sign(a - b) with both denominators positive.
        let p = &a.p * &b.q - &b.p * &a.q;
        let s = &a.s * &b.q - &b.s * &a.q;
        Ok(surd_sign(&p, &s, &d))
    }

    pub fn lt(&self, other: &Real) -> Result<bool> {
        Ok(self.cmp_exact(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &Real) -> Result<bool> {
        Ok(self.cmp_exact(other)? != Ordering::Greater)
    }

    /// Whether `self` lies in the closed interval spanned by `a` and `b`.
    pub fn between(&self, a: &Real, b: &Real) -> Result<bool> {
        let lo_hi = a.cmp_exact(b)?;
        let (lo, hi) = if lo_hi == Ordering::Greater { (b, a) } else { (a, b) };
        Ok(lo.le(self)? && self.le(hi)?)
    }
}

trait CmpZero {
    fn cmp_zero(self) -> Ordering;
}

impl CmpZero for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

impl From<Rational> for Real {
    fn from(r: Rational) -> Self {
        Real::Rational(r)
    }
}

impl From<QuadIrr> for Real {
    fn from(x: QuadIrr) -> Self {
        Real::Quad(x)
    }
}

impl From<i64> for Real {
    fn from(n: i64) -> Self {
        Real::Rational(Rational::from_integer(n))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rational(r) => fmt::Display::fmt(r, f),
            Real::Quad(x) => fmt::Display::fmt(x, f),
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
