//! Best odd/odd approximation and Ford circles.
//!
//! `a/b` is a best 1-rational approximation of an irrational `x` when
//! `|bx − a|` is strictly smaller than `|dx − c|` for every other odd/odd
//! `c/d` with `d ≤ b`. In terms of horocycles, `R_{a/b}(x) = ½|bx − a|²`
//! is the radius of the circle tangent to the line at `x` and to the Ford
//! circle at `a/b`, so the comparison is one of radii.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::arith::{surd_floor, surd_sign, QuadIrr, Rational, Real};
use crate::convergents::principal_convergents_upto;
use crate::error::{Error, Result};
use crate::rcf_bridge::{continuants, rcf_expand};

/// Circle of radius `1/(2b²)` tangent to the real line at `a/b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FordCircle {
    pub base: Rational,
    pub radius: Rational,
}

impl FordCircle {
    pub fn new(base: Rational) -> Self {
        let radius = ford_radius(&base);
        FordCircle { base, radius }
    }

    pub fn tangent_to(&self, other: &FordCircle) -> bool {
        ford_tangent(&self.base, &other.base)
    }
}

pub fn ford_radius(r: &Rational) -> Rational {
    let b = r.den();
    Rational::new(1, b * b * 2u32).expect("den > 0")
}

/// Ford circles at `a/b` and `c/d` touch iff `|ad − bc| = 1`.
pub fn ford_tangent(r1: &Rational, r2: &Rational) -> bool {
    (r1.num() * r2.den() - r1.den() * r2.num()).abs().is_one()
}

/// `|bx − a|²` for `r = a/b`.
pub fn err_sq(r: &Rational, x: &Real) -> Result<Real> {
    let b = Real::Rational(Rational::from_integer(r.den().clone()));
    let a = Real::Rational(Rational::from_integer(r.num().clone()));
    let e = b.mul(x)?.sub(&a)?;
    e.mul(&e)
}

/// `R_{a/b}(x) = ½|bx − a|²`.
pub fn horo_radius(r: &Rational, x: &Real) -> Result<Real> {
    err_sq(r, x)?.mul(&Real::Rational(Rational::new(1, 2)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxRecord {
    pub candidate: Rational,
    pub err_sq: Real,
}

impl ApproxRecord {
    pub fn new(candidate: Rational, x: &Real) -> Result<Self> {
        let err_sq = err_sq(&candidate, x)?;
        Ok(ApproxRecord { candidate, err_sq })
    }
}

/// `bx − a = (u + v·√d)/q` for `x = (p + s·√d)/q`.
struct Cand {
    a: BigInt,
    b: BigInt,
    u: BigInt,
    v: BigInt,
}

/// Exact `|c₁| < |c₂|` through the sign of `(u₁ + v₁√d)² − (u₂ + v₂√d)²`.
fn closer(c1: &Cand, c2: &Cand, d: &BigInt) -> bool {
    let rational = &c1.u * &c1.u - &c2.u * &c2.u + (&c1.v * &c1.v - &c2.v * &c2.v) * d;
    let surd = (&c1.u * &c1.v - &c2.u * &c2.v) * 2u32;
    surd_sign(&rational, &surd, d) == Ordering::Less
}

/// Nearest odd `a` to `bx`; `bx` is never an even integer.
fn nearest_odd(x: &QuadIrr, b: &BigInt) -> Cand {
    let m = surd_floor(&(x.p() * b), &(x.s() * b), x.d(), x.q());
    let a = if m.is_odd() { m } else { m + 1u32 };
    let u = x.p() * b - &a * x.q();
    let v = x.s() * b;
    Cand { a, b: b.clone(), u, v }
}

/// Strict successive minima over odd `b` in `[2·lo + 1, 2·hi − 1]`.
fn local_minima(x: &QuadIrr, lo: u64, hi: u64) -> Vec<Cand> {
    let mut out: Vec<Cand> = Vec::new();
    for i in lo..hi {
        let c = nearest_odd(x, &BigInt::from(2 * i + 1));
        if out.last().is_none_or(|best| closer(&c, best, x.d())) {
            out.push(c);
        }
    }
    out
}

const CHUNK: u64 = 1 << 13;

/// Odd/odd `a/b`, `b ≤ qmax`, at which `|bx − a|` reaches a new strict
/// minimum, in increasing `b`. Exhaustive over odd `b`, but only the odd
/// `a` nearest to `bx` can compete, so the work is linear in `qmax`.
pub fn best_one_rationals(x: &Real, qmax: u64) -> Result<Vec<Rational>> {
    let Real::Quad(q) = x else {
        return Err(Error::NotIrrational);
    };
    x.ensure_unit()?;
    let count = qmax.div_ceil(2);
    let ranges: Vec<(u64, u64)> = (0..count)
        .step_by(CHUNK as usize)
        .map(|lo| (lo, (lo + CHUNK).min(count)))
        .collect();
    let parts: Vec<Vec<Cand>> = ranges
        .par_iter()
        .map(|&(lo, hi)| local_minima(q, lo, hi))
        .collect();

    // Each part is decreasing in error, so what beats the running
    // minimum is a suffix of it.
    let mut merged: Vec<Cand> = Vec::new();
    for part in parts {
        let start = match merged.last() {
            None => 0,
            Some(best) => part
                .iter()
                .position(|c| closer(c, best, q.d()))
                .unwrap_or(part.len()),
        };
        merged.extend(part.into_iter().skip(start));
    }
    merged
        .into_iter()
        .map(|c| Rational::new(c.a, c.b))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm1Report {
    pub qmax: u64,
    pub oocf_list: Vec<Rational>,
    pub brute_list: Vec<Rational>,
    pub pass: bool,
}

/// Principal convergents with `qₙ ≤ qmax` against the exhaustive list.
pub fn verify_thm1(x: &Real, qmax: u64) -> Result<Thm1Report> {
    let brute_list = best_one_rationals(x, qmax)?;
    let oocf_list = principal_convergents_upto(x, &BigInt::from(qmax))?;
    Ok(Thm1Report {
        qmax,
        pass: oocf_list == brute_list,
        oocf_list,
        brute_list,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeitaReport {
    pub n: usize,
    pub d_n: BigInt,
    /// `qₙ₋₂, qₙ₋₁, q_{n,1}, …, q_{n,dₙ}`.
    pub denominators: Vec<BigInt>,
    /// `|δₙ|, |δₙ₋₁|, |δ_{n,dₙ−1}|, …, |δ_{n,0}|` with `δ = qx − p`.
    pub errors: Vec<Real>,
    /// `n = 2`, `d₁ = 1`: `q₀ = q₁ = 1`, so the first step is an equality.
    pub degenerate: bool,
    pub denominators_ok: bool,
    pub errors_ok: bool,
    pub pass: bool,
}

/// Checks `qₙ₋₂ < qₙ₋₁ ≤ q_{n,1} < ⋯ < q_{n,dₙ}` and
/// `|δₙ| < |δₙ₋₁| ≤ |δ_{n,dₙ−1}| < ⋯ < |δ_{n,0}|` at level `n` of the RCF of `x`.
pub fn keita_monotonicity(x: &Real, n: usize) -> Result<KeitaReport> {
    let e = rcf_expand(x, n)?;
    if n == 0 || e.digits().len() < n {
        return Err(Error::InsufficientDigits {
            need: n.max(1),
            have: e.digits().len(),
        });
    }
    let c = continuants(&e.digits()[..n - 1]);
    let (p1, q1) = &c[n];
    let (p2, q2) = &c[n - 1];
    let d_n = e.digits()[n - 1].clone();
    let dn = d_n.to_u64().filter(|&d| d <= 1 << 24).ok_or_else(|| {
        Error::InvalidArgument("partial quotient too large to enumerate".into())
    })?;
    let level = |j: u64| (p2 + p1 * j, q2 + q1 * j);
    let delta = |p: &BigInt, q: &BigInt| -> Result<Real> {
        let q = Real::Rational(Rational::from_integer(q.clone()));
        let p = Real::Rational(Rational::from_integer(p.clone()));
        Ok(q.mul(x)?.sub(&p)?.abs())
    };

    let degenerate = n == 2 && e.digits()[0].is_one();
    let mut denominators = vec![q2.clone(), q1.clone()];
    denominators.extend((1..=dn).map(|j| level(j).1));
    let mut denominators_ok = if degenerate { q2 <= q1 } else { q2 < q1 };
    denominators_ok &= q1 <= &denominators[2];
    denominators_ok &= denominators[2..].windows(2).all(|w| w[0] < w[1]);

    let (pn, qn) = level(dn);
    let mut errors = vec![delta(&pn, &qn)?, delta(p1, q1)?];
    for j in (0..dn).rev() {
        let (p, q) = level(j);
        errors.push(delta(&p, &q)?);
    }
    let mut errors_ok = errors[0].lt(&errors[1])? && errors[1].le(&errors[2])?;
    for w in errors[2..].windows(2) {
        errors_ok &= w[0].lt(&w[1])?;
    }
    debug_assert!(errors.last().is_none_or(|e| e == &delta(p2, q2).unwrap()));

    Ok(KeitaReport {
        n,
        d_n,
        denominators,
        errors,
        degenerate,
        pass: denominators_ok && errors_ok,
        denominators_ok,
        errors_ok,
    })
}
