use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Rational, Real};
use crate::error::{Error, Result};
use crate::oocf::OocfDigit;

/// Regular continued fraction `[0; d₁, d₂, …]` of a number in `[0,1]`.
///
/// Finite expansions are kept in the form whose last digit is at least 2,
/// except `[1]` for the number 1. The empty finite expansion is 0.
#[derive(Clone, PartialEq, Eq)]
pub struct RcfExpansion {
    digits: Vec<BigInt>,
    finite: bool,
}

impl RcfExpansion {
    fn checked(digits: Vec<BigInt>) -> Result<Vec<BigInt>> {
        if let Some(d) = digits.iter().find(|d| !d.is_positive()) {
            return Err(Error::MalformedExpansion(format!(
                "continued fraction digit {d} is not positive"
            )));
        }
        Ok(digits)
    }

    /// A complete expansion; a trailing `…, d, 1` is folded into `…, d+1`.
    pub fn finite(digits: Vec<BigInt>) -> Result<Self> {
        let mut digits = Self::checked(digits)?;
        if digits.len() > 1 && digits.last().unwrap().is_one() {
            digits.pop();
            *digits.last_mut().unwrap() += 1u32;
        }
        Ok(RcfExpansion {
            digits,
            finite: true,
        })
    }

    /// A prefix of a longer (possibly infinite) expansion.
    pub fn truncated(digits: Vec<BigInt>) -> Result<Self> {
        Ok(RcfExpansion {
            digits: Self::checked(digits)?,
            finite: false,
        })
    }

    pub fn from_u64s(digits: &[u64], finite: bool) -> Result<Self> {
        let digits = digits.iter().map(|&d| BigInt::from(d)).collect();
        if finite {
            Self::finite(digits)
        } else {
            Self::truncated(digits)
        }
    }

    pub fn digits(&self) -> &[BigInt] {
        &self.digits
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// The exact value when finite; otherwise the last convergent.
    pub fn value(&self) -> Rational {
        let (p, q) = continuants(&self.digits).pop().unwrap();
        Rational::new(p, q).expect("continuant denominators are positive")
    }
}

impl fmt::Display for RcfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        let tail = if self.finite { "" } else { ", …" };
        write!(f, "[0; {}{tail}]", body.join(", "))
    }
}

impl fmt::Debug for RcfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Gauss-map digits of `x ∈ [0,1]`, at most `max_digits` of them.
pub fn rcf_expand(x: &Real, max_digits: usize) -> Result<RcfExpansion> {
    x.ensure_unit()?;
    let mut digits = Vec::new();
    let mut zeta = x.clone();
    while !zeta.is_zero() {
        if digits.len() >= max_digits {
            return RcfExpansion::truncated(digits);
        }
        let y = zeta.recip()?;
        let d = y.floor();
        zeta = y.sub(&Real::Rational(Rational::from_integer(d.clone())))?;
        digits.push(d);
    }
    RcfExpansion::finite(digits)
}

/// `(pₙ, qₙ)` for `n = −1, 0, 1, …, len`, with `(p₋₁, q₋₁) = (1, 0)` and
/// `(p₀, q₀) = (0, 1)`.
pub fn continuants(digits: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let mut out = vec![
        (BigInt::one(), BigInt::zero()),
        (BigInt::zero(), BigInt::one()),
    ];
    for d in digits {
        let n = out.len();
        let (p1, q1) = &out[n - 1];
        let (p2, q2) = &out[n - 2];
        let next = (d * p1 + p2, d * q1 + q2);
        out.push(next);
    }
    out
}

/// Convergents `p₁/q₁, …, pₙ/qₙ`.
pub fn rcf_convergents(e: &RcfExpansion) -> Vec<Rational> {
    continuants(&e.digits)[2..]
        .iter()
        .map(|(p, q)| Rational::new(p.clone(), q.clone()).unwrap())
        .collect()
}

/// `(pₙ₋₂ + j·pₙ₋₁)/(qₙ₋₂ + j·qₙ₋₁)` for `j = 1..=dₙ`, `1 ≤ n ≤ len`.
pub fn intermediate_convergents(e: &RcfExpansion, n: usize) -> Result<Vec<Rational>> {
    if n == 0 || n > e.digits.len() {
        return Err(Error::InsufficientDigits {
            need: n.max(1),
            have: e.digits.len(),
        });
    }
    let c = continuants(&e.digits[..n - 1]);
    let (p1, q1) = &c[n];
    let (p2, q2) = &c[n - 1];
    let dn = e.digits[n - 1].to_u64().ok_or_else(|| {
        Error::InvalidArgument("partial quotient too large to enumerate".into())
    })?;
    (1..=dn)
        .map(|j| Rational::new(p2 + j * p1, q2 + j * q1))
        .collect()
}

/// Where `r` sits among the intermediate convergents of `e`: `(n, j)` with
/// `r = (pₙ₋₂ + j·pₙ₋₁)/(qₙ₋₂ + j·qₙ₋₁)`. For a finite expansion of length
/// `N`, level `N+1` is open-ended (`j ≥ 1` unbounded), as for `dₙ₊₁ = ∞`,
/// and the other form `[0; d₁, …, d_N − 1, 1]` is searched as well.
pub fn locate_intermediate(e: &RcfExpansion, r: &Rational) -> Option<(usize, BigInt)> {
    let found = locate_in(&e.digits, e.finite, r);
    if found.is_some() || !e.finite || e.digits.is_empty() {
        return found;
    }
    let mut other = e.digits.clone();
    *other.last_mut().unwrap() -= 1u32;
    other.push(BigInt::one());
    locate_in(&other, true, r)
}

fn locate_in(digits: &[BigInt], finite: bool, r: &Rational) -> Option<(usize, BigInt)> {
    let c = continuants(digits);
    let last_level = if finite { digits.len() + 1 } else { digits.len() };
    for n in 1..=last_level {
        let (p1, q1) = &c[n];
        let (p2, q2) = &c[n - 1];
        let (j, rem) = (r.den() - q2).div_rem(q1);
        if !rem.is_zero() || !j.is_positive() {
            continue;
        }
        if let Some(dn) = digits.get(n - 1) {
            if &j > dn {
                continue;
            }
        }
        if &(p2 + &j * p1) == r.num() {
            return Some((n, j));
        }
    }
    None
}

/// RCF of `f_(a,ε)(x)` from the RCF of `x`:
///
/// | digit         | result                           |
/// |---------------|----------------------------------|
/// | `(1,1)`       | `[0; 2, d₁, d₂, …]`              |
/// | `(a,1)`, a≥2  | `[0; 1, a−1, 1, d₁, d₂, …]`      |
/// | `(2,−1)`      | `[0; d₁+2, d₂, …]`               |
/// | `(a,−1)`, a≥3 | `[0; 1, a−2, d₁+1, d₂, …]`       |
///
/// For `x = 0` the missing `d₁` acts as ∞. The result is normalized.
pub fn change_rcf(digit: &OocfDigit, e: &RcfExpansion) -> Result<RcfExpansion> {
    let a = digit.a();
    let mut out: Vec<BigInt> = Vec::with_capacity(e.digits.len() + 3);
    let mut rest = e.digits.iter().cloned();
    let bump = |rest: &mut dyn Iterator<Item = BigInt>, by: u32, out: &mut Vec<BigInt>| {
        // d₁ + by, then the remaining digits; nothing when d₁ = ∞.
        if let Some(d1) = rest.next() {
            out.push(d1 + by);
            out.extend(rest);
        }
    };
    match (digit.eps(), a.is_one()) {
        (1, true) => {
            out.push(BigInt::from(2));
            out.extend(rest);
        }
        (1, false) => {
            out.extend([BigInt::one(), a - 1u32, BigInt::one()]);
            out.extend(rest);
        }
        _ if a == &BigInt::from(2) => bump(&mut rest, 2, &mut out),
        _ => {
            out.extend([BigInt::one(), a - 2u32]);
            bump(&mut rest, 1, &mut out);
        }
    }
    if e.finite {
        RcfExpansion::finite(out)
    } else {
        RcfExpansion::truncated(out)
    }
}
