//! Odd-odd continued fraction digits and expansions.
//!
//! Every `x ∈ [0,1]` is written `x = f₁ ∘ f₂ ∘ ⋯`, where `f_(a,ε)` inverts one
//! branch of [`oocf_map`](crate::maps::oocf_map). Rationals end either at 1
//! (a finite expansion) or at 0, the fixed point of the `(2,−1)` branch.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_square, Mat2, QuadIrr, Rational, Real};
use crate::error::{Error, Result};
use crate::maps;

/// One partial quotient `(a, ε)` with `a ≥ 1`, `ε = ±1`, and `(1, −1)` excluded.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OocfDigit {
    a: BigInt,
    eps: i8,
}

impl OocfDigit {
    pub fn new(a: impl Into<BigInt>, eps: i8) -> Result<Self> {
        let a = a.into();
        let legal = (eps == 1 || eps == -1) && a.is_positive() && !(a.is_one() && eps == -1);
        if !legal {
            return Err(Error::IllegalDigit {
                a,
                eps: eps as i64,
            });
        }
        Ok(OocfDigit { a, eps })
    }

    /// The repeating digit of the tail expansion of 0.
    pub fn tail() -> Self {
        OocfDigit {
            a: BigInt::from(2),
            eps: -1,
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    /// `[[a−1, a+ε−1], [a, a+ε]]`, the Möbius form of `t ↦ 1 − 1/(a + ε/(1+t))`.
    pub fn matrix(&self) -> Mat2 {
        let a = &self.a;
        let e = BigInt::from(self.eps);
        Mat2::new(a - 1u32, a + &e - 1u32, a.clone(), a + e)
    }

    /// The other digit that ends an expansion at the same rational, if any:
    /// `(k+1,−1) ↔ (k,1)` for finite expansions.
    fn finite_twin(&self) -> Option<OocfDigit> {
        match self.eps {
            1 => OocfDigit::new(&self.a + 1u32, -1).ok(),
            _ => OocfDigit::new(&self.a - 1u32, 1).ok(),
        }
    }
}

impl fmt::Display for OocfDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.eps)
    }
}

impl fmt::Debug for OocfDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// How a digit list continues past its last stored digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminator {
    /// The orbit reached 1.
    Finite,
    /// The orbit reached 0; `(2,−1)` repeats forever.
    Tail2m1,
    /// `digits[start..]` repeats forever.
    Periodic { start: usize },
    /// Cut off after the stored digits.
    Truncated,
}

impl Terminator {
    pub fn name(&self) -> &'static str {
        match self {
            Terminator::Finite => "finite",
            Terminator::Tail2m1 => "tail_2m1",
            Terminator::Periodic { .. } => "periodic",
            Terminator::Truncated => "truncated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion<D> {
    pub digits: Vec<D>,
    pub terminator: Terminator,
}

pub type OocfExpansion = Expansion<OocfDigit>;

impl<D: Clone> Expansion<D> {
    pub fn new(digits: Vec<D>, terminator: Terminator) -> Result<Self> {
        if let Terminator::Periodic { start } = terminator {
            if start >= digits.len() {
                return Err(Error::MalformedExpansion("empty period".into()));
            }
        }
        Ok(Expansion { digits, terminator })
    }

    pub fn preperiod(&self) -> &[D] {
        match self.terminator {
            Terminator::Periodic { start } => &self.digits[..start],
            _ => &self.digits,
        }
    }

    pub fn period(&self) -> Option<&[D]> {
        match self.terminator {
            Terminator::Periodic { start } => Some(&self.digits[start..]),
            _ => None,
        }
    }

    /// The digit sequence with the tail unrolled; `tail` is the digit that
    /// repeats after a `Tail2m1` terminator. Finite and truncated streams end.
    pub fn stream(&self, tail: D) -> impl Iterator<Item = D> + '_ {
        let repeat: Box<dyn Iterator<Item = D>> = match self.terminator {
            Terminator::Tail2m1 => Box::new(std::iter::repeat(tail)),
            Terminator::Periodic { start } => {
                Box::new(self.digits[start..].iter().cloned().cycle())
            }
            _ => Box::new(std::iter::empty()),
        };
        self.digits.iter().cloned().chain(repeat)
    }
}

impl OocfExpansion {
    /// The first `n` digits of the unrolled stream.
    pub fn take(&self, n: usize) -> Vec<OocfDigit> {
        self.stream(OocfDigit::tail()).take(n).collect()
    }
}

/// `ζ ↦ T(ζ)` together with the digit of the branch used.
pub fn step(zeta: &Real) -> Result<Option<(OocfDigit, Real)>> {
    let Some(digit) = maps::oocf_branch_of(zeta)? else {
        return Ok(None);
    };
    let inverse = digit
        .matrix()
        .unimodular_inverse()
        .expect("digit matrices are unimodular");
    let next = inverse.apply(zeta)?;
    Ok(Some((digit, next)))
}

/// The tails `ζ₁ = x, ζ₂ = T(x), …` paired with the digit read at each step.
/// Ends after the digit that sends the orbit to 1; an orbit reaching 0 stays
/// there, reading `(2,−1)` forever.
pub struct ZetaOrbit {
    zeta: Option<Real>,
}

impl ZetaOrbit {
    pub fn new(x: &Real) -> Result<Self> {
        x.ensure_unit()?;
        Ok(ZetaOrbit {
            zeta: Some(x.clone()),
        })
    }
}

impl Iterator for ZetaOrbit {
    /// `(ζₙ, (aₙ, εₙ))`
    type Item = (Real, OocfDigit);

    fn next(&mut self) -> Option<Self::Item> {
        let zeta = self.zeta.take()?;
        let (digit, next) = step(&zeta).expect("orbit stays in [0,1]")?;
        self.zeta = Some(next);
        Some((zeta, digit))
    }
}

/// Canonical expansion of `x ∈ [0,1]`, reading at most `max_digits` digits.
pub fn expand(x: &Real, max_digits: usize) -> Result<OocfExpansion> {
    x.ensure_unit()?;
    let mut seen: HashMap<(BigInt, BigInt, BigInt), usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut zeta = x.clone();
    loop {
        if zeta.is_one() {
            return Expansion::new(digits, Terminator::Finite);
        }
        if zeta.is_zero() {
            return Expansion::new(digits, Terminator::Tail2m1);
        }
        if let Real::Quad(q) = &zeta {
            if let Some(&start) = seen.get(&q.key()) {
                return Expansion::new(digits, Terminator::Periodic { start });
            }
            seen.insert(q.key(), digits.len());
        }
        if digits.len() >= max_digits {
            return Expansion::new(digits, Terminator::Truncated);
        }
        let (digit, next) = step(&zeta)?.expect("zeta < 1");
        digits.push(digit);
        zeta = next;
    }
}

/// Both expansions of a rational in `(0,1)`, canonical one first.
pub fn all_expansions(x: &Rational) -> Result<[OocfExpansion; 2]> {
    if x.is_zero() || x.is_negative() || x >= &Rational::one() {
        return Err(Error::OutOfUnitInterval(format!(
            "{x} (two expansions exist for rationals in (0,1))"
        )));
    }
    // Denominators strictly decrease along the orbit, so this terminates.
    let canonical = expand(&Real::Rational(x.clone()), usize::MAX)?;
    let mut other = canonical.clone();
    match canonical.terminator {
        Terminator::Finite => {
            // The orbit last hit (2k−1)/(2k+1), read canonically as (k,1).
            let last = other.digits.last_mut().expect("x ≠ 1");
            *last = last.finite_twin().expect("canonical finite digit is (k,1)");
        }
        Terminator::Tail2m1 => {
            // The orbit hit k/(k+1), read canonically as (k+2,−1); (k,1) also sends it to 0.
            let last = other.digits.last_mut().expect("x ≠ 0");
            if last.eps != -1 || last.a < BigInt::from(3) {
                return Err(Error::MalformedExpansion(format!(
                    "unexpected digit {last} before the tail"
                )));
            }
            *last = OocfDigit::new(&last.a - 2u32, 1)?;
        }
        _ => unreachable!("rational orbits reach 0 or 1"),
    }
    Ok([canonical, other])
}

fn product(digits: &[OocfDigit]) -> Mat2 {
    digits
        .iter()
        .fold(Mat2::identity(), |m, d| m.mul(&d.matrix()))
}

/// Drops square factors `p²` with `p < 100` from `disc`; returns `(root, rest)`
/// with `disc = root²·rest`.
fn pull_small_squares(disc: &BigInt) -> (BigInt, BigInt) {
    let mut rest = disc.clone();
    let mut root = BigInt::one();
    for p in 2u32..100 {
        let sq = BigInt::from(p * p);
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            root *= p;
        }
    }
    (root, rest)
}

/// The fixed point of `m` in `[0,1]`; the attracting one when there are two.
fn fixed_point(m: &Mat2) -> Result<Real> {
    let malformed = || Error::MalformedExpansion("period has no fixed point in [0,1]".into());
    let (a, b, c, d) = (&m.a, &m.b, &m.c, &m.d);
    // c·z² + (d − a)·z − b = 0
    let candidates: Vec<Real> = if c.is_zero() {
        if a == d {
            return Err(malformed());
        }
        vec![Real::Rational(Rational::new(b.clone(), d - a)?)]
    } else {
        let disc = (a - d) * (a - d) + BigInt::from(4) * b * c;
        if disc.is_negative() {
            return Err(malformed());
        }
        let two_c = BigInt::from(2) * c;
        if is_square(&disc) {
            let r = disc.sqrt();
            vec![
                Real::Rational(Rational::new(a - d + &r, two_c.clone())?),
                Real::Rational(Rational::new(a - d - &r, two_c)?),
            ]
        } else {
            let (root, rest) = pull_small_squares(&disc);
            [BigInt::one(), -BigInt::one()]
                .into_iter()
                .map(|s| Real::from_surd(a - d, s * &root, two_c.clone(), &rest))
                .collect::<Result<_>>()?
        }
    };
    let mut inside = Vec::new();
    for z in candidates {
        if z.between(&Real::zero(), &Real::one())? && !inside.contains(&z) {
            inside.push(z);
        }
    }
    match inside.len() {
        0 => Err(malformed()),
        1 => Ok(inside.pop().unwrap()),
        _ => {
            // |(cz + d)²| > det magnitude 1 means the inverse branch contracts there.
            let cc = Real::Rational(Rational::from_integer(c.clone()));
            let dd = Real::Rational(Rational::from_integer(d.clone()));
            for z in &inside {
                let slope = cc.mul(z)?.add(&dd)?;
                let sq = slope.mul(&slope)?;
                if Real::one().lt(&sq)? {
                    return Ok(z.clone());
                }
            }
            Err(malformed())
        }
    }
}

/// Exact value of an expansion. Truncated expansions give the principal
/// convergent of their digits.
pub fn evaluate(e: &OocfExpansion) -> Result<Real> {
    let m = product(e.preperiod());
    let tail = match e.terminator {
        Terminator::Finite | Terminator::Truncated => Real::one(),
        Terminator::Tail2m1 => Real::zero(),
        Terminator::Periodic { .. } => fixed_point(&product(e.period().unwrap()))?,
    };
    m.apply(&tail)
}

/// `(preperiod, period)` lengths of the expansion of a quadratic irrational.
pub fn detect_period(x: &QuadIrr, cap: usize) -> Result<(usize, usize)> {
    let x = Real::Quad(x.clone());
    x.ensure_unit()?;
    let e = expand(&x, cap)?;
    match e.terminator {
        Terminator::Periodic { start } => Ok((start, e.digits.len() - start)),
        Terminator::Truncated => Err(Error::IterationCap(cap)),
        _ => unreachable!("irrational orbits avoid 0 and 1"),
    }
}

pub const DEFAULT_PERIOD_CAP: usize = 100_000;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn dg(a: i64, e: i8) -> OocfDigit {
        OocfDigit::new(a, e).unwrap()
    }

    fn q(p: i64, s: i64, d: i64, qq: i64) -> Real {
        Real::Quad(QuadIrr::new(p, s, d, qq).unwrap())
    }

    #[test]
    fn digit_legality() {
        assert!(OocfDigit::new(1, -1).is_err());
        assert!(OocfDigit::new(0, 1).is_err());
        assert!(OocfDigit::new(3, 0).is_err());
        assert_eq!(dg(1, 1).matrix(), Mat2::new(0, 1, 1, 2));
        assert_eq!(dg(4, -1).matrix().det(), BigInt::one());
    }

    #[test]
    fn expansions_of_examples() {
        let e = expand(&rat(1, 3).into(), 50).unwrap();
        assert_eq!(e.digits, vec![dg(1, 1)]);
        assert_eq!(e.terminator, Terminator::Finite);

        let e = expand(&rat(2, 7).into(), 50).unwrap();
        assert_eq!(e.digits, vec![dg(2, -1), dg(4, -1)]);
        assert_eq!(e.terminator, Terminator::Tail2m1);

        let e = expand(&q(-1, 1, 2, 1), 50).unwrap();
        assert_eq!(e.digits, vec![dg(1, 1)]);
        assert_eq!(e.terminator, Terminator::Periodic { start: 0 });

        let e = expand(&Real::zero(), 50).unwrap();
        assert!(e.digits.is_empty());
        assert_eq!(e.terminator, Terminator::Tail2m1);

        let e = expand(&Real::one(), 50).unwrap();
        assert!(e.digits.is_empty());
        assert_eq!(e.terminator, Terminator::Finite);

        assert!(expand(&rat(3, 2).into(), 5).is_err());
    }

    #[test]
    fn two_expansions() {
        let [a, b] = all_expansions(&rat(1, 3)).unwrap();
        assert_eq!(a.digits, vec![dg(1, 1)]);
        assert_eq!(b.digits, vec![dg(2, -1)]);

        let [a, b] = all_expansions(&rat(1, 2)).unwrap();
        assert_eq!(a.digits, vec![dg(3, -1)]);
        assert_eq!(b.digits, vec![dg(1, 1)]);
        assert_eq!(b.terminator, Terminator::Tail2m1);

        let [a, b] = all_expansions(&rat(3, 5)).unwrap();
        assert_eq!(a.digits, vec![dg(2, 1)]);
        assert_eq!(b.digits, vec![dg(3, -1)]);

        assert!(all_expansions(&rat(0, 1)).is_err());
        assert!(all_expansions(&rat(1, 1)).is_err());
    }

    #[test]
    fn evaluation() {
        let finite = Expansion::new(vec![dg(1, 1)], Terminator::Finite).unwrap();
        assert_eq!(evaluate(&finite).unwrap(), rat(1, 3).into());
        let tail = Expansion::new(vec![dg(2, -1), dg(4, -1)], Terminator::Tail2m1).unwrap();
        assert_eq!(evaluate(&tail).unwrap(), rat(2, 7).into());
        let per = Expansion::new(vec![dg(1, 1)], Terminator::Periodic { start: 0 }).unwrap();
        assert_eq!(evaluate(&per).unwrap(), q(-1, 1, 2, 1));
        // The display form pulls square factors out of the discriminant.
        assert_eq!(evaluate(&per).unwrap().radicand(), Some(&BigInt::from(2)));
        assert!(Expansion::new(vec![dg(1, 1)], Terminator::Periodic { start: 1 }).is_err());
    }

    #[test]
    fn periods() {
        let x = QuadIrr::new(-1, 1, 2, 1).unwrap();
        assert_eq!(detect_period(&x, DEFAULT_PERIOD_CAP).unwrap(), (0, 1));
        for x in [
            QuadIrr::new(-1, 1, 5, 2).unwrap(),
            QuadIrr::new(0, 1, 2, 2).unwrap(),
            QuadIrr::new(-3, 1, 13, 2).unwrap(),
        ] {
            let (pre, per) = detect_period(&x, DEFAULT_PERIOD_CAP).unwrap();
            let e = expand(&x.clone().into(), DEFAULT_PERIOD_CAP).unwrap();
            assert_eq!(e.terminator, Terminator::Periodic { start: pre });
            assert_eq!(e.digits.len(), pre + per);
            assert_eq!(evaluate(&e).unwrap(), Real::Quad(x));
        }
        assert_eq!(
            detect_period(&QuadIrr::new(-1, 1, 2, 1).unwrap(), 0),
            Err(Error::IterationCap(0))
        );
    }

    #[test]
    fn stream_unrolls_tails() {
        let e = expand(&rat(2, 7).into(), 50).unwrap();
        assert_eq!(e.take(4), vec![dg(2, -1), dg(4, -1), dg(2, -1), dg(2, -1)]);
        let e = expand(&rat(1, 3).into(), 50).unwrap();
        assert_eq!(e.take(4), vec![dg(1, 1)]);
    }

    #[test]
    fn orbit_matches_expand() {
        let x: Real = rat(5, 11).into();
        let from_orbit: Vec<_> = ZetaOrbit::new(&x).unwrap().map(|(_, d)| d).collect();
        let e = expand(&x, 100).unwrap();
        assert_eq!(e.terminator, Terminator::Finite);
        assert_eq!(from_orbit, e.digits);

        let x: Real = rat(8, 11).into();
        let e = expand(&x, 100).unwrap();
        assert_eq!(e.terminator, Terminator::Tail2m1);
        let from_orbit: Vec<_> = ZetaOrbit::new(&x).unwrap().take(e.digits.len() + 3).map(|(_, d)| d).collect();
        assert_eq!(from_orbit, e.take(e.digits.len() + 3));
    }
}
