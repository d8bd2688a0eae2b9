//! Interval maps on `[0,1]`: Gauss, Farey, Romik, EICF and OOCF, the jump
//! transformation combinator, and a check of the invariant density `1/x`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::arith::{Mat2, Rational, Real};
use crate::error::{Error, Result};
use crate::oocf::OocfDigit;
use crate::rcf_bridge::EicfDigit;

fn third() -> Real {
    Real::Rational(Rational::new(1, 3).unwrap())
}

fn half() -> Real {
    Real::Rational(Rational::new(1, 2).unwrap())
}

fn int(n: impl Into<BigInt>) -> Real {
    Real::Rational(Rational::from_integer(n))
}

/// `G(x) = {1/x}`, `G(0) = 0`.
pub fn gauss(x: &Real) -> Result<Real> {
    x.ensure_unit()?;
    if x.is_zero() {
        return Ok(Real::zero());
    }
    let y = x.recip()?;
    y.sub(&int(y.floor()))
}

/// `F(x) = x/(1−x)` on `[0,1/2]`, `(1−x)/x` on `(1/2,1]`.
pub fn farey(x: &Real) -> Result<Real> {
    x.ensure_unit()?;
    if x.le(&half())? {
        Mat2::new(1, 0, -1, 1).apply(x)
    } else {
        Mat2::new(-1, 1, 1, 0).apply(x)
    }
}

/// `R(x) = x/(1−2x)`, `1/x − 2`, `2 − 1/x` on `[0,1/3)`, `[1/3,1/2)`, `[1/2,1]`.
pub fn romik(x: &Real) -> Result<Real> {
    x.ensure_unit()?;
    romik_matrix(romik_branch(x)?).apply(x)
}

fn romik_branch(x: &Real) -> Result<u8> {
    Ok(if x.lt(&third())? {
        0
    } else if x.lt(&half())? {
        1
    } else {
        2
    })
}

fn romik_matrix(branch: u8) -> Mat2 {
    match branch {
        0 => Mat2::new(1, 0, -2, 1),
        1 => Mat2::new(-2, 1, 1, 0),
        _ => Mat2::new(2, -1, 1, 0),
    }
}

/// EICF digit of `x ∈ (0,1]`: with `n = floor(1/x)`, `(n,+1)` for even `n`
/// and `(n+1,−1)` for odd `n`.
pub fn eicf_branch_of(x: &Real) -> Result<Option<EicfDigit>> {
    x.ensure_unit()?;
    if x.is_zero() {
        return Ok(None);
    }
    let n = x.recip()?.floor();
    Ok(Some(if n.is_even() {
        EicfDigit::new(n, 1)?
    } else {
        EicfDigit::new(n + 1u32, -1)?
    }))
}

/// `T_E(x) = η·(1/x − b)` for the EICF digit `(b, η)` of `x`; `T_E(0) = 0`.
pub fn eicf_map(x: &Real) -> Result<Real> {
    match eicf_branch_of(x)? {
        None => Ok(Real::zero()),
        Some(d) => {
            let y = x.recip()?.sub(&int(d.b().clone()))?;
            Ok(if d.eta() == 1 { y } else { y.neg() })
        }
    }
}

/// OOCF digit of `x ∈ [0,1)` under the half-open partition; `None` at 1.
///
/// With `k = floor(1/(1−x))`, `x` lies in `[(k−1)/k, k/(k+1))`, split at
/// `(2k−1)/(2k+1)` into `(k+1,−1)` on the left and `(k,1)` on the right.
pub fn oocf_branch_of(x: &Real) -> Result<Option<OocfDigit>> {
    x.ensure_unit()?;
    if x.is_one() {
        return Ok(None);
    }
    let k = Real::one().sub(x)?.recip()?.floor();
    let split = Rational::new(&k * 2u32 - 1u32, &k * 2u32 + 1u32)?;
    Ok(Some(if x.lt(&split.into())? {
        OocfDigit::new(k + 1u32, -1)?
    } else {
        OocfDigit::new(k, 1)?
    }))
}

/// `T(x)` on the branch of `x`; `T(1) = 1`.
pub fn oocf_map(x: &Real) -> Result<Real> {
    match crate::oocf::step(x)? {
        None => Ok(Real::one()),
        Some((_, next)) => Ok(next),
    }
}

/// `f_(a,ε)(t) = 1 − 1/(a + ε/(1+t))`.
pub fn branch_inverse(digit: &OocfDigit, t: &Real) -> Result<Real> {
    t.ensure_unit()?;
    digit.matrix().apply(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Gauss,
    Farey,
    Romik,
    Eicf,
    Oocf,
}

impl MapKind {
    pub fn apply(&self, x: &Real) -> Result<Real> {
        match self {
            MapKind::Gauss => gauss(x),
            MapKind::Farey => farey(x),
            MapKind::Romik => romik(x),
            MapKind::Eicf => eicf_map(x),
            MapKind::Oocf => oocf_map(x),
        }
    }

    /// The branch containing `x`, or `None` at a fixed endpoint with no
    /// digit (0 for Gauss and EICF, 1 for OOCF).
    pub fn branch_of(&self, x: &Real) -> Result<Option<BranchId>> {
        x.ensure_unit()?;
        Ok(match self {
            MapKind::Gauss => {
                if x.is_zero() {
                    None
                } else {
                    Some(BranchId::Gauss(x.recip()?.floor()))
                }
            }
            MapKind::Farey => Some(BranchId::Farey(if x.le(&half())? { 0 } else { 1 })),
            MapKind::Romik => Some(BranchId::Romik(romik_branch(x)?)),
            MapKind::Eicf => eicf_branch_of(x)?.map(BranchId::Eicf),
            MapKind::Oocf => oocf_branch_of(x)?.map(BranchId::Oocf),
        })
    }
}

/// A branch label of one of the maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BranchId {
    /// `floor(1/x)`
    Gauss(BigInt),
    /// 0 for `[0,1/2]`, 1 for `(1/2,1]`.
    Farey(u8),
    /// 0, 1, 2 from left to right.
    Romik(u8),
    Eicf(EicfDigit),
    Oocf(OocfDigit),
}

impl BranchId {
    pub fn kind(&self) -> MapKind {
        match self {
            BranchId::Gauss(_) => MapKind::Gauss,
            BranchId::Farey(_) => MapKind::Farey,
            BranchId::Romik(_) => MapKind::Romik,
            BranchId::Eicf(_) => MapKind::Eicf,
            BranchId::Oocf(_) => MapKind::Oocf,
        }
    }
}

/// Sets whose first-hitting time defines a jump transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HittingSet {
    /// `{0} ∪ [1/3, 1]`; the Romik jump over it is the EICF map.
    E1,
    /// `[0, 1/2] ∪ {1}`; the Romik jump over it is the OOCF map.
    E2,
    /// `{0} ∪ (1/2, 1]`; the Farey jump over it is the Gauss map.
    FareyToGauss,
}

impl HittingSet {
    pub fn contains(&self, x: &Real) -> Result<bool> {
        Ok(match self {
            HittingSet::E1 => x.is_zero() || third().le(x)?,
            HittingSet::E2 => x.le(&half())? || x.is_one(),
            HittingSet::FareyToGauss => x.is_zero() || half().lt(x)?,
        })
    }
}

pub const DEFAULT_JUMP_CAP: usize = 1_000_000;

/// `U^{n+1}(x)` where `n` is the first `j ≥ 0` with `U^j(x) ∈ E`.
pub fn jump_transform(base: MapKind, set: HittingSet, x: &Real) -> Result<Real> {
    jump_transform_capped(base, set, x, DEFAULT_JUMP_CAP)
}

pub fn jump_transform_capped(base: MapKind, set: HittingSet, x: &Real, cap: usize) -> Result<Real> {
    x.ensure_unit()?;
    let mut y = x.clone();
    for _ in 0..=cap {
        if set.contains(&y)? {
            return base.apply(&y);
        }
        y = base.apply(&y)?;
    }
    Err(Error::IterationCap(cap))
}

/// A rational interval with flags for each endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn half_open(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, true, false)
    }

    pub fn contains(&self, x: &Real) -> Result<bool> {
        let lo = x.cmp_exact(&self.lo.clone().into())?;
        let hi = x.cmp_exact(&self.hi.clone().into())?;
        let above = lo.is_gt() || (self.lo_closed && lo.is_eq());
        let below = hi.is_lt() || (self.hi_closed && hi.is_eq());
        Ok(above && below)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// The two OOCF branch intervals with index `k ≥ 1`:
/// `B(k+1,−1) = [(k−1)/k, (2k−1)/(2k+1))` and `B(k,1) = [(2k−1)/(2k+1), k/(k+1))`.
pub fn oocf_partition(k: u64) -> Result<[(OocfDigit, Interval); 2]> {
    if k == 0 {
        return Err(Error::InvalidArgument("branch index starts at 1".into()));
    }
    let k = BigInt::from(k);
    let left = Rational::new(&k - 1u32, k.clone())?;
    let mid = Rational::new(&k * 2u32 - 1u32, &k * 2u32 + 1u32)?;
    let right = Rational::new(k.clone(), &k + 1u32)?;
    Ok([
        (
            OocfDigit::new(&k + 1u32, -1)?,
            Interval::half_open(left, mid.clone())?,
        ),
        (OocfDigit::new(k, 1)?, Interval::half_open(mid, right)?),
    ])
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub lhs: f64,
    pub rhs: f64,
    pub diff: f64,
    /// Upper bound on the mass of the branches left out, `ln((K+1)/K)`.
    pub tail_bound: f64,
    pub pass: bool,
}

/// `μ(f(I))` with `μ = dx/x`, for a digit with exact rational image endpoints.
fn image_measure(digit: &OocfDigit, lo: &Rational, hi: &Rational) -> Result<f64> {
    let m = digit.matrix();
    let u = m.apply(&lo.clone().into())?;
    let v = m.apply(&hi.clone().into())?;
    let (u, v) = (u.as_rational().unwrap(), v.as_rational().unwrap());
    Ok(v.div(u)?.to_f64().ln().abs())
}

/// Compares `Σ_{k ≤ K} μ(f_(k+1,−1)(I)) + μ(f_(k,1)(I))` against `μ(I) = ln(hi/lo)`.
pub fn measure_check(interval: &Interval, k_max: u64, tol: f64) -> Result<MeasureReport> {
    let (lo, hi) = (&interval.lo, &interval.hi);
    if !lo.num().is_positive() || hi > &Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "measure check needs 0 < lo ≤ hi ≤ 1, got {interval}"
        )));
    }
    if k_max == 0 {
        return Err(Error::InvalidArgument("K must be at least 1".into()));
    }
    let mut lhs = 0.0;
    for k in 1..=k_max {
        let kk = BigInt::from(k);
        lhs += image_measure(&OocfDigit::new(&kk + 1u32, -1)?, lo, hi)?;
        lhs += image_measure(&OocfDigit::new(kk, 1)?, lo, hi)?;
    }
    let rhs = hi.div(lo)?.to_f64().ln();
    let diff = (lhs - rhs).abs();
    let tail_bound = ((k_max + 1) as f64 / k_max as f64).ln();
    Ok(MeasureReport {
        lhs,
        rhs,
        diff,
        tail_bound,
        pass: diff <= tol,
    })
}

/// The reduced denominator of a rational value.
pub fn denominator(x: &Real) -> Option<BigInt> {
    x.as_rational().map(|r| r.den().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Parity, QuadIrr};

    fn r(p: i64, q: i64) -> Real {
        rat(p, q).into()
    }

    fn dg(a: i64, e: i8) -> OocfDigit {
        OocfDigit::new(a, e).unwrap()
    }

    fn rationals(qmax: i64) -> impl Iterator<Item = Real> {
        (1..=qmax).flat_map(|q| (0..=q).filter(move |p| num_integer::gcd(*p, q) == 1).map(move |p| r(p, q)))
    }

    #[test]
    fn map_examples() {
        assert_eq!(romik(&r(1, 3)).unwrap(), r(1, 1));
        assert_eq!(oocf_map(&r(7, 10)).unwrap(), r(1, 2));
        assert_eq!(oocf_map(&r(0, 1)).unwrap(), r(0, 1));
        assert_eq!(oocf_map(&r(1, 1)).unwrap(), r(1, 1));
        let s = Real::Quad(QuadIrr::new(-1, 1, 2, 1).unwrap());
        assert_eq!(oocf_map(&s).unwrap(), s);
        assert_eq!(gauss(&r(2, 7)).unwrap(), r(1, 2));
        assert_eq!(gauss(&r(0, 1)).unwrap(), r(0, 1));
        assert_eq!(farey(&r(1, 3)).unwrap(), r(1, 2));
        assert_eq!(farey(&r(2, 3)).unwrap(), r(1, 2));
        assert_eq!(eicf_map(&r(1, 1)).unwrap(), r(1, 1));
        assert_eq!(eicf_map(&r(2, 7)).unwrap(), r(1, 2));
        assert!(oocf_map(&r(3, 2)).is_err());
        assert!(romik(&r(-1, 2)).is_err());
    }

    #[test]
    fn branch_examples() {
        assert_eq!(oocf_branch_of(&r(7, 10)).unwrap(), Some(dg(4, -1)));
        assert_eq!(oocf_branch_of(&r(3, 8)).unwrap(), Some(dg(1, 1)));
        assert_eq!(oocf_branch_of(&r(1, 3)).unwrap(), Some(dg(1, 1)));
        assert_eq!(oocf_branch_of(&r(1, 2)).unwrap(), Some(dg(3, -1)));
        assert_eq!(oocf_branch_of(&r(1, 1)).unwrap(), None);
        assert_eq!(branch_inverse(&dg(1, 1), &r(1, 1)).unwrap(), r(1, 3));
        assert_eq!(branch_inverse(&dg(2, -1), &r(0, 1)).unwrap(), r(0, 1));
    }

    #[test]
    fn jump_examples() {
        let e2 = jump_transform(MapKind::Romik, HittingSet::E2, &r(7, 10)).unwrap();
        assert_eq!(e2, r(1, 2));
        let e1 = jump_transform(MapKind::Romik, HittingSet::E1, &r(2, 7)).unwrap();
        assert_eq!(e1, eicf_map(&r(2, 7)).unwrap());
        assert_eq!(jump_transform(MapKind::Romik, HittingSet::E2, &r(0, 1)).unwrap(), r(0, 1));
        let g = jump_transform(MapKind::Farey, HittingSet::FareyToGauss, &r(2, 7)).unwrap();
        assert_eq!(g, gauss(&r(2, 7)).unwrap());
        assert_eq!(
            jump_transform_capped(MapKind::Romik, HittingSet::E2, &r(99, 100), 3),
            Err(Error::IterationCap(3))
        );
    }

    #[test]
    fn jump_equivalence_small() {
        for x in rationals(60) {
            let j2 = jump_transform(MapKind::Romik, HittingSet::E2, &x).unwrap();
            assert_eq!(j2, oocf_map(&x).unwrap(), "{x}");
            let j1 = jump_transform(MapKind::Romik, HittingSet::E1, &x).unwrap();
            assert_eq!(j1, eicf_map(&x).unwrap(), "{x}");
            let jg = jump_transform(MapKind::Farey, HittingSet::FareyToGauss, &x).unwrap();
            assert_eq!(jg, gauss(&x).unwrap(), "{x}");
        }
    }

    #[test]
    fn partition_tiles() {
        let mut edge = Rational::zero();
        for k in 1..=100u64 {
            for (digit, interval) in oocf_partition(k).unwrap() {
                assert_eq!(interval.lo, edge);
                assert!(interval.lo < interval.hi);
                let lo: Real = interval.lo.clone().into();
                assert_eq!(oocf_branch_of(&lo).unwrap(), Some(digit.clone()));
                assert!(interval.contains(&lo).unwrap());
                assert!(!interval.contains(&interval.hi.clone().into()).unwrap());
                edge = interval.hi.clone();
            }
        }
        assert_eq!(edge, rat(100, 101));
    }

    #[test]
    fn descent_and_parity() {
        for x in rationals(120) {
            let q = denominator(&x).unwrap();
            let rx = romik(&x).unwrap();
            assert!(denominator(&rx).unwrap() <= q);
            if x.is_zero() || x.is_one() {
                continue;
            }
            let t = oocf_map(&x).unwrap();
            assert!(denominator(&t).unwrap() < q, "{x}");
            let parity = |v: &Real| v.as_rational().unwrap().classify();
            assert_eq!(parity(&t), parity(&x), "{x}");
        }
        assert_eq!(rat(3, 7).classify(), Parity::OneRational);
    }

    #[test]
    fn inverse_round_trip() {
        for k in 1..=30i64 {
            for digit in [dg(k + 1, -1), dg(k, 1)] {
                // (k+1,−1) maps [0,1) onto its half-open branch, (k,1) maps (0,1].
                for t in [r(0, 1), r(1, 5), r(1, 2), r(5, 7), r(99, 100), r(1, 1)] {
                    let end = if digit.eps() == 1 { r(0, 1) } else { r(1, 1) };
                    if t == end {
                        assert_ne!(oocf_branch_of(&branch_inverse(&digit, &t).unwrap()).unwrap(), Some(digit.clone()));
                        continue;
                    }
                    let x = branch_inverse(&digit, &t).unwrap();
                    assert_eq!(oocf_branch_of(&x).unwrap(), Some(digit.clone()), "{digit} {t}");
                    assert_eq!(oocf_map(&x).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn measure_examples() {
        let i = Interval::closed(rat(1, 2), rat(1, 1)).unwrap();
        let rep = measure_check(&i, 2000, 5e-3).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!((rep.rhs - 2f64.ln()).abs() < 1e-15);
        let i = Interval::closed(rat(1, 3), rat(2, 3)).unwrap();
        assert!(measure_check(&i, 2000, 5e-3).unwrap().pass);
        let i = Interval::closed(rat(2, 5), rat(2, 5)).unwrap();
        let rep = measure_check(&i, 50, 1e-12).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (0.0, 0.0));
        let i = Interval::closed(rat(0, 1), rat(1, 2)).unwrap();
        assert!(measure_check(&i, 10, 1e-3).is_err());
    }
}
