use num_bigint::BigInt;

use crate::arith::{Parity, Rational, Real};
use crate::convergents::{principal_convergents_upto, ConvergentTriple};
use crate::error::{Error, Result};
use crate::oocf::ZetaOrbit;

use super::eicf::{eicf_convergents, eicf_expand};
use super::rcf::{continuants, locate_intermediate, rcf_expand, RcfExpansion};

/// RCF of `x` carried far enough that its last convergent denominator
/// exceeds `qmax`, or complete.
pub fn rcf_expand_past(x: &Real, qmax: &BigInt) -> Result<RcfExpansion> {
    let mut n = 16;
    loop {
        let e = rcf_expand(x, n)?;
        if e.is_finite() {
            return Ok(e);
        }
        let (_, q) = continuants(e.digits()).pop().unwrap();
        if &q > qmax {
            return Ok(e);
        }
        n *= 2;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediateReport {
    /// Each principal convergent with its `(level, j)` among the intermediate
    /// convergents, if found.
    pub located: Vec<(Rational, Option<(usize, BigInt)>)>,
    pub pass: bool,
}

/// Locates the principal convergents `p₁/q₁ … p_N/q_N`, `N ≤ n_max`, among the
/// intermediate convergents of the RCF of `x ∈ (0,1)`.
pub fn verify_intermediate(x: &Real, n_max: usize) -> Result<IntermediateReport> {
    x.ensure_unit()?;
    if x.is_zero() || x.is_one() {
        return Err(Error::OutOfUnitInterval(format!("{x} (need 0 < x < 1)")));
    }
    let mut row = ConvergentTriple::seed();
    let mut principals = Vec::new();
    for (_, d) in ZetaOrbit::new(x)?.take(n_max) {
        row = row.next(&d);
        principals.push(row.principal());
    }
    let qmax = principals.iter().map(|r| r.den().clone()).max().unwrap_or_default();
    let rcf = rcf_expand_past(x, &qmax)?;
    let located: Vec<_> = principals
        .into_iter()
        .map(|r| {
            let at = locate_intermediate(&rcf, &r);
            (r, at)
        })
        .collect();
    let pass = located.iter().all(|(_, at)| at.is_some());
    Ok(IntermediateReport { located, pass })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EicfBestReport {
    /// `Pₙ/Qₙ = 1 − p^E_n(1−x)/q^E_n(1−x)` for `n = 1..=n_max`.
    pub candidates: Vec<Rational>,
    /// The odd/odd candidates that are not principal convergents of `x`.
    pub missing: Vec<Rational>,
    pub one_rationals: usize,
    pub pass: bool,
}

/// Checks that every odd/odd `1 − p^E_n(1−x)/q^E_n(1−x)` is an OOCF
/// principal convergent of the irrational `x`.
pub fn eicf_best_to_oocf(x: &Real, n_max: usize) -> Result<EicfBestReport> {
    if x.is_rational() {
        return Err(Error::NotIrrational);
    }
    x.ensure_unit()?;
    let y = Real::one().sub(x)?;
    let digits = eicf_expand(&y, n_max)?.take(n_max);
    let candidates: Vec<Rational> = eicf_convergents(&digits)
        .into_iter()
        .map(|c| Rational::one().sub(&c))
        .collect();
    let odd: Vec<&Rational> = candidates
        .iter()
        .filter(|c| c.classify() == Parity::OneRational)
        .collect();
    let qmax = odd.iter().map(|r| r.den().clone()).max().unwrap_or_default();
    let principals = principal_convergents_upto(x, &qmax)?;
    let missing: Vec<Rational> = odd
        .iter()
        .filter(|c| !principals.contains(*c))
        .map(|c| (*c).clone())
        .collect();
    Ok(EicfBestReport {
        one_rationals: odd.len(),
        pass: missing.is_empty(),
        candidates,
        missing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, QuadIrr};

    #[test]
    fn intermediate_examples() {
        let x: Real = QuadIrr::new(-1, 1, 2, 1).unwrap().into();
        let rep = verify_intermediate(&x, 6).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.located[0].0, rat(1, 3));
        assert!(verify_intermediate(&rat(8, 11).into(), 10).unwrap().pass);
        assert!(verify_intermediate(&rat(1, 3).into(), 10).unwrap().pass);
        assert!(verify_intermediate(&rat(2, 7).into(), 12).unwrap().pass);
        assert!(verify_intermediate(&Real::one(), 3).is_err());
    }

    #[test]
    fn eicf_best_examples() {
        for x in [QuadIrr::new(-1, 1, 2, 1).unwrap(), QuadIrr::new(-1, 1, 5, 2).unwrap()] {
            let rep = eicf_best_to_oocf(&x.into(), 8).unwrap();
            assert!(rep.pass, "{rep:?}");
            assert_eq!(rep.candidates.len(), 8);
        }
        assert_eq!(eicf_best_to_oocf(&rat(1, 3).into(), 3), Err(Error::NotIrrational));
    }
}
