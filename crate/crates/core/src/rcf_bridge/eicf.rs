use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::arith::{Mat2, Rational, Real};
use crate::convergents::ConvergentTriple;
use crate::error::{Error, Result};
use crate::maps::{eicf_branch_of, eicf_map, oocf_map};
use crate::oocf::{expand, Expansion, OocfDigit, Terminator};

/// EICF partial quotient `(b, η)`: `b` even and positive, `η = ±1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EicfDigit {
    b: BigInt,
    eta: i8,
}

impl EicfDigit {
    pub fn new(b: impl Into<BigInt>, eta: i8) -> Result<Self> {
        let b = b.into();
        if !b.is_positive() || b.is_odd() || !(eta == 1 || eta == -1) {
            return Err(Error::IllegalDigit {
                a: b,
                eps: eta as i64,
            });
        }
        Ok(EicfDigit { b, eta })
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn eta(&self) -> i8 {
        self.eta
    }

    /// `t ↦ 1/(b + η·t)`.
    pub fn matrix(&self) -> Mat2 {
        Mat2::new(0, 1, self.eta, self.b.clone())
    }

    /// The repeating digit of the expansion of 1.
    pub fn tail() -> Self {
        EicfDigit {
            b: BigInt::from(2),
            eta: -1,
        }
    }
}

impl fmt::Display for EicfDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b, self.eta)
    }
}

impl fmt::Debug for EicfDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Finite` means the orbit reached 0; `Tail2m1` means it reached 1, after
/// which `(2,−1)` repeats.
pub type EicfExpansion = Expansion<EicfDigit>;

pub fn eicf_expand(x: &Real, max_digits: usize) -> Result<EicfExpansion> {
    x.ensure_unit()?;
    let mut seen = HashMap::new();
    let mut digits = Vec::new();
    let mut zeta = x.clone();
    loop {
        if zeta.is_zero() {
            return Expansion::new(digits, Terminator::Finite);
        }
        if zeta.is_one() {
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
        digits.push(eicf_branch_of(&zeta)?.expect("zeta > 0"));
        zeta = eicf_map(&zeta)?;
    }
}

impl EicfExpansion {
    pub fn take(&self, n: usize) -> Vec<EicfDigit> {
        self.stream(EicfDigit::tail()).take(n).collect()
    }
}

/// `p^E_n/q^E_n` for `n = 1..=len`. The running product
/// `[[0,1],[1,0]]·∏[[bᵢ, ηᵢ],[1, 0]]` is `[[pₙ, ηₙpₙ₋₁],[qₙ, ηₙqₙ₋₁]]`,
/// the map `t ↦ 0 + 1/(b₁ + η₁/(⋯ + ηₙ₋₁/(bₙ + ηₙ/t)))`, read at `t = ∞`.
pub fn eicf_convergents(digits: &[EicfDigit]) -> Vec<Rational> {
    let mut m = Mat2::swap();
    digits
        .iter()
        .map(|d| {
            m = m.mul(&Mat2::new(d.b.clone(), d.eta, 1, 0));
            Rational::new(m.a.clone(), m.c.clone()).expect("qₙ ≥ 1")
        })
        .collect()
}

/// `φ: (k+1,−1) ↦ (2k,−1)`, `(k,1) ↦ (2k,1)`.
pub fn phi(d: &OocfDigit) -> EicfDigit {
    let b = if d.eps() == 1 {
        d.a() * 2u32
    } else {
        (d.a() - 1u32) * 2u32
    };
    EicfDigit::new(b, d.eps()).expect("image of a legal digit")
}

/// `f(x) = (1 − x)/(1 + x)`, an involution of `[0,1]` swapping 0 and 1.
pub fn conjugacy_f(x: &Real) -> Result<Real> {
    Mat2::new(-1, 1, 1, 1).apply(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub digits: usize,
    /// `f(T(ζ)) = T_E(f(ζ))` along the first `digits` tails of `x`.
    pub maps_commute: bool,
    /// The EICF digits of `f(x)` are the `φ`-images of the OOCF digits of `x`.
    pub digits_correspond: bool,
    /// `p^E_n(f(x))/q^E_n(f(x)) = f(pₙ(x)/qₙ(x))`.
    pub convergents_correspond: bool,
    /// Every EICF convergent of `f(x)` is an ∞-rational.
    pub eicf_convergents_inf_rational: bool,
    pub pass: bool,
}

/// Checks the conjugacy between the two maps on the first `n` digits of `x`.
pub fn verify_conjugacy(x: &Real, n: usize) -> Result<ConjugacyReport> {
    use crate::arith::Parity;
    x.ensure_unit()?;
    let fx = conjugacy_f(x)?;
    let oocf = expand(x, n)?;
    let eicf = eicf_expand(&fx, n)?;

    let mut maps_commute = true;
    let mut zeta = x.clone();
    for _ in 0..n.max(1) {
        let lhs = conjugacy_f(&oocf_map(&zeta)?)?;
        let rhs = eicf_map(&conjugacy_f(&zeta)?)?;
        maps_commute &= lhs == rhs;
        let next = oocf_map(&zeta)?;
        if next == zeta {
            break;
        }
        zeta = next;
    }

    let o_digits = oocf.take(n);
    let e_digits = eicf.take(n);
    let ends_match = matches!(
        (oocf.terminator, eicf.terminator),
        (Terminator::Finite, Terminator::Finite)
            | (Terminator::Tail2m1, Terminator::Tail2m1)
            | (Terminator::Periodic { .. }, Terminator::Periodic { .. })
            | (Terminator::Truncated, Terminator::Truncated)
    );
    let digits_correspond =
        ends_match && o_digits.iter().map(phi).collect::<Vec<_>>() == e_digits;

    let e_conv = eicf_convergents(&e_digits);
    let mut row = ConvergentTriple::seed();
    let mut convergents_correspond = e_conv.len() == o_digits.len();
    for (d, ec) in o_digits.iter().zip(&e_conv) {
        row = row.next(d);
        convergents_correspond &= conjugacy_f(&row.principal().into())? == Real::from(ec.clone());
    }
    let eicf_convergents_inf_rational = e_conv.iter().all(|c| c.classify() == Parity::InfRational);

    let pass = maps_commute && digits_correspond && convergents_correspond && eicf_convergents_inf_rational;
    Ok(ConjugacyReport {
        digits: n,
        maps_commute,
        digits_correspond,
        convergents_correspond,
        eicf_convergents_inf_rational,
        pass,
    })
}
