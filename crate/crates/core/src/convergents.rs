//! Principal, sub- and pseudo-convergents of OOCF prefixes.
//!
//! For a prefix with digit-matrix product `M = [[p′, p″], [q′, q″]]` the three
//! convergents are the images of 1, ∞ and 0 under `M`:
//! `p/q = (p′+p″)/(q′+q″)`, `p′/q′` and `p″/q″`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{Mat2, Rational, Real};
use crate::error::{Error, Result};
use crate::oocf::OocfDigit;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTriple {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    pub p_sub: BigInt,
    pub q_sub: BigInt,
    pub p_pseudo: BigInt,
    pub q_pseudo: BigInt,
    /// `ε₁⋯εₙ`, 1 for the seed.
    pub eps_prod: i8,
    /// Sign of `pₙ₋₁qₙ − pₙqₙ₋₁`; 0 for the seed.
    pub det_sign: i8,
}

impl ConvergentTriple {
    /// The `n = 0` row: `p₀/q₀ = 1/1`, `p′₀/q′₀ = 1/0`, `p″₀/q″₀ = 0/1`.
    pub fn seed() -> Self {
        ConvergentTriple {
            n: 0,
            p: BigInt::one(),
            q: BigInt::one(),
            p_sub: BigInt::one(),
            q_sub: BigInt::zero(),
            p_pseudo: BigInt::zero(),
            q_pseudo: BigInt::one(),
            eps_prod: 1,
            det_sign: 0,
        }
    }

    pub fn principal(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone()).expect("q ≥ 1")
    }

    /// `None` for the seed, whose sub-convergent is ∞.
    pub fn sub(&self) -> Option<Rational> {
        Rational::new(self.p_sub.clone(), self.q_sub.clone()).ok()
    }

    pub fn pseudo(&self) -> Rational {
        Rational::new(self.p_pseudo.clone(), self.q_pseudo.clone()).expect("q″ ≥ 1")
    }

    /// `[[p′, p″], [q′, q″]]`.
    pub fn matrix(&self) -> Mat2 {
        Mat2::new(
            self.p_sub.clone(),
            self.p_pseudo.clone(),
            self.q_sub.clone(),
            self.q_pseudo.clone(),
        )
    }

    /// The next row, by `p′ₙ = aₙpₙ₋₁ − p′ₙ₋₁` and `p″ₙ = p′ₙ + εₙpₙ₋₁`.
    pub fn next(&self, digit: &OocfDigit) -> Self {
        let a = digit.a();
        let e = BigInt::from(digit.eps());
        let p_sub = a * &self.p - &self.p_sub;
        let q_sub = a * &self.q - &self.q_sub;
        let p_pseudo = &p_sub + &e * &self.p;
        let q_pseudo = &q_sub + &e * &self.q;
        let p = &p_sub + &p_pseudo;
        let q = &q_sub + &q_pseudo;
        let det = &self.p * &q - &p * &self.q;
        ConvergentTriple {
            n: self.n + 1,
            p,
            q,
            p_sub,
            q_sub,
            p_pseudo,
            q_pseudo,
            eps_prod: self.eps_prod * digit.eps(),
            det_sign: sign(&det),
        }
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Rows `n = 0..=len` by the scalar recursion, starting from the seed.
pub fn convergent_table(digits: &[OocfDigit]) -> Vec<ConvergentTriple> {
    let mut rows = Vec::with_capacity(digits.len() + 1);
    rows.push(ConvergentTriple::seed());
    for d in digits {
        let next = rows.last().unwrap().next(d);
        rows.push(next);
    }
    rows
}

/// The same table from running products of digit matrices.
pub fn convergent_table_matrix(digits: &[OocfDigit]) -> Vec<ConvergentTriple> {
    let mut rows = vec![ConvergentTriple::seed()];
    let mut m = Mat2::identity();
    let mut eps_prod = 1i8;
    for (i, d) in digits.iter().enumerate() {
        m = m.mul(&d.matrix());
        eps_prod *= d.eps();
        let prev = &rows[i];
        let p = &m.a + &m.b;
        let q = &m.c + &m.d;
        let det = &prev.p * &q - &p * &prev.q;
        rows.push(ConvergentTriple {
            n: i + 1,
            p,
            q,
            p_sub: m.a.clone(),
            q_sub: m.c.clone(),
            p_pseudo: m.b.clone(),
            q_pseudo: m.d.clone(),
            eps_prod,
            det_sign: sign(&det),
        });
    }
    rows
}

/// Principal convergents `pₙ/qₙ` with `qₙ ≤ qmax`, from the seed `1/1` on,
/// reading the digits of `x` until the bound or the expansion is exhausted.
pub fn principal_convergents_upto(x: &Real, qmax: &BigInt) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    let mut row = ConvergentTriple::seed();
    if &row.q > qmax {
        return Ok(out);
    }
    out.push(row.principal());
    for (_, digit) in crate::oocf::ZetaOrbit::new(x)? {
        row = row.next(&digit);
        if &row.q > qmax {
            break;
        }
        out.push(row.principal());
    }
    Ok(out)
}

/// Outcome of the ordering checks for one row against its predecessor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Betweenness {
    /// `x` lies between `pₙ/qₙ` and `p″ₙ/q″ₙ`, endpoints included.
    pub x_between_principal_pseudo: bool,
    /// `pₙ/qₙ` lies between `p′ₙ/q′ₙ` and `p″ₙ/q″ₙ`.
    pub principal_between_sub_pseudo: bool,
    /// `pₙ₋₁/qₙ₋₁` lies outside the closed interval spanned by `p′ₙ/q′ₙ`, `p″ₙ/q″ₙ`.
    pub previous_outside: bool,
    /// All three row-`n` values lie in the interval from `p″ₙ₋₁/q″ₙ₋₁`
    /// (included) to `pₙ₋₁/qₙ₋₁` (excluded).
    pub nested_in_previous: bool,
}

impl Betweenness {
    pub fn all(&self) -> bool {
        self.x_between_principal_pseudo
            && self.principal_between_sub_pseudo
            && self.previous_outside
            && self.nested_in_previous
    }
}

fn between(v: &Rational, a: &Rational, b: &Rational) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= v && v <= hi
}

/// Checks the ordering relations for row `cur` (with `n ≥ 1`) and its predecessor
/// `prev`. Fails when `x` is not in the image of `[0,∞]` under the row's
/// matrix, i.e. the row does not come from a prefix of the expansion of `x`.
pub fn betweenness_report(x: &Real, prev: &ConvergentTriple, cur: &ConvergentTriple) -> Result<Betweenness> {
    if cur.n == 0 || prev.n + 1 != cur.n {
        return Err(Error::InvalidArgument(
            "need consecutive rows with n ≥ 1".into(),
        ));
    }
    let (p, s, ps) = (
        cur.principal(),
        cur.sub().expect("n ≥ 1"),
        cur.pseudo(),
    );
    if !x.between(&s.clone().into(), &ps.clone().into())? {
        return Err(Error::PrefixMismatch);
    }
    let prev_p = prev.principal();
    let prev_ps = prev.pseudo();
    let in_prev = |v: &Rational| v != &prev_p && (v == &prev_ps || between(v, &prev_p, &prev_ps));
    Ok(Betweenness {
        x_between_principal_pseudo: x.between(&p.clone().into(), &ps.clone().into())?,
        principal_between_sub_pseudo: between(&p, &s, &ps),
        previous_outside: !between(&prev_p, &s, &ps),
        nested_in_previous: in_prev(&p) && in_prev(&s) && in_prev(&ps),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCertificate {
    /// `|x − pₙ/qₙ|`
    pub gap: Real,
    /// `2/qₙ`
    pub bound: Rational,
    pub certified: bool,
}

/// `|x − pₙ/qₙ|` compared exactly with `2/qₙ`.
pub fn convergence_gap(x: &Real, row: &ConvergentTriple) -> Result<GapCertificate> {
    let gap = x.sub(&row.principal().into())?.abs();
    let bound = Rational::new(2, row.q.clone())?;
    let certified = gap.cmp_exact(&bound.clone().into())? == Ordering::Less;
    Ok(GapCertificate {
        gap,
        bound,
        certified,
    })
}

/// Violations of the per-row identities along a table, as readable messages.
pub fn identity_violations(rows: &[ConvergentTriple]) -> Vec<String> {
    use crate::arith::Parity;
    let mut bad = Vec::new();
    for (i, r) in rows.iter().enumerate().skip(1) {
        let prev = &rows[i - 1];
        let n = r.n;
        if r.principal().classify() != Parity::OneRational {
            bad.push(format!("n={n}: principal {} is not odd/odd", r.principal()));
        }
        if r.sub().map(|s| s.classify()) != Some(Parity::InfRational) {
            bad.push(format!("n={n}: sub-convergent is not an ∞-rational"));
        }
        if r.pseudo().classify() != Parity::InfRational {
            bad.push(format!("n={n}: pseudo-convergent is not an ∞-rational"));
        }
        if r.p != &r.p_sub + &r.p_pseudo || r.q != &r.q_sub + &r.q_pseudo {
            bad.push(format!("n={n}: p ≠ p′ + p″"));
        }
        if (&r.p_sub * &r.q_pseudo - &r.p_pseudo * &r.q_sub).abs() != BigInt::one() {
            bad.push(format!("n={n}: |p′q″ − p″q′| ≠ 1"));
        }
        if (&prev.p * &r.q - &r.p * &prev.q).abs() != BigInt::from(2) {
            bad.push(format!("n={n}: |pₙ₋₁qₙ − pₙqₙ₋₁| ≠ 2"));
        }
        if r.q <= prev.q {
            bad.push(format!("n={n}: qₙ ≤ qₙ₋₁"));
        }
        // pₙ₋₁ = εₙ(p″ₙ − p′ₙ)
        let e = BigInt::from(r.eps_prod * prev.eps_prod);
        if prev.p != &e * (&r.p_pseudo - &r.p_sub) || prev.q != &e * (&r.q_pseudo - &r.q_sub) {
            bad.push(format!("n={n}: pₙ₋₁ ≠ εₙ(p″ₙ − p′ₙ)"));
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, QuadIrr};
    use crate::oocf::expand;

    fn dg(a: i64, e: i8) -> OocfDigit {
        OocfDigit::new(a, e).unwrap()
    }

    fn sqrt2m1() -> Real {
        QuadIrr::new(-1, 1, 2, 1).unwrap().into()
    }

    #[test]
    fn table_examples() {
        let t = convergent_table(&[dg(1, 1)]);
        assert_eq!(t[1].principal(), rat(1, 3));
        assert_eq!(t[1].sub(), Some(rat(0, 1)));
        assert_eq!(t[1].pseudo(), rat(1, 2));
        let t = convergent_table(&vec![dg(1, 1); 4]);
        let ps: Vec<_> = t[1..].iter().map(|r| r.principal()).collect();
        assert_eq!(ps, vec![rat(1, 3), rat(3, 7), rat(7, 17), rat(17, 41)]);
        assert_eq!(convergent_table(&[]), vec![ConvergentTriple::seed()]);
        assert_eq!(t[1].det_sign, 1);
    }

    #[test]
    fn matrix_form() {
        // A_(1,1)·[[1,−1],[1,0]] = [[1,0],[3,−1]]
        let m = dg(1, 1).matrix().mul(&Mat2::new(1, -1, 1, 0));
        assert_eq!(m, Mat2::new(1, 0, 3, -1));
        let digits = [dg(2, -1), dg(4, -1), dg(1, 1), dg(7, 1), dg(3, -1)];
        let rows = convergent_table_matrix(&digits);
        assert_eq!(rows, convergent_table(&digits));
        for r in &rows[1..] {
            let m = r.matrix();
            assert_eq!(m.apply(&Real::one()).unwrap(), r.principal().into());
            assert_eq!(m.apply(&Real::zero()).unwrap(), r.pseudo().into());
            assert_eq!(m.image_of_infinity(), r.sub());
        }
    }

    #[test]
    fn second_order_recursion() {
        // pₙ = (2aₙ + εₙ − 1)pₙ₋₁ + εₙ₋₁pₙ₋₂ with p₋₁ = −1, q₋₁ = 1, ε₀ = 1.
        let digits = [dg(1, 1), dg(3, -1), dg(2, 1), dg(2, -1), dg(5, 1)];
        let rows = convergent_table(&digits);
        let (mut pp, mut qp) = (BigInt::from(-1), BigInt::one());
        let (mut p, mut q) = (BigInt::one(), BigInt::one());
        let mut eps_prev = 1i64;
        for (d, r) in digits.iter().zip(&rows[1..]) {
            let c = 2 * d.a() + d.eps() - 1;
            let np = &c * &p + eps_prev * &pp;
            let nq = &c * &q + eps_prev * &qp;
            assert_eq!((&np, &nq), (&r.p, &r.q));
            (pp, qp, p, q) = (p, q, np, nq);
            eps_prev = d.eps() as i64;
        }
    }

    #[test]
    fn betweenness_examples() {
        let x = sqrt2m1();
        let rows = convergent_table(&expand(&x, 10).unwrap().take(10));
        for w in rows.windows(2) {
            assert!(betweenness_report(&x, &w[0], &w[1]).unwrap().all());
        }
        let x: Real = rat(1, 3).into();
        let rows = convergent_table(&[dg(1, 1)]);
        assert!(betweenness_report(&x, &rows[0], &rows[1]).unwrap().all());
        let x: Real = rat(2, 7).into();
        let rows = convergent_table(&expand(&x, 10).unwrap().take(6));
        for w in rows.windows(2) {
            assert!(betweenness_report(&x, &w[0], &w[1]).unwrap().all());
        }
        let rows = convergent_table(&[dg(5, 1)]);
        assert_eq!(
            betweenness_report(&sqrt2m1(), &rows[0], &rows[1]),
            Err(Error::PrefixMismatch)
        );
    }

    #[test]
    fn gap_examples() {
        let x = sqrt2m1();
        let rows = convergent_table(&vec![dg(1, 1); 3]);
        assert_eq!(rows[3].principal(), rat(7, 17));
        assert!(convergence_gap(&x, &rows[3]).unwrap().certified);
        let x: Real = rat(2, 7).into();
        let rows = convergent_table(&expand(&x, 10).unwrap().digits);
        assert!(convergence_gap(&x, &rows[1]).unwrap().certified);
        let x: Real = rat(1, 3).into();
        let rows = convergent_table(&[dg(1, 1)]);
        let g = convergence_gap(&x, &rows[1]).unwrap();
        assert!(g.gap.is_zero() && g.certified);
    }

    #[test]
    fn principal_list_of_sqrt2() {
        let list = principal_convergents_upto(&sqrt2m1(), &BigInt::from(100)).unwrap();
        assert_eq!(list, vec![rat(1, 1), rat(1, 3), rat(3, 7), rat(7, 17), rat(17, 41), rat(41, 99)]);
        let list = principal_convergents_upto(&rat(1, 3).into(), &BigInt::from(100)).unwrap();
        assert_eq!(list, vec![rat(1, 1), rat(1, 3)]);
        let list = principal_convergents_upto(&Real::one(), &BigInt::from(100)).unwrap();
        assert_eq!(list, vec![rat(1, 1)]);
    }

    #[test]
    fn identities_hold_on_mixed_digits() {
        let digits = [dg(1, 1), dg(2, -1), dg(2, -1), dg(9, 1), dg(4, -1), dg(1, 1)];
        assert!(identity_violations(&convergent_table(&digits)).is_empty());
    }
}
