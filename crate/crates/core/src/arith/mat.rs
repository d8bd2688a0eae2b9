use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::real::Real;
use crate::error::{Error, Result};

/// 2×2 integer matrix acting on reals as `x ↦ (a·x + b)/(c·x + d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    /// `[[0, 1], [1, 0]]`, the coset representative swapping the two cusps.
    pub fn swap() -> Self {
        Mat2::new(0, 1, 1, 0)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Inverse of a unimodular matrix (determinant ±1).
    pub fn unimodular_inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det.is_one() {
            Some(Mat2::new(self.d.clone(), -&self.b, -&self.c, self.a.clone()))
        } else if det == -BigInt::one() {
            Some(Mat2::new(-&self.d, self.b.clone(), self.c.clone(), -&self.a))
        } else {
            None
        }
    }

    /// Membership in the theta group: determinant 1 and congruent mod 2 to the
    /// identity or to `[[0, -1], [1, 0]]`.
    pub fn theta_member(&self) -> bool {
        if !self.det().is_one() {
            return false;
        }
        let odd = |x: &BigInt| x.is_odd();
        let identity = odd(&self.a) && !odd(&self.b) && !odd(&self.c) && odd(&self.d);
        let rotation = !odd(&self.a) && odd(&self.b) && odd(&self.c) && !odd(&self.d);
        identity || rotation
    }

    /// Membership in `Θ ∪ [[0,1],[1,0]]·Θ`.
    pub fn theta_coset_member(&self) -> bool {
        self.theta_member() || Mat2::swap().mul(self).theta_member()
    }

    /// Exact Möbius image of `x`.
    pub fn apply(&self, x: &Real) -> Result<Real> {
        match x {
            Real::Rational(r) => {
                let num = &self.a * r.num() + &self.b * r.den();
                let den = &self.c * r.num() + &self.d * r.den();
                if den.is_zero() {
                    return Err(Error::Pole);
                }
                Ok(Real::Rational(super::Rational::new(num, den)?))
            }
            Real::Quad(x) => {
                // (a·x + b)/(c·x + d) with x = (p + s√D)/q
                //   = (u + v√D)/(w + z√D), then rationalize by the conjugate.
                let u = &self.a * x.p() + &self.b * x.q();
                let v = &self.a * x.s();
                let w = &self.c * x.p() + &self.d * x.q();
                let z = &self.c * x.s();
                let dd = x.d();
                let norm = &w * &w - &z * &z * dd;
                if norm.is_zero() {
                    return Err(Error::Pole);
                }
                let p = &u * &w - &v * &z * dd;
                let s = &v * &w - &u * &z;
                Real::from_surd(p, s, norm, dd)
            }
        }
    }

    /// Image of the point at infinity, `a/c`, or `None` when it is infinity again.
    pub fn image_of_infinity(&self) -> Option<super::Rational> {
        super::Rational::new(self.a.clone(), self.c.clone()).ok()
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Default for Mat2 {
    fn default() -> Self {
        Mat2::identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Parity, QuadIrr, Rational};
    use std::collections::{HashSet, VecDeque};

    #[test]
    fn identity_and_apply() {
        let m = Mat2::new(0, 1, 1, 2);
        assert_eq!(Mat2::identity().mul(&m), m);
        assert_eq!(m.apply(&Real::one()).unwrap(), rat(1, 3).into());
        assert_eq!(Mat2::new(1, 0, 1, -1).apply(&Real::one()), Err(Error::Pole));
        assert_eq!(m.image_of_infinity().unwrap(), rat(0, 1));
        assert_eq!(Mat2::new(1, 0, 0, 1).image_of_infinity(), None);
    }

    #[test]
    fn composition_matches_product() {
        let a = Mat2::new(2, 3, 1, 2);
        let b = Mat2::new(0, 1, 1, 2);
        let xs: Vec<Real> = vec![
            rat(1, 3).into(),
            rat(5, 7).into(),
            QuadIrr::new(-1, 1, 2, 1).unwrap().into(),
            QuadIrr::new(-1, 1, 5, 2).unwrap().into(),
        ];
        for x in xs {
            let lhs = a.mul(&b).apply(&x).unwrap();
            let rhs = a.apply(&b.apply(&x).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(a.mul(&a.unimodular_inverse().unwrap()), Mat2::identity());
    }

    #[test]
    fn theta_membership() {
        assert!(Mat2::identity().theta_member());
        assert!(Mat2::new(0, -1, 1, 0).theta_member());
        assert!(Mat2::new(1, 2, 0, 1).theta_member());
        assert!(!Mat2::new(1, 1, 0, 1).theta_member());
        assert!(Mat2::new(0, 1, 1, 2).theta_coset_member());
    }

    /// Orbit of 1 under Θ, explored with the generators z+2, z-2, -1/z.
    fn theta_orbit_of_one(bound: i64) -> HashSet<(i64, i64)> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([(1i64, 1i64)]);
        seen.insert((1, 1));
        while let Some((p, q)) = queue.pop_front() {
            let next = [(p + 2 * q, q), (p - 2 * q, q), (-q, p)];
            for (np, nq) in next {
                let (np, nq) = if nq < 0 { (-np, -nq) } else { (np, nq) };
                if nq == 0 || np.abs() > bound || nq > bound {
                    continue;
                }
                if seen.insert((np, nq)) {
                    queue.push_back((np, nq));
                }
            }
        }
        seen
    }

    #[test]
    fn parity_rule_matches_theta_orbit() {
        let orbit = theta_orbit_of_one(110);
        for q in 1..=50i64 {
            for p in -q..=q {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let r = Rational::new(p, q).unwrap();
                let in_orbit = orbit.contains(&(p, q));
                assert_eq!(
                    in_orbit,
                    r.classify() == Parity::OneRational,
                    "{p}/{q}"
                );
            }
        }
    }
}
