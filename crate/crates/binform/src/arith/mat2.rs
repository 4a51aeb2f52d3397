//! 2x2 unimodular matrices over Z and `Z[i]`.
//!
//! The coefficient ring is a type parameter, so the "ring tag" of a matrix is
//! checked at compile time: products of matrices over different rings do not
//! typecheck. Everything produced by the reduction routines has determinant
//! exactly 1 (integer arithmetic, no rounding).

use super::gaussian::GaussInt;
use num::BigInt;
use std::fmt;

/// Minimal ring interface for matrix entries.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for BigInt {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for GaussInt {
    fn zero() -> Self {
        GaussInt::zero()
    }
    fn one() -> Self {
        GaussInt::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

/// Row-major 2x2 matrix [[a, b], [c, d]].
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<T: Ring> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

/// Unimodular matrix over Z.
pub type UniMatZ = Mat2<BigInt>;
/// Unimodular matrix over `Z[i]`.
pub type UniMatZi = Mat2<GaussInt>;

impl<T: Ring> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn det(&self) -> T {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    /// Matrix product self * rhs.
    pub fn mul(&self, rhs: &Self) -> Self {
        Mat2 {
            a: self.a.mul(&rhs.a).add(&self.b.mul(&rhs.c)),
            b: self.a.mul(&rhs.b).add(&self.b.mul(&rhs.d)),
            c: self.c.mul(&rhs.a).add(&self.d.mul(&rhs.c)),
            d: self.c.mul(&rhs.b).add(&self.d.mul(&rhs.d)),
        }
    }

    /// Inverse of a determinant-1 matrix: [[d, -b], [-c, a]]. Exact; panics
    /// if det != 1.
    pub fn inv(&self) -> Self {
        assert!(self.det() == T::one(), "inv requires determinant 1");
        Mat2 {
            a: self.d.clone(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.a.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Mat2 {
            a: self.a.neg(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.d.neg(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Identity in PSL2: equal to +I or -I.
    pub fn is_pm_identity(&self) -> bool {
        self.is_identity() || *self == Self::identity().neg()
    }
}

impl UniMatZ {
    /// S = [[0, -1], [1, 0]], acting as z -> -1/z.
    pub fn s() -> Self {
        Mat2::new(
            BigInt::from(0),
            BigInt::from(-1),
            BigInt::from(1),
            BigInt::from(0),
        )
    }

    /// T = [[1, 1], [0, 1]], acting as z -> z + 1.
    pub fn t() -> Self {
        Self::t_pow(&BigInt::from(1))
    }

    /// T^k = [[1, k], [0, 1]].
    pub fn t_pow(k: &BigInt) -> Self {
        Mat2::new(BigInt::from(1), k.clone(), BigInt::from(0), BigInt::from(1))
    }
}

impl UniMatZi {
    /// S = [[0, -1], [1, 0]] over `Z[i]`.
    pub fn s() -> Self {
        Mat2::new(
            GaussInt::zero(),
            -GaussInt::one(),
            GaussInt::one(),
            GaussInt::zero(),
        )
    }

    /// Translation [[1, g], [0, 1]], acting as z -> z + g.
    pub fn translation(g: GaussInt) -> Self {
        Mat2::new(GaussInt::one(), g, GaussInt::zero(), GaussInt::one())
    }

    /// diag(i, -i); det = 1. Conjugation by this unit maps a Hermitian form's
    /// middle coefficient b to -b, i.e. z -> -z on H3.
    pub fn unit_i() -> Self {
        Mat2::new(
            GaussInt::i(),
            GaussInt::zero(),
            GaussInt::zero(),
            -GaussInt::i(),
        )
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_squared_is_minus_identity() {
        let s = UniMatZ::s();
        let s2 = s.mul(&s);
        assert!(!s2.is_identity());
        assert!(s2.is_pm_identity());
    }

    #[test]
    fn t_times_t_inverse_is_identity() {
        let t = UniMatZ::t();
        assert!(t.mul(&t.inv()).is_identity());
    }

    #[test]
    fn st_has_order_three_in_psl2() {
        let st = UniMatZ::s().mul(&UniMatZ::t());
        let cube = st.mul(&st).mul(&st);
        assert!(cube.is_pm_identity());
    }

    #[test]
    fn determinant_multiplicative_over_gauss() {
        let m = UniMatZi::translation(GaussInt::new(2, -3)).mul(&UniMatZi::s());
        let n = UniMatZi::unit_i().mul(&UniMatZi::translation(GaussInt::new(-1, 1)));
        let lhs = m.mul(&n).det();
        let rhs = m.det() * n.det();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, GaussInt::one());
    }

    #[test]
    fn inverse_is_exact() {
        let m = UniMatZi::s()
            .mul(&UniMatZi::translation(GaussInt::new(4, 7)))
            .mul(&UniMatZi::unit_i());
        assert!(m.mul(&m.inv()).is_identity());
        assert!(m.inv().mul(&m).is_identity());
    }
}
