//! Gaussian integers `Z[i]` with arbitrary-size components.

use num::complex::Complex64;
use num::{BigInt, BigRational, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element re + im*i of `Z[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new<A: Into<BigInt>, B: Into<BigInt>>(re: A, im: B) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        GaussInt::new(0, 0)
    }

    pub fn one() -> Self {
        GaussInt::new(1, 0)
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn from_int(n: BigInt) -> Self {
        GaussInt {
            re: n,
            im: BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate. An involution: conj(conj(x)) = x.
    pub fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Norm re^2 + im^2. Nonnegative, zero iff the element is zero, and
    /// multiplicative.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// One of the four units 1, -1, i, -i.
    pub fn is_unit(&self) -> bool {
        self.norm() == BigInt::from(1)
    }

    /// Euclidean gcd in `Z[i]`, defined up to units.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.euclid_rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Remainder of self by m under nearest-quotient division; the norm of
    /// the remainder is at most norm(m)/2.
    fn euclid_rem(&self, m: &Self) -> Self {
        let n = m.norm();
        // self/m = self*conj(m)/norm(m); round both coordinates.
        let num = self.clone() * m.conj();
        let q = GaussInt {
            re: round_div(&num.re, &n),
            im: round_div(&num.im, &n),
        };
        self.clone() - q * m.clone()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(bigint_to_f64(&self.re), bigint_to_f64(&self.im))
    }

    /// Nearest Gaussian integer to the exact rational point (re, im),
    /// rounding ties toward zero in each coordinate.
    pub fn nearest(re: &BigRational, im: &BigRational) -> Self {
        GaussInt {
            re: round_rational_ties_to_zero(re),
            im: round_rational_ties_to_zero(im),
        }
    }
}

/// Nearest integer to n/d (d > 0), ties toward zero.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    round_rational_ties_to_zero(&BigRational::new(n.clone(), d.clone()))
}

/// Nearest integer to an exact rational, ties toward zero.
pub fn round_rational_ties_to_zero(r: &BigRational) -> BigInt {
    let floor = r.floor().to_integer();
    let frac = r - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    if frac > half {
        floor + 1
    } else if frac < half {
        floor
    } else {
        // tie: the candidate closer to zero is floor when floor >= 0
        if floor.is_negative() {
            floor + 1
        } else {
            floor
        }
    }
}

pub(crate) fn bigint_to_f64(n: &BigInt) -> f64 {
    use num::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for GaussInt {
    /// Table-style rendering: `0`, `3`, `-i`, `2i`, `1-i`, `-2+3i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let one = BigInt::from(1);
        let im_part = if self.im == one {
            "i".to_string()
        } else if self.im == -&one {
            "-i".to_string()
        } else {
            format!("{}i", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{}", im_part)
        } else if self.im.is_negative() {
            write!(f, "{}{}", self.re, im_part)
        } else {
            write!(f, "{}+{}", self.re, im_part)
        }
    }
}
