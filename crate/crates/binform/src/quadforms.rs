//! Positive definite binary quadratic forms [a, b, c] = aX^2 + bXZ + cZ^2
//! over the rationals: the SL2(Z) action, the zero map into H2, Gauss
//! reduction with transcript, heights, and enumeration of the primitive
//! reduced classes of a fixed negative discriminant.
//!
//! All form arithmetic is exact; the zero map is the only floating path.

use crate::arith::gaussian::round_rational_ties_to_zero;
use crate::arith::UniMatZ;
use crate::error::Error;
use crate::halfplane::H2Point;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl QuadForm {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Self {
        QuadForm { a, b, c }
    }

    pub fn from_ints<A, B, C>(a: A, b: B, c: C) -> Self
    where
        A: Into<BigInt>,
        B: Into<BigInt>,
        C: Into<BigInt>,
    {
        QuadForm {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
            c: BigRational::from_integer(c.into()),
        }
    }

    /// Discriminant b^2 - 4ac, invariant under the unimodular action.
    pub fn disc(&self) -> BigRational {
        &self.b * &self.b - BigRational::from_integer(BigInt::from(4)) * &self.a * &self.c
    }

    /// a > 0 and disc < 0; equivalently both leading principal minors of the
    /// 2x2 matrix [[a, b/2], [b/2, c]] are positive.
    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.disc().is_negative()
    }

    fn check_definite(&self) -> Result<(), Error> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite)
        }
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer() && self.c.is_integer()
    }

    /// max(|a|, |b|, |c|).
    pub fn height(&self) -> BigRational {
        self.a.abs().max(self.b.abs()).max(self.c.abs())
    }

    /// Value Q(x, z), exact.
    pub fn eval(&self, x: &BigRational, z: &BigRational) -> BigRational {
        &self.a * x * x + &self.b * x * z + &self.c * z * z
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// The transformed form Q^M with M = [[m11, m12], [m21, m22]]:
///   a' = a m11^2 + b m11 m21 + c m21^2
///   b' = 2 (a m11 m12 + c m21 m22) + b (m11 m22 + m12 m21)
///   c' = a m12^2 + b m12 m22 + c m22^2
/// The discriminant is multiplied by det(M)^2, hence preserved.
pub fn act(m: &UniMatZ, q: &QuadForm) -> QuadForm {
    let r = |x: &BigInt| BigRational::from_integer(x.clone());
    let (m11, m12, m21, m22) = (r(&m.a), r(&m.b), r(&m.c), r(&m.d));
    let two = BigRational::from_integer(BigInt::from(2));
    QuadForm {
        a: &q.a * &m11 * &m11 + &q.b * &m11 * &m21 + &q.c * &m21 * &m21,
        b: two * (&q.a * &m11 * &m12 + &q.c * &m21 * &m22) + &q.b * (&m11 * &m22 + &m12 * &m21),
        c: &q.a * &m12 * &m12 + &q.b * &m12 * &m22 + &q.c * &m22 * &m22,
    }
}

/// Zero map: the root (-b + sqrt(disc)) / 2a of a positive definite form,
/// i.e. x = -b/2a, y = sqrt(|disc|)/2a > 0.
pub fn zero_map(q: &QuadForm) -> Result<H2Point, Error> {
    q.check_definite()?;
    let two_a = BigRational::from_integer(BigInt::from(2)) * &q.a;
    let x = -(&q.b) / &two_a;
    let y = rational_to_f64(&(-q.disc())).sqrt() / rational_to_f64(&two_a);
    Ok(H2Point::new(rational_to_f64(&x), y))
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Result of the arithmetic reduction test |b| <= a <= c.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reducedness {
    pub reduced: bool,
    /// |b| = a or a = c; on the boundary two reduced forms can be equivalent.
    pub boundary: bool,
}

/// A form is reduced iff its zero lies in the fundamental domain, which is
/// the coefficient condition |b| <= a <= c.
pub fn is_reduced(q: &QuadForm) -> Result<Reducedness, Error> {
    q.check_definite()?;
    let abs_b = q.b.abs();
    let reduced = abs_b <= q.a && q.a <= q.c;
    let boundary = reduced && (abs_b == q.a || q.a == q.c);
    Ok(Reducedness { reduced, boundary })
}

/// Is the form reduced under the sign convention (boundary forms carry a
/// non-negative middle coefficient)?
pub fn is_reduced_normalized(q: &QuadForm) -> Result<bool, Error> {
    let r = is_reduced(q)?;
    Ok(r.reduced && !(r.boundary && q.b.is_negative()))
}

/// Gauss reduction: returns the reduced representative R and M in SL2(Z)
/// with R = act(M, Q). Shift by T^delta with delta the nearest integer to
/// -b/2a (ties toward zero), invert with S while c < a, then normalize the
/// boundary sign. Each inversion strictly decreases a, so the loop
/// terminates; the guard only covers malformed input.
pub fn reduce(q: &QuadForm) -> Result<(QuadForm, UniMatZ), Error> {
    q.check_definite()?;
    let mut cur = q.clone();
    let mut m = UniMatZ::identity();
    let guard = 64 + q.c.numer().bits() as usize + q.c.denom().bits() as usize;
    for _ in 0..guard {
        let two_a = BigRational::from_integer(BigInt::from(2)) * &cur.a;
        let delta = round_rational_ties_to_zero(&(-(&cur.b) / two_a));
        if !delta.is_zero() {
            let step = UniMatZ::t_pow(&delta);
            cur = act(&step, &cur);
            m = m.mul(&step);
        }
        if cur.c < cur.a {
            let step = UniMatZ::s();
            cur = act(&step, &cur);
            m = m.mul(&step);
            continue;
        }
        // |b| <= a <= c now holds; fix the boundary sign convention
        if cur.b.is_negative() {
            if cur.a == cur.c {
                let step = UniMatZ::s();
                cur = act(&step, &cur);
                m = m.mul(&step);
            } else if -(&cur.b) == cur.a {
                let step = UniMatZ::t();
                cur = act(&step, &cur);
                m = m.mul(&step);
            }
        }
        debug_assert!(is_reduced_normalized(&cur).unwrap());
        return Ok((cur, m));
    }
    Err(Error::NonTermination)
}

/// Height of the SL2(Z)-class: the c-coefficient of the reduced
/// representative, the minimum of height over the orbit.
pub fn class_height(q: &QuadForm) -> Result<BigRational, Error> {
    let (r, _) = reduce(q)?;
    Ok(r.c)
}

/// The primitive reduced forms of one negative discriminant.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedClassList {
    pub discriminant: BigInt,
    pub forms: Vec<QuadForm>,
    pub count: usize,
}

impl ReducedClassList {
    /// The minimal class height over the list (the "special class" height);
    /// every form attaining it.
    pub fn minimal_height_forms(&self) -> Vec<&QuadForm> {
        let min = self.forms.iter().map(|f| f.c.clone()).min();
        match min {
            None => Vec::new(),
            Some(min) => self.forms.iter().filter(|f| f.c == min).collect(),
        }
    }
}

/// All primitive reduced integral forms of discriminant `disc` < 0, sorted
/// lexicographically by (a, b, c).
///
/// For each b with 3b^2 <= |disc| and b^2 = disc (mod 4), the products
/// ac = (b^2 - disc)/4 are split over divisors with |b| <= a <= c. Both sign
/// variants of b are classes except on the boundary (|b| = a or a = c),
/// where the convention keeps the non-negative one. Forms with
/// gcd(a, b, c) > 1 are omitted: the class lists of fixed discriminant count
/// primitive forms.
pub fn enumerate_reduced(disc: &BigInt) -> Result<ReducedClassList, Error> {
    if !disc.is_negative() {
        return Err(Error::InvalidDiscriminant(format!(
            "expected a negative discriminant, got {disc}"
        )));
    }
    let mut forms: Vec<QuadForm> = Vec::new();
    let abs_disc = disc.abs();
    let four = BigInt::from(4);
    let mut b = BigInt::zero();
    while &b * &b * 3 <= abs_disc {
        let num = &b * &b + &abs_disc;
        if (&num % &four).is_zero() {
            let ac = num / &four;
            for a in divisors_up_to_sqrt(&ac) {
                if a < b {
                    continue;
                }
                let c = &ac / &a;
                if a.gcd(&b).gcd(&c) != BigInt::one() {
                    continue;
                }
                let boundary = b == a || a == c;
                forms.push(QuadForm::from_ints(a.clone(), b.clone(), c.clone()));
                if !b.is_zero() && !boundary {
                    forms.push(QuadForm::from_ints(a, -b.clone(), c));
                }
            }
        }
        b += 1;
    }
    forms.sort();
    let count = forms.len();
    Ok(ReducedClassList {
        discriminant: disc.clone(),
        forms,
        count,
    })
}

/// Divisors d of n with d <= sqrt(n), ascending. Trial division; the
/// enumeration targets table-size discriminants.
fn divisors_up_to_sqrt(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
        }
        d += 1;
    }
    out
}
