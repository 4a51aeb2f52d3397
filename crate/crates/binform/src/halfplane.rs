//! Geometry of the upper half-plane H2 and hyperbolic 3-space H3: Mobius
//! actions of SL2(Z) and SL2(`Z[i]`), membership in the classical fundamental
//! domains, reduction of points into them with a transcript matrix, and
//! decomposition of SL2(Z) matrices into S/T words.

use crate::arith::gaussian::bigint_to_f64;
use crate::arith::{GaussInt, UniMatZ, UniMatZi};
use crate::error::Error;
use num::complex::Complex64;
use num::{BigInt, Signed, Zero};

/// Default tolerance band for fundamental-domain membership.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Iteration guard for the reduction loops; the exact-arithmetic termination
/// argument makes this unreachable for honest inputs.
const LOOP_GUARD: usize = 256;

/// Point x + iy of the upper half-plane, y > 0 strictly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H2Point {
    pub x: f64,
    pub y: f64,
}

impl H2Point {
    pub fn new(x: f64, y: f64) -> Self {
        assert!(y > 0.0, "H2 point needs y > 0, got {y}");
        H2Point { x, y }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn abs(self) -> f64 {
        self.to_complex().norm()
    }
}

/// Point (z, t) of hyperbolic 3-space, t > 0 strictly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H3Point {
    pub z: Complex64,
    pub t: f64,
}

impl H3Point {
    pub fn new(z: Complex64, t: f64) -> Self {
        assert!(t > 0.0, "H3 point needs t > 0, got {t}");
        H3Point { z, t }
    }
}

/// Classification against a fundamental domain with a tolerance band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

impl Membership {
    pub fn is_in(self) -> bool {
        self != Membership::Outside
    }
}

fn mat_f64(m: &UniMatZ) -> [f64; 4] {
    [
        bigint_to_f64(&m.a),
        bigint_to_f64(&m.b),
        bigint_to_f64(&m.c),
        bigint_to_f64(&m.d),
    ]
}

/// Mobius action of a determinant-1 integer matrix on H2.
///
/// The image height satisfies Im(Mz) = Im(z)/|cz+d|^2, so it stays positive.
pub fn mobius_h2(m: &UniMatZ, p: H2Point) -> H2Point {
    let [a, b, c, d] = mat_f64(m);
    let z = p.to_complex();
    let denom = c * z + d;
    let w = (a * z + b) / denom;
    H2Point::new(w.re, p.y / denom.norm_sqr())
}

/// Mobius action of a determinant-1 matrix over `Z[i]` on H3:
/// z* = ((az+b)(conj(cz+d)) + a conj(c) t^2) / D, t* = t / D with
/// D = |cz+d|^2 + |c|^2 t^2.
pub fn mobius_h3(m: &UniMatZi, p: H3Point) -> H3Point {
    let a = m.a.to_complex();
    let b = m.b.to_complex();
    let c = m.c.to_complex();
    let d = m.d.to_complex();
    let denom = (c * p.z + d).norm_sqr() + c.norm_sqr() * p.t * p.t;
    let z_new = ((a * p.z + b) * (c * p.z + d).conj() + a * c.conj() * p.t * p.t) / denom;
    H3Point::new(z_new, p.t / denom)
}

/// Membership in F = { |Re z| <= 1/2, |z| >= 1 }, with a +-tol band on both
/// constraints.
pub fn in_f_h2(p: H2Point, tol: f64) -> Membership {
    let re = p.x.abs();
    let abs = p.abs();
    if re > 0.5 + tol || abs < 1.0 - tol {
        return Membership::Outside;
    }
    if re >= 0.5 - tol || abs <= 1.0 + tol {
        return Membership::Boundary;
    }
    Membership::Interior
}

/// Membership in the fundamental domain of PSL2(`Z[i]`) on H3:
/// 0 <= |Re z| <= 1/2, 0 <= Im z <= 1/2, |z|^2 + t^2 >= 1.
pub fn in_f_h3_qi(p: H3Point, tol: f64) -> Membership {
    let re = p.z.re.abs();
    let im = p.z.im;
    let sphere = p.z.norm_sqr() + p.t * p.t;
    if re > 0.5 + tol || im < -tol || im > 0.5 + tol || sphere < 1.0 - tol {
        return Membership::Outside;
    }
    if re >= 0.5 - tol || im <= tol || im >= 0.5 - tol || sphere <= 1.0 + tol {
        return Membership::Boundary;
    }
    Membership::Interior
}

/// Move a point into F by the shift/invert loop, returning the landed point
/// and the transcript M with `mobius_h2(&M, p) == landed`.
pub fn reduce_point_h2(p: H2Point) -> Result<(H2Point, UniMatZ), Error> {
    if !p.y.is_finite() || !p.x.is_finite() {
        return Err(Error::NonTermination);
    }
    let mut z = p;
    let mut m = UniMatZ::identity();
    for _ in 0..LOOP_GUARD {
        let shift = z.x.round();
        if shift != 0.0 {
            z = H2Point::new(z.x - shift, z.y);
            m = UniMatZ::t_pow(&BigInt::from(-(shift as i64))).mul(&m);
        }
        if in_f_h2(z, MEMBERSHIP_TOL).is_in() {
            return Ok((z, m));
        }
        // |z| < 1: invert
        let w = -z.to_complex().inv();
        z = H2Point::new(w.re, w.im);
        m = UniMatZ::s().mul(&m);
    }
    Err(Error::NonTermination)
}

/// Move a point of H3 into the `Z[i]` fundamental domain. Moves used:
/// translation by the nearest Gaussian integer, the unit conjugation
/// diag(i,-i) (z -> -z) to fold Im(z) into [0, 1/2], and inversion S.
pub fn reduce_point_h3_qi(p: H3Point) -> Result<(H3Point, UniMatZi), Error> {
    if !p.t.is_finite() || !p.z.re.is_finite() || !p.z.im.is_finite() {
        return Err(Error::NonTermination);
    }
    let mut q = p;
    let mut m = UniMatZi::identity();
    for _ in 0..LOOP_GUARD {
        let g = GaussInt::new(-q.z.re.round() as i64, -q.z.im.round() as i64);
        if !g.is_zero() {
            let step = UniMatZi::translation(g);
            q = mobius_h3(&step, q);
            m = step.mul(&m);
        }
        if q.z.im < -MEMBERSHIP_TOL {
            let step = UniMatZi::unit_i();
            q = mobius_h3(&step, q);
            m = step.mul(&m);
        }
        if in_f_h3_qi(q, MEMBERSHIP_TOL).is_in() {
            return Ok((q, m));
        }
        if q.z.norm_sqr() + q.t * q.t < 1.0 - MEMBERSHIP_TOL {
            let step = UniMatZi::s();
            q = mobius_h3(&step, q);
            m = step.mul(&m);
        }
    }
    Err(Error::NonTermination)
}

/// One token of an S/T word.
#[derive(Debug, Clone, PartialEq)]
pub enum StWord {
    S,
    /// T^k for any integer k.
    TPow(BigInt),
}

/// Decompose a determinant-1 integer matrix into a word in S and powers of T
/// whose product equals +-M (the PSL2 identity). The token count is at most
/// 4 * bitlength(max |entry|) + 8: each Euclidean step shrinks the lower-left
/// entry by at least half and contributes two tokens.
pub fn decompose_st(m: &UniMatZ) -> Vec<StWord> {
    assert!(m.det() == BigInt::from(1), "decompose_st needs det 1");
    let mut word: Vec<StWord> = Vec::new();
    let mut cur = m.clone();
    // Invariant: m = +- (product of word so far) * cur; peel letters off the
    // left of cur until it is +-T^k.
    loop {
        if cur.c.is_zero() {
            // cur = +-[[1, b], [0, 1]]
            let b = if cur.a.is_negative() {
                -cur.b.clone()
            } else {
                cur.b.clone()
            };
            if !b.is_zero() {
                word.push(StWord::TPow(b));
            }
            break;
        }
        if cur.a.magnitude() >= cur.c.magnitude() {
            // shift: q = nearest integer to a/c, then a - qc has |.| <= |c|/2
            let q = nearest_quotient(&cur.a, &cur.c);
            if !q.is_zero() {
                word.push(StWord::TPow(q.clone()));
                cur = UniMatZ::t_pow(&-q).mul(&cur);
            }
        }
        // invert: swap rows with sign
        word.push(StWord::S);
        cur = UniMatZ::s().inv().mul(&cur);
    }
    word
}

/// Nearest integer to a/c, ties toward zero.
fn nearest_quotient(a: &BigInt, c: &BigInt) -> BigInt {
    use crate::arith::gaussian::round_rational_ties_to_zero;
    round_rational_ties_to_zero(&num::BigRational::new(a.clone(), c.clone()))
}

/// Multiply an S/T word back out.
pub fn st_word_product(word: &[StWord]) -> UniMatZ {
    let mut acc = UniMatZ::identity();
    for w in word {
        let m = match w {
            StWord::S => UniMatZ::s(),
            StWord::TPow(k) => UniMatZ::t_pow(k),
        };
        acc = acc.mul(&m);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn translation_moves_i() {
        let p = mobius_h2(&UniMatZ::t(), H2Point::new(0.0, 1.0));
        assert!(close(p.x, 1.0, 1e-15) && close(p.y, 1.0, 1e-15));
    }

    #[test]
    fn s_fixes_i() {
        let p = mobius_h2(&UniMatZ::s(), H2Point::new(0.0, 1.0));
        assert!(p.x.abs() < 1e-15 && close(p.y, 1.0, 1e-15));
    }

    #[test]
    fn stabilizers_of_the_corner_points() {
        // ST fixes rho = exp(2 pi i / 3), TS fixes -conj(rho) = exp(pi i / 3)
        let rho = H2Point::new(-0.5, 3f64.sqrt() / 2.0);
        let st = UniMatZ::s().mul(&UniMatZ::t());
        let q = mobius_h2(&st, rho);
        assert!((q.x - rho.x).abs() < 1e-14 && (q.y - rho.y).abs() < 1e-14);

        let mrho = H2Point::new(0.5, 3f64.sqrt() / 2.0);
        let ts = UniMatZ::t().mul(&UniMatZ::s());
        let q = mobius_h2(&ts, mrho);
        assert!((q.x - mrho.x).abs() < 1e-14 && (q.y - mrho.y).abs() < 1e-14);
    }

    #[test]
    fn h2_membership_classification() {
        assert_eq!(
            in_f_h2(H2Point::new(0.0, 2.0), MEMBERSHIP_TOL),
            Membership::Interior
        );
        let rho = H2Point::new(-0.5, 3f64.sqrt() / 2.0);
        assert_eq!(in_f_h2(rho, MEMBERSHIP_TOL), Membership::Boundary);
        assert_eq!(
            in_f_h2(H2Point::new(0.1, 0.2), MEMBERSHIP_TOL),
            Membership::Outside
        );
    }

    #[test]
    fn reduce_pure_translation() {
        let (q, m) = reduce_point_h2(H2Point::new(5.0, 2.0)).unwrap();
        assert!(q.x.abs() < 1e-12 && close(q.y, 2.0, 1e-15));
        assert_eq!(m, UniMatZ::t_pow(&BigInt::from(-5)));
    }

    #[test]
    fn reduce_point_in_f_is_fixed() {
        let p = H2Point::new(0.25, 1.5);
        let (q, m) = reduce_point_h2(p).unwrap();
        assert!(m.is_pm_identity());
        assert_eq!((q.x, q.y), (p.x, p.y));
    }

    /// Independent oracle: exhaust S/T words of length <= 12 and check the
    /// loop's landing point is reachable and in F.
    #[test]
    fn reduce_against_word_search() {
        let p = H2Point::new(0.1, 0.2);
        let (q, m) = reduce_point_h2(p).unwrap();
        assert!(in_f_h2(q, MEMBERSHIP_TOL).is_in());
        let image = mobius_h2(&m, p);
        assert!(close(image.x, q.x, 1e-10) && close(image.y, q.y, 1e-10));

        // breadth-first over words of length <= 12 with letters S, T, T^-1
        let letters = [
            UniMatZ::s(),
            UniMatZ::t(),
            UniMatZ::t_pow(&BigInt::from(-1)),
        ];
        let mut frontier = vec![(p, UniMatZ::identity())];
        let mut found: Option<H2Point> = None;
        'outer: for _ in 0..12 {
            let mut next = Vec::new();
            for (pt, mat) in &frontier {
                for letter in &letters {
                    let npt = mobius_h2(letter, *pt);
                    let nmat = letter.mul(mat);
                    if in_f_h2(npt, MEMBERSHIP_TOL).is_in() {
                        found = Some(npt);
                        break 'outer;
                    }
                    next.push((npt, nmat));
                }
            }
            frontier = next;
        }
        let found = found.expect("word search must reach F");
        assert!(close(found.x, q.x, 1e-9));
        assert!(close(found.y, q.y, 1e-9));
    }

    #[test]
    fn h3_translation_and_inversion() {
        let p = H3Point::new(Complex64::new(0.0, 0.0), 1.0);
        let moved = mobius_h3(&UniMatZi::translation(GaussInt::new(3, 4)), p);
        assert!((moved.z - Complex64::new(3.0, 4.0)).norm() < 1e-15);
        assert!(close(moved.t, 1.0, 1e-15));

        // S fixes (0, 1)
        let fixed = mobius_h3(&UniMatZi::s(), p);
        assert!(fixed.z.norm() < 1e-15 && close(fixed.t, 1.0, 1e-15));

        // S: (z,t) -> (-conj z, t)/(|z|^2+t^2)
        let q = H3Point::new(Complex64::new(0.3, 0.4), 0.5);
        let s = mobius_h3(&UniMatZi::s(), q);
        let d = q.z.norm_sqr() + q.t * q.t;
        assert!((s.z - (-q.z.conj() / d)).norm() < 1e-15);
        assert!(close(s.t, q.t / d, 1e-15));
    }

    #[test]
    fn h3_membership() {
        // (0, 2) sits on the Im(z) = 0 wall (the conjugation fold), so it is
        // a boundary point of the closed domain, though comfortably inside
        // every other constraint.
        let tall = H3Point::new(Complex64::new(0.0, 0.0), 2.0);
        assert_eq!(in_f_h3_qi(tall, MEMBERSHIP_TOL), Membership::Boundary);
        assert!(in_f_h3_qi(tall, MEMBERSHIP_TOL).is_in());
        // off the wall it is interior
        let inner = H3Point::new(Complex64::new(0.1, 0.2), 2.0);
        assert_eq!(in_f_h3_qi(inner, MEMBERSHIP_TOL), Membership::Interior);
        let p2 = H3Point::new(Complex64::new(0.5, 0.0), 3f64.sqrt() / 2.0);
        assert_eq!(in_f_h3_qi(p2, MEMBERSHIP_TOL), Membership::Boundary);
        let low = H3Point::new(Complex64::new(0.3, 0.3), 0.1);
        assert_eq!(in_f_h3_qi(low, MEMBERSHIP_TOL), Membership::Outside);
    }

    #[test]
    fn reduce_h3_examples() {
        let id = reduce_point_h3_qi(H3Point::new(Complex64::new(0.0, 0.0), 2.0)).unwrap();
        assert!(id.1.is_identity());

        for p in [
            H3Point::new(Complex64::new(3.0, 4.0), 1.0),
            H3Point::new(Complex64::new(0.1, 0.1), 0.2),
            H3Point::new(Complex64::new(-0.7, -2.3), 0.4),
        ] {
            let (q, m) = reduce_point_h3_qi(p).unwrap();
            assert!(
                in_f_h3_qi(q, MEMBERSHIP_TOL).is_in(),
                "landed outside: {q:?}"
            );
            let image = mobius_h3(&m, p);
            assert!((image.z - q.z).norm() < 1e-10 * q.t.max(1.0));
            assert!(close(image.t, q.t, 1e-10));
        }
    }

    #[test]
    fn decompose_simple_words() {
        let s_word = decompose_st(&UniMatZ::s());
        assert_eq!(st_word_product(&s_word), UniMatZ::s());

        let t3 = UniMatZ::t_pow(&BigInt::from(3));
        let w = decompose_st(&t3);
        assert_eq!(w, vec![StWord::TPow(BigInt::from(3))]);
    }

    #[test]
    fn decompose_reconstructs_up_to_sign() {
        let m = crate::arith::Mat2::new(
            BigInt::from(2),
            BigInt::from(1),
            BigInt::from(1),
            BigInt::from(1),
        );
        let w = decompose_st(&m);
        let prod = st_word_product(&w);
        assert!(prod == m || prod == m.neg(), "got {prod}");

        // a large product of letters round-trips too
        let big = UniMatZ::t_pow(&BigInt::from(7))
            .mul(&UniMatZ::s())
            .mul(&UniMatZ::t_pow(&BigInt::from(-3)))
            .mul(&UniMatZ::s())
            .mul(&UniMatZ::t_pow(&BigInt::from(11)));
        let w = decompose_st(&big);
        let prod = st_word_product(&w);
        assert!(prod == big || prod == big.neg());
    }

    #[test]
    fn transitivity_witness_matrix() {
        // [[z, z-1], [1, 1]] has det 1 and sends infinity to z
        for (re, im) in [(0.3, 1.2), (-2.0, 0.5), (4.4, -1.1)] {
            let z = Complex64::new(re, im);
            let (a, b, c, d) = (
                z,
                z - 1.0,
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
            );
            assert!((a * d - b * c - 1.0).norm() < 1e-14);
            // image of infinity under the fractional linear map is a/c
            assert!((a / c - z).norm() < 1e-14);
        }
    }
}
