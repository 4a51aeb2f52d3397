//! Binary Hermitian forms over the Gaussian integers:
//! Q(X, Z) = a X conj(X) + b X conj(Z) + conj(b) conj(X) Z + c Z conj(Z),
//! written [a, b, c] with a, c integers and b in `Z[i]`.
//!
//! SL2(`Z[i]`) acts by A -> M* A M on the Hermitian matrix A = [[a, b],
//! [conj b, c]]; the discriminant det A = ac - |b|^2 is preserved. The zero
//! map sends a positive definite form to (-b/a, sqrt(disc)/a) in H3, and a
//! form is reduced when that point lies in the fundamental domain of
//! PSL2(`Z[i]`). On integral forms membership is decided exactly:
//! 2|Re b| <= a, -a <= 2 Im b <= 0 and a <= c.
//!
//! Enumeration covers positive definite forms only. For disc > 0 the full
//! class number of Hermitian forms is twice the positive definite count
//! (negation swaps positive and negative definite forms); indefinite forms
//! (disc < 0) are out of scope.

use crate::arith::{GaussInt, Mat2, UniMatZi};
use crate::error::Error;
use crate::halfplane::H3Point;
use num::complex::Complex64;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HermForm {
    pub a: BigInt,
    pub b: GaussInt,
    pub c: BigInt,
}

impl HermForm {
    pub fn new<A: Into<BigInt>, C: Into<BigInt>>(a: A, b: GaussInt, c: C) -> Self {
        HermForm {
            a: a.into(),
            b,
            c: c.into(),
        }
    }

    pub fn from_ints(a: i64, b_re: i64, b_im: i64, c: i64) -> Self {
        HermForm::new(a, GaussInt::new(b_re, b_im), c)
    }

    /// Discriminant ac - |b|^2 (the determinant of the Hermitian matrix).
    pub fn disc(&self) -> BigInt {
        &self.a * &self.c - self.b.norm()
    }

    /// a > 0 and disc > 0.
    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.disc().is_positive()
    }

    fn check_definite(&self) -> Result<(), Error> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite)
        }
    }

    /// Content gcd(a, |gcd of b components|, c) is not used by the class
    /// lists here; the tables of Hermitian classes include imprimitive forms.
    pub fn height(&self) -> BigInt {
        self.a
            .abs()
            .max(self.b.re.abs())
            .max(self.b.im.abs())
            .max(self.c.abs())
    }
}

impl fmt::Display for HermForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// The action (M, Q) -> M* Q M on Hermitian matrices, computed exactly in
/// `Z[i]`. Positive definiteness and the discriminant are preserved for
/// det M = 1.
pub fn act_herm(m: &UniMatZi, q: &HermForm) -> HermForm {
    let a = GaussInt::from_int(q.a.clone());
    let c = GaussInt::from_int(q.c.clone());
    let matrix = Mat2::new(a, q.b.clone(), q.b.conj(), c);
    let m_star = Mat2::new(m.a.conj(), m.c.conj(), m.b.conj(), m.d.conj());
    let n = m_star.mul(&matrix).mul(m);
    debug_assert!(n.a.is_real() && n.d.is_real());
    debug_assert!(n.b == n.c.conj());
    HermForm {
        a: n.a.re.clone(),
        b: n.b,
        c: n.d.re.clone(),
    }
}

/// Zero map into H3: z = -b/a, t = sqrt(disc)/a.
pub fn zero_map_herm(q: &HermForm) -> Result<H3Point, Error> {
    q.check_definite()?;
    let a = q.a.to_f64().unwrap_or(f64::NAN);
    let z = -q.b.to_complex() / a;
    let t = q.disc().to_f64().unwrap_or(f64::NAN).sqrt() / a;
    Ok(H3Point::new(z, t))
}

/// Exact membership of the zero in the closed fundamental domain of
/// PSL2(`Z[i]`): 2|Re b| <= a, -a <= 2 Im b <= 0, a <= c (the last is
/// |z|^2 + t^2 = c/a >= 1). No floating arithmetic, so boundary rows of the
/// class tables are decided exactly.
pub fn is_reduced_herm(q: &HermForm) -> Result<bool, Error> {
    q.check_definite()?;
    let two = BigInt::from(2);
    Ok(&two * q.b.re.abs() <= q.a
        && &two * &q.b.im <= BigInt::zero()
        && &two * -&q.b.im <= q.a
        && q.a <= q.c)
}

const LOOP_GUARD: usize = 256;

/// Reduce a positive definite integral Hermitian form, returning the reduced
/// form and M in SL2(`Z[i]`) with result = act_herm(M, Q).
///
/// Moves: translate b by a*g for g the nearest Gaussian integer to -b/a
/// (ties toward zero), invert with S while c < a, and fold with the unit
/// diag(i, -i) (b -> -b) when Im b > 0. Each inversion strictly decreases
/// the positive integer a, so the loop terminates.
pub fn reduce_herm(q: &HermForm) -> Result<(HermForm, UniMatZi), Error> {
    q.check_definite()?;
    let mut cur = q.clone();
    let mut m = UniMatZi::identity();
    for _ in 0..LOOP_GUARD {
        let g = GaussInt::nearest(
            &num::BigRational::new(-cur.b.re.clone(), cur.a.clone()),
            &num::BigRational::new(-cur.b.im.clone(), cur.a.clone()),
        );
        if !g.is_zero() {
            let step = UniMatZi::translation(g);
            cur = act_herm(&step, &cur);
            m = m.mul(&step);
        }
        if cur.c < cur.a {
            let step = UniMatZi::s();
            cur = act_herm(&step, &cur);
            m = m.mul(&step);
            continue;
        }
        if cur.b.im.is_positive() {
            let step = UniMatZi::unit_i();
            cur = act_herm(&step, &cur);
            m = m.mul(&step);
        }
        debug_assert!(is_reduced_herm(&cur)?);
        return Ok((cur, m));
    }
    Err(Error::NonTermination)
}

/// The reduced integral Hermitian forms of one positive discriminant.
#[derive(Debug, Clone, PartialEq)]
pub struct HermClassList {
    pub discriminant: BigInt,
    pub forms: Vec<HermForm>,
    pub count: usize,
}

/// All integral Hermitian forms over `Z[i]` of discriminant `disc` > 0 whose
/// zero lies in the closed fundamental domain, sorted by (a, Re b, Im b, c).
///
/// Every lattice point of the closed domain is listed; boundary-equivalent
/// forms (|Re b| = a/2, Im b in {0, -a/2} or a = c) are therefore listed
/// once per representative, which is the convention of the classical class
/// tables. Membership forces a^2 <= 2 disc, bounding the search.
pub fn enumerate_reduced_herm(disc: &BigInt) -> Result<HermClassList, Error> {
    if !disc.is_positive() {
        return Err(Error::InvalidDiscriminant(format!(
            "expected a positive discriminant, got {disc}"
        )));
    }
    let mut forms = Vec::new();
    let two_disc = BigInt::from(2) * disc;
    let mut a = BigInt::one();
    while &a * &a <= two_disc {
        let half = &a / BigInt::from(2); // floor(a/2)
        let half_i = half.to_i64().expect("a/2 fits i64 for table-size discs");
        for re in -half_i..=half_i {
            for im in -half_i..=0 {
                let b = GaussInt::new(re, im);
                let num = disc + b.norm();
                if (&num % &a).is_zero() {
                    let c = &num / &a;
                    if c >= a {
                        forms.push(HermForm::new(a.clone(), b.clone(), c));
                    }
                }
            }
        }
        a += 1;
    }
    forms.sort_by(|p, q| (&p.a, &p.b.re, &p.b.im, &p.c).cmp(&(&q.a, &q.b.re, &q.b.im, &q.c)));
    let count = forms.len();
    Ok(HermClassList {
        discriminant: disc.clone(),
        forms,
        count,
    })
}

/// Canonical representative of a reduced form under the boundary
/// identifications of the closed domain (translation flip at |Re b| = a/2,
/// conjugation-unit flip at Im b in {0, -a/2}, S-flip at a = c): the
/// lexicographic minimum of the orbit. Lets tests compare classes without
/// caring which closed-domain lattice point a reduction landed on.
pub fn boundary_class_rep(q: &HermForm) -> HermForm {
    let key = |f: &HermForm| (f.a.clone(), f.b.re.clone(), f.b.im.clone(), f.c.clone());
    let mut seen = BTreeSet::new();
    let mut queue = vec![q.clone()];
    while let Some(f) = queue.pop() {
        if !seen.insert(key(&f)) {
            continue;
        }
        let two = BigInt::from(2);
        let mut push = |m: UniMatZi| {
            let g = act_herm(&m, &f);
            debug_assert_eq!(g.disc(), f.disc());
            queue.push(g);
        };
        if &two * f.b.re.abs() == f.a && !f.b.re.is_zero() {
            let sign = if f.b.re.is_positive() { -1 } else { 1 };
            push(UniMatZi::translation(GaussInt::new(sign, 0)));
        }
        if f.b.im.is_zero() && !f.b.re.is_zero() {
            push(UniMatZi::unit_i());
        }
        if &two * -&f.b.im == f.a {
            // b -> -(b + a i): translate by i, then conjugate by diag(i,-i)
            push(UniMatZi::unit_i().mul(&UniMatZi::translation(GaussInt::new(0, 1))));
        }
        if f.a == f.c {
            push(UniMatZi::s());
        }
    }
    let (a, re, im, c) = seen.into_iter().next().expect("orbit nonempty");
    HermForm::new(a, GaussInt { re, im }, c)
}

/// An imaginary quadratic field Q(sqrt(D)), D < 0 squarefree, with its ring
/// of integers `Z[omega]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImaginaryQuadraticField {
    d: i64,
}

impl ImaginaryQuadraticField {
    pub fn new(d: i64) -> Result<Self, Error> {
        if d >= 0 || !is_squarefree(-d) {
            return Err(Error::InvalidDiscriminant(format!(
                "need a negative squarefree integer, got {d}"
            )));
        }
        Ok(ImaginaryQuadraticField { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Field discriminant: D when D = 1 mod 4, else 4D.
    pub fn field_disc(&self) -> i64 {
        if self.d.rem_euclid(4) == 1 {
            self.d
        } else {
            4 * self.d
        }
    }

    /// The nine imaginary quadratic fields of class number one.
    pub fn class_number_one(&self) -> bool {
        matches!(self.d, -1 | -2 | -3 | -7 | -11 | -19 | -43 | -67 | -163)
    }

    /// omega = (1 + sqrt(D))/2 when D = 1 mod 4, else sqrt(D).
    pub fn omega(&self) -> Complex64 {
        let root = (-self.d as f64).sqrt();
        if self.d.rem_euclid(4) == 1 {
            Complex64::new(0.5, root / 2.0)
        } else {
            Complex64::new(0.0, root)
        }
    }

    /// Embedding of x + y*omega.
    pub fn embed(&self, x: i64, y: i64) -> Complex64 {
        Complex64::new(x as f64, 0.0) + self.omega() * (y as f64)
    }

    /// Norm of x + y*omega, exact.
    pub fn norm(&self, x: i64, y: i64) -> i64 {
        if self.d.rem_euclid(4) == 1 {
            x * x + x * y + y * y * (1 - self.d) / 4
        } else {
            x * x - self.d * y * y
        }
    }

    /// Ring elements of norm at most `bound`, as (x, y) coordinates.
    pub fn elements_up_to_norm(&self, bound: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        // |y| sqrt(|d|)/k <= sqrt(bound) with k = 2 in the 1 mod 4 case
        let ylim = if self.d.rem_euclid(4) == 1 {
            (2.0 * (bound as f64 / -self.d as f64).sqrt()).floor() as i64
        } else {
            ((bound as f64 / -self.d as f64).sqrt()).floor() as i64
        };
        for y in -ylim..=ylim {
            let mut x = 0;
            loop {
                let mut hit = false;
                if self.norm(x, y) <= bound {
                    out.push((x, y));
                    hit = true;
                }
                if x != 0 && self.norm(-x, y) <= bound {
                    out.push((-x, y));
                    hit = true;
                }
                if !hit {
                    break;
                }
                x += 1;
            }
        }
        out
    }

    /// Is the ideal <u, v> the whole ring? Decided exactly from the index of
    /// the Z-lattice spanned by u, omega*u, v, omega*v inside Z^2 (the gcd
    /// of the 2x2 minors), valid for every D and in particular the
    /// non-Euclidean class number one fields.
    pub fn coprime(&self, u: (i64, i64), v: (i64, i64)) -> bool {
        if u == (0, 0) && v == (0, 0) {
            return false;
        }
        let mul_omega = |(x, y): (i64, i64)| -> (i64, i64) {
            if self.d.rem_euclid(4) == 1 {
                (y * (self.d - 1) / 4, x + y)
            } else {
                (y * self.d, x)
            }
        };
        let gens = [u, mul_omega(u), v, mul_omega(v)];
        let mut g: i64 = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let det = gens[i].0 * gens[j].1 - gens[i].1 * gens[j].0;
                g = gcd_i64(g, det);
            }
        }
        g.abs() == 1
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn is_squarefree(n: i64) -> bool {
    if n <= 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Outcome of the bounded B_K membership check.
#[derive(Debug, Clone, PartialEq)]
pub enum BkMembership {
    /// No violation among coprime pairs with norms up to the search bound.
    InsideBounded,
    /// Violating coprime pair (c, d) in (x, y) coordinates.
    Outside { c: (i64, i64), d: (i64, i64) },
}

/// Bounded check of the B_K condition |cz + d|^2 + |c|^2 t^2 >= 1 over all
/// coprime pairs (c, d) of ring elements with norms up to `search_bound`.
/// Once a point is reported outside it stays outside for every larger
/// bound. The condition cuts out the fundamental-domain core only for
/// class number one fields; for other K it is still the stated inequality
/// over coprime pairs.
pub fn in_b_k(p: &H3Point, k: &ImaginaryQuadraticField, search_bound: i64) -> BkMembership {
    let elements = k.elements_up_to_norm(search_bound.max(1));
    for &c in &elements {
        for &d in &elements {
            if (c == (0, 0) && d == (0, 0)) || !k.coprime(c, d) {
                continue;
            }
            let ce = k.embed(c.0, c.1);
            let de = k.embed(d.0, d.1);
            let val = (ce * p.z + de).norm_sqr() + ce.norm_sqr() * p.t * p.t;
            if val < 1.0 - 1e-12 {
                return BkMembership::Outside { c, d };
            }
        }
    }
    BkMembership::InsideBounded
}

/// The strip P_K = { 0 <= Re z <= 1, 0 <= Im z <= sqrt(|d_K|)/2 }, which is
/// the base region F_K for every D other than -1 and -3.
pub fn in_p_k(z: Complex64, k: &ImaginaryQuadraticField, tol: f64) -> bool {
    let top = (-(k.field_disc()) as f64).sqrt() / 2.0;
    z.re >= -tol && z.re <= 1.0 + tol && z.im >= -tol && z.im <= top + tol
}

/// The base region F_K of the fundamental domain: the Q(i) square for
/// D = -1, the hexagonal region for D = -3, and P_K otherwise.
pub fn in_f_strip(z: Complex64, k: &ImaginaryQuadraticField, tol: f64) -> bool {
    match k.d() {
        -1 => z.re.abs() <= 0.5 + tol && z.im >= -tol && z.im <= 0.5 + tol,
        -3 => {
            let s = 3f64.sqrt() / 3.0;
            let upper = z.re >= -tol && s * z.re <= z.im + tol && z.im <= s * (1.0 - z.re) + tol;
            let lower = z.re >= -tol
                && z.re <= 0.5 + tol
                && -s * z.re <= z.im + tol
                && z.im <= s * z.re + tol;
            upper || lower
        }
        _ => in_p_k(z, k, tol),
    }
}
