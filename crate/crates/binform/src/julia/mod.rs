//! Degree-n binary forms F(X, Z) = a0 X^n + a1 X^{n-1} Z + ... + an Z^n:
//! stability, the Q0 covariant, the Julia invariant theta0 with its
//! covariant quadratic J_f, and the Stoll-Cremona reduction algorithm.
//!
//! The Julia quadratic of a stable form is J_f = sum_j w_j |X - alpha_j Z|^2
//! over the roots, with the unique positive weights minimizing
//!
//!   theta0 = a0^2 |disc J|^{n/2} / prod w_j        (real coefficients)
//!   theta0 = |a0|^2 (det J)^{n/2} / (n^n prod w_j) (complex coefficients)
//!
//! The minimizing weights are w_j = (2/n) u^2 / (|t - alpha_j|^2 + u^2) at
//! the critical point (t, u) of the system in [`solver`], and the zero of
//! J_f is that critical point. Reduction moves a form through SL2(Z) until
//! the zero of J_f lies in the fundamental domain.
//!
//! Roots at infinity (leading zero coefficients, as in homogenized odd
//! hyperelliptic models) are handled projectively: they drop out of the
//! critical-point sums, contribute a |Z|^2 factor of weight (2/n) u^2 to
//! the covariant, and theta0 compensates the leading coefficient to |a_k|
//! with k the infinity multiplicity. Q0 alone is computed through an exact
//! unimodular change of chart, since its weights need derivative values at
//! finite roots.

pub mod solver;

use crate::arith::poly::{cluster_roots, Poly, DEFAULT_ROOT_TOL};
use crate::arith::UniMatZ;
use crate::error::Error;
use crate::halfplane::{in_f_h2, H2Point, H3Point, MEMBERSHIP_TOL};
use num::complex::Complex64;
use num::{BigInt, Signed, ToPrimitive, Zero};
use solver::{solve_complex, solve_real, CriticalPoint};
use std::fmt;

/// Relative threshold below which a leading coefficient counts as a root at
/// infinity.
const EFFECTIVE_ZERO_REL: f64 = 1e-12;
/// Roots closer than this (relative) are clustered into one multiple root.
const CLUSTER_REL_TOL: f64 = 1e-7;

/// Binary form with floating coefficients, stored as a0..an in descending
/// powers of X.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm {
    coeffs: Vec<Complex64>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(coeffs.len() >= 2, "a binary form needs degree >= 1");
        BinaryForm { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Value F(x, z).
    pub fn eval(&self, x: Complex64, z: Complex64) -> Complex64 {
        let n = self.degree();
        let mut acc = Complex64::zero();
        let mut xp = vec![Complex64::new(1.0, 0.0); n + 1];
        let mut zp = vec![Complex64::new(1.0, 0.0); n + 1];
        for k in 1..=n {
            xp[k] = xp[k - 1] * x;
            zp[k] = zp[k - 1] * z;
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c * xp[n - k] * zp[k];
        }
        acc
    }

    /// Multiplicity of the root at infinity: leading coefficients negligible
    /// against the coefficient scale.
    pub fn infinity_multiplicity(&self) -> usize {
        let scale = self.coeff_scale();
        self.coeffs
            .iter()
            .take_while(|c| c.norm() <= EFFECTIVE_ZERO_REL * scale)
            .count()
            .min(self.degree())
    }

    /// Dehomogenization f(X) = F(X, 1) as an ascending-coefficient
    /// polynomial (degree drops by the infinity multiplicity).
    fn dehomogenize(&self) -> Poly {
        let mut ascending: Vec<Complex64> = self.coeffs.iter().rev().copied().collect();
        let scale = self.coeff_scale();
        while ascending.len() > 1 && ascending.last().unwrap().norm() <= EFFECTIVE_ZERO_REL * scale
        {
            ascending.pop();
        }
        Poly::new(ascending)
    }

    /// Effective leading coefficient: a0, or 0 when the form has a root at
    /// infinity.
    pub fn effective_lead(&self) -> Complex64 {
        if self.infinity_multiplicity() > 0 {
            Complex64::zero()
        } else {
            self.coeffs[0]
        }
    }
}

/// Binary form with exact integer coefficients, descending powers of X.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntBinaryForm {
    coeffs: Vec<BigInt>,
}

impl IntBinaryForm {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(coeffs.len() >= 2, "a binary form needs degree >= 1");
        IntBinaryForm { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntBinaryForm::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_float(&self) -> BinaryForm {
        BinaryForm::new(
            self.coeffs
                .iter()
                .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect(),
        )
    }

    /// Naive height: max |coefficient|.
    pub fn naive_height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> IntBinaryForm {
        IntBinaryForm::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntBinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Homogeneous substitution: coefficients of
/// F(m11 X + m12 Z, m21 X + m22 Z), generic over the coefficient ring.
fn substitute<T>(coeffs: &[T], m: [&T; 4]) -> Vec<T>
where
    T: Clone + num::Zero + num::One + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
{
    let n = coeffs.len() - 1;
    // pows[j][i] = coefficient of X^i Z^{j-i} in (p X + q Z)^j
    let linear_powers = |p: &T, q: &T| -> Vec<Vec<T>> {
        let mut pows: Vec<Vec<T>> = vec![vec![num::One::one()]];
        for j in 1..=n {
            let prev = &pows[j - 1];
            let mut next = vec![T::zero(); j + 1];
            for (i, c) in prev.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + c.clone() * p.clone();
                next[i] = next[i].clone() + c.clone() * q.clone();
            }
            pows.push(next);
        }
        pows
    };
    // X is replaced by m11 X + m12 Z, Z by m21 X + m22 Z
    let first = linear_powers(m[0], m[1]);
    let second = linear_powers(m[2], m[3]);
    let mut out = vec![T::zero(); n + 1];
    for (k, a) in coeffs.iter().enumerate() {
        let u = &first[n - k];
        let v = &second[k];
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let idx = i + j; // X-degree
                out[idx] = out[idx].clone() + a.clone() * ui.clone() * vj.clone();
            }
        }
    }
    // out[idx] multiplies X^idx; flip to descending
    out.reverse();
    out
}

/// Action of a determinant-1 integer matrix on a floating form.
pub fn act_form(m: &UniMatZ, f: &BinaryForm) -> BinaryForm {
    let conv = |x: &BigInt| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0);
    let (a, b, c, d) = (conv(&m.a), conv(&m.b), conv(&m.c), conv(&m.d));
    BinaryForm::new(substitute(&f.coeffs, [&a, &b, &c, &d]))
}

/// Action of a determinant-1 matrix over `Z[i]` on a complex form; the
/// complex-coefficient counterpart of [`act_form`].
pub fn act_form_gauss(m: &crate::arith::UniMatZi, f: &BinaryForm) -> BinaryForm {
    let (a, b, c, d) = (
        m.a.to_complex(),
        m.b.to_complex(),
        m.c.to_complex(),
        m.d.to_complex(),
    );
    BinaryForm::new(substitute(&f.coeffs, [&a, &b, &c, &d]))
}

/// Exact action on an integral form; the transcript replay path.
pub fn act_form_exact(m: &UniMatZ, f: &IntBinaryForm) -> IntBinaryForm {
    IntBinaryForm::new(substitute(&f.coeffs, [&m.a, &m.b, &m.c, &m.d]))
}

/// Roots of a form: the finite ones with conjugate pairing data, plus the
/// multiplicity of the root at infinity.
#[derive(Debug, Clone)]
pub struct RootProfile {
    pub roots: Vec<Complex64>,
    /// Count of real roots (real forms; after conjugate symmetrization).
    pub real_count: usize,
    /// Count of conjugate pairs; real_count + 2 pair_count = finite degree.
    pub pair_count: usize,
    pub infinity_multiplicity: usize,
}

pub fn root_profile(f: &BinaryForm) -> Result<RootProfile, Error> {
    let inf = f.infinity_multiplicity();
    let dehom = f.dehomogenize();
    let roots = if dehom.degree() >= 1 {
        dehom.find_roots(DEFAULT_ROOT_TOL)?
    } else {
        Vec::new()
    };
    let real_count = roots.iter().filter(|r| r.im == 0.0).count();
    let pair_count = (roots.len() - real_count) / 2;
    Ok(RootProfile {
        roots,
        real_count,
        pair_count,
        infinity_multiplicity: inf,
    })
}

fn max_multiplicity(profile: &RootProfile) -> usize {
    cluster_roots(&profile.roots, CLUSTER_REL_TOL)
        .iter()
        .map(|&(_, m)| m)
        .max()
        .unwrap_or(0)
        .max(profile.infinity_multiplicity)
}

/// A form of degree n >= 3 is stable when no root (including infinity) has
/// multiplicity >= n/2.
pub fn is_stable(f: &BinaryForm) -> Result<bool, Error> {
    let n = f.degree();
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    let profile = root_profile(f)?;
    Ok(2 * max_multiplicity(&profile) < n)
}

/// Real positive definite quadratic a X^2 + b XZ + c Z^2 in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealQuad {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl RealQuad {
    pub fn disc(&self) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c
    }

    pub fn zero(&self) -> H2Point {
        H2Point::new(
            -self.b / (2.0 * self.a),
            (-self.disc()).sqrt() / (2.0 * self.a),
        )
    }
}

/// Positive definite Hermitian quadratic (a, b, c) in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermQuadF {
    pub a: f64,
    pub b: Complex64,
    pub c: f64,
}

impl HermQuadF {
    pub fn det(&self) -> f64 {
        self.a * self.c - self.b.norm_sqr()
    }

    pub fn zero(&self) -> H3Point {
        H3Point::new(-self.b / self.a, self.det().sqrt() / self.a)
    }
}

/// The covariant quadratic of a form: real quadratic for real input,
/// Hermitian for complex input.
#[derive(Debug, Clone, PartialEq)]
pub enum CovariantQuad {
    Real(RealQuad),
    Herm(HermQuadF),
}

impl CovariantQuad {
    pub fn zero(&self) -> UhPoint {
        match self {
            CovariantQuad::Real(q) => UhPoint::Plane(q.zero()),
            CovariantQuad::Herm(q) => UhPoint::Space(q.zero()),
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        match self {
            CovariantQuad::Real(q) => q.a > 0.0 && q.disc() < 0.0,
            CovariantQuad::Herm(q) => q.a > 0.0 && q.det() > 0.0,
        }
    }
}

/// A point of H2 or H3, depending on the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UhPoint {
    Plane(H2Point),
    Space(H3Point),
}

impl UhPoint {
    pub fn plane(&self) -> Option<H2Point> {
        match self {
            UhPoint::Plane(p) => Some(*p),
            UhPoint::Space(_) => None,
        }
    }
}

/// Q = sum_j w_j (root factor) + w_inf |Z|^2 over the finite roots, with
/// `inf_weight` the total weight of the roots at infinity (normalized
/// factor Z conj(Z)). The Hermitian factor of a finite root alpha has
/// matrix [[1, -alpha], [-conj alpha, |alpha|^2]]: it vanishes at alpha,
/// its zero map returns alpha, and it transforms under M* Q M matching the
/// plain Mobius motion of the root, which the covariance identities
/// require. For conjugate-closed roots the XZ coefficient is real and the
/// result is the real quadratic [sum w, -2 sum w Re a, sum w |a|^2 + w_inf].
fn assemble_quad(
    roots: &[Complex64],
    weights: &[f64],
    inf_weight: f64,
    real: bool,
) -> CovariantQuad {
    let a: f64 = weights.iter().sum();
    let mut b = Complex64::zero();
    let mut c = inf_weight;
    for (r, w) in roots.iter().zip(weights) {
        b -= r * *w;
        c += w * r.norm_sqr();
    }
    if real {
        CovariantQuad::Real(RealQuad {
            a,
            b: 2.0 * b.re,
            c,
        })
    } else {
        CovariantQuad::Herm(HermQuadF { a, b, c })
    }
}

fn act_real_quad(m: &UniMatZ, q: &RealQuad) -> RealQuad {
    let c = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
    let (m11, m12, m21, m22) = (c(&m.a), c(&m.b), c(&m.c), c(&m.d));
    RealQuad {
        a: q.a * m11 * m11 + q.b * m11 * m21 + q.c * m21 * m21,
        b: 2.0 * (q.a * m11 * m12 + q.c * m21 * m22) + q.b * (m11 * m22 + m12 * m21),
        c: q.a * m12 * m12 + q.b * m12 * m22 + q.c * m22 * m22,
    }
}

fn act_herm_quad(m: &UniMatZ, q: &HermQuadF) -> HermQuadF {
    let c = |x: &BigInt| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0);
    let (m11, m12, m21, m22) = (c(&m.a), c(&m.b), c(&m.c), c(&m.d));
    // M* A M with A = [[a, b], [conj b, c]]
    let a_new = q.a * (m11.conj() * m11).re
        + (m11.conj() * q.b * m21).re * 2.0
        + q.c * (m21.conj() * m21).re;
    let b_new = m11.conj() * q.a * m12
        + m11.conj() * q.b * m22
        + m21.conj() * q.b.conj() * m12
        + m21.conj() * q.c * m22;
    let c_new = q.a * (m12.conj() * m12).re
        + (m12.conj() * q.b * m22).re * 2.0
        + q.c * (m22.conj() * m22).re;
    HermQuadF {
        a: a_new,
        b: b_new,
        c: c_new,
    }
}

fn act_covariant(m: &UniMatZ, q: &CovariantQuad) -> CovariantQuad {
    match q {
        CovariantQuad::Real(r) => CovariantQuad::Real(act_real_quad(m, r)),
        CovariantQuad::Herm(h) => CovariantQuad::Herm(act_herm_quad(m, h)),
    }
}

/// Shear [[1, 0], [m, 1]] moving the root at infinity to a finite position:
/// the image form has leading coefficient F(1, m).
fn transport_shear(f: &BinaryForm) -> UniMatZ {
    let n = f.degree() as i64;
    let mut best_val = 0.0f64;
    let mut candidates: Vec<(i64, f64)> = Vec::new();
    for k in 0..=(n + 1) {
        for m in if k == 0 { vec![0] } else { vec![k, -k] } {
            let v = f
                .eval(Complex64::new(1.0, 0.0), Complex64::new(m as f64, 0.0))
                .norm();
            best_val = best_val.max(v);
            candidates.push((m, v));
        }
    }
    let m = candidates
        .iter()
        .find(|&&(_, v)| v >= 1e-3 * best_val)
        .map(|&(m, _)| m)
        .unwrap_or(0);
    UniMatZ::new(
        BigInt::from(1),
        BigInt::from(0),
        BigInt::from(m),
        BigInt::from(1),
    )
}

fn well_led(f: &BinaryForm) -> bool {
    f.infinity_multiplicity() == 0
}

/// The explicit covariant Q0 = sum_i |X - alpha_i Z|^2 / |f'(alpha_i)|^{2/(n-2)},
/// positive definite for any degree n >= 3 with simple roots. Cheap to write
/// down and close enough to J_f to seed the solver and drive the first
/// reduction phase.
pub fn q0_covariant(f: &BinaryForm) -> Result<CovariantQuad, Error> {
    let n = f.degree();
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    if !well_led(f) {
        let shear = transport_shear(f);
        let moved = act_form(&shear, f);
        if !well_led(&moved) {
            return Err(Error::DegenerateInput);
        }
        let q = q0_covariant(&moved)?;
        return Ok(act_covariant(&shear.inv(), &q));
    }
    let dehom = f.dehomogenize();
    let deriv = dehom.derivative();
    let roots = dehom.find_roots(DEFAULT_ROOT_TOL)?;
    let expo = 2.0 / (n as f64 - 2.0);
    let mut weights = Vec::with_capacity(n);
    for &r in &roots {
        let d = deriv.eval(r).norm();
        if d <= 1e-8 * deriv.scale_at(r).max(f64::MIN_POSITIVE) {
            return Err(Error::RepeatedRoot);
        }
        weights.push(d.powf(-expo));
    }
    Ok(assemble_quad(&roots, &weights, 0.0, f.is_real()))
}

/// Full Julia data of a stable form.
#[derive(Debug, Clone)]
pub struct JuliaData {
    /// Positive weights w_j (s = 1 scale): one per finite root in the order
    /// of `root_profile`, followed by one entry (2/n) u^2 per root at
    /// infinity (the normalized weight of its |Z|^2 factor).
    pub weights: Vec<f64>,
    /// The critical point (t, u); equals the zero of `julia_quadratic`.
    pub critical_point: UhPoint,
    /// Julia invariant, in the convention of the coefficient field (real
    /// forms: a0^2 |disc|^{n/2} / prod w; complex: with the n^n factor).
    /// Forms with roots at infinity use the compensated leading coefficient
    /// |a_k| (k the infinity multiplicity), the limit of the finite-root
    /// formula.
    pub theta0: f64,
    pub julia_quadratic: CovariantQuad,
    /// Residual of the critical-point system at the returned point.
    pub residual: f64,
    /// Stable with a repeated root at the maximal multiplicity stability
    /// allows; the covariant is still defined but poorly conditioned.
    pub borderline_stable: bool,
}

/// theta0 in the real-coefficient convention, evaluated for an arbitrary
/// positive weight vector: lead^2 (4 det Q_w)^{n/2} / prod w with
/// Q_w = sum w_j |X - alpha_j Z|^2. Scale-invariant in the weights.
pub fn theta0_real_convention(lead_abs: f64, roots: &[Complex64], weights: &[f64]) -> f64 {
    let n = roots.len();
    let (det, wprod) = quad_det_and_weight_product(roots, weights);
    lead_abs * lead_abs * (4.0 * det).powf(n as f64 / 2.0) / wprod
}

/// theta0 in the complex-coefficient convention:
/// |lead|^2 (det Q_w)^{n/2} / (n^n prod w).
pub fn theta0_complex_convention(lead_abs: f64, roots: &[Complex64], weights: &[f64]) -> f64 {
    let n = roots.len();
    let (det, wprod) = quad_det_and_weight_product(roots, weights);
    lead_abs * lead_abs * det.powf(n as f64 / 2.0) / ((n as f64).powi(n as i32) * wprod)
}

fn quad_det_and_weight_product(roots: &[Complex64], weights: &[f64]) -> (f64, f64) {
    let a: f64 = weights.iter().sum();
    let mut b = Complex64::zero();
    let mut c = 0.0;
    let mut wprod = 1.0;
    for (r, w) in roots.iter().zip(weights) {
        b -= r * *w;
        c += w * r.norm_sqr();
        wprod *= w;
    }
    (a * c - b.norm_sqr(), wprod)
}

/// Compute the Julia covariant of a binary form.
///
/// Degree 2 bypasses the solver: a real positive definite quadratic is its
/// own Julia quadratic (weights 1/2, theta0 = 4 |disc|); anything else of
/// degree 2 has no stable theory. Degree >= 3 requires stability.
pub fn julia_covariant(f: &BinaryForm) -> Result<JuliaData, Error> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    if n == 2 {
        return julia_degree_two(f);
    }

    let profile = root_profile(f)?;
    let mult = max_multiplicity(&profile);
    if 2 * mult >= n {
        return Err(Error::NotStable {
            degree: n,
            multiplicity: mult,
        });
    }
    let borderline = mult > 1 && 2 * mult >= n - 1;

    // roots at infinity are handled natively: they drop out of the system
    // sums (their objective term is -log u) and contribute a |Z|^2 factor
    // of normalized weight (2/n) u^2 to the covariant
    let inf_mult = profile.infinity_multiplicity;
    let roots = profile.roots.clone();
    let real = f.is_real();
    // compensated leading coefficient: the coefficient after the leading
    // zeros, the limit of |a0 prod alpha_inf|
    let lead = f.coeffs[inf_mult].norm();

    // seed at the zero of Q0 when the roots are simple, else at the
    // unweighted root quadratic
    let seed = match q0_covariant(f) {
        Ok(q) => q.zero(),
        Err(_) => assemble_quad(&roots, &vec![1.0; roots.len()], inf_mult as f64, real).zero(),
    };

    let cp: CriticalPoint = if real {
        let (sx, sy) = match seed {
            UhPoint::Plane(p) => (p.x, p.y),
            UhPoint::Space(p) => (p.z.re, p.t),
        };
        solve_real(&roots, n, sx, sy)?
    } else {
        let (st, su) = match seed {
            UhPoint::Space(p) => (p.z, p.t),
            UhPoint::Plane(p) => (Complex64::new(p.x, 0.0), p.y),
        };
        solve_complex(&roots, n, st, su)?
    };

    let inf_weight_each = 2.0 / (n as f64) * cp.u * cp.u;
    let mut weights = Vec::with_capacity(n);
    for r in &roots {
        let d = if real {
            (cp.t.re - r.re) * (cp.t.re - r.re) + r.im * r.im + cp.u * cp.u
        } else {
            (cp.t - r).norm_sqr() + cp.u * cp.u
        };
        weights.push(2.0 / (n as f64) * cp.u * cp.u / d);
    }

    let julia_quadratic = assemble_quad(&roots, &weights, inf_weight_each * inf_mult as f64, real);
    let det = match &julia_quadratic {
        CovariantQuad::Real(q) => -q.disc() / 4.0,
        CovariantQuad::Herm(q) => q.det(),
    };
    let weight_product = weights.iter().product::<f64>() * inf_weight_each.powi(inf_mult as i32);
    let theta0 = if real {
        lead * lead * (4.0 * det).powf(n as f64 / 2.0) / weight_product
    } else {
        lead * lead * det.powf(n as f64 / 2.0) / ((n as f64).powi(n as i32) * weight_product)
    };
    let critical_point = if real {
        UhPoint::Plane(H2Point::new(cp.t.re, cp.u))
    } else {
        UhPoint::Space(H3Point::new(cp.t, cp.u))
    };

    for _ in 0..inf_mult {
        weights.push(inf_weight_each);
    }

    Ok(JuliaData {
        weights,
        critical_point,
        theta0,
        julia_quadratic,
        residual: cp.residual,
        borderline_stable: borderline,
    })
}

fn julia_degree_two(f: &BinaryForm) -> Result<JuliaData, Error> {
    if !f.is_real() {
        return Err(Error::PolicyNotApplicable);
    }
    let (a, b, c) = (f.coeffs[0].re, f.coeffs[1].re, f.coeffs[2].re);
    let disc = b * b - 4.0 * a * c;
    if !(a > 0.0 && disc < 0.0) {
        return Err(Error::PolicyNotApplicable);
    }
    let q = RealQuad { a, b, c };
    let zero = q.zero();
    Ok(JuliaData {
        weights: vec![0.5, 0.5],
        critical_point: UhPoint::Plane(zero),
        theta0: 4.0 * disc.abs(),
        julia_quadratic: CovariantQuad::Real(q),
        residual: 0.0,
        borderline_stable: false,
    })
}

/// Stoll-Cremona reduction of a stable integral form: returns G and M in
/// SL2(Z) with G = act_form_exact(M, F) and the zero of J_G in the
/// fundamental domain (tolerance band).
///
/// Two phases as in the source algorithm: a cheap loop steered by the zero
/// of Q0, then the loop steered by the zero of J itself. A form whose Julia
/// point is already inside returns immediately with the identity transcript.
/// Moves are the shift F(X + mZ, Z) (matrix T^m) and the inversion
/// F(Z, -X) (matrix [[0, 1], [-1, 0]]); coefficient arithmetic is exact.
pub fn stoll_cremona_reduce(f: &IntBinaryForm) -> Result<(IntBinaryForm, UniMatZ), Error> {
    let n = f.degree();
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    let float = f.to_float();
    if !is_stable(&float)? {
        let profile = root_profile(&float)?;
        return Err(Error::NotStable {
            degree: n,
            multiplicity: max_multiplicity(&profile),
        });
    }

    let invert_letter = UniMatZ::new(
        BigInt::from(0),
        BigInt::from(1),
        BigInt::from(-1),
        BigInt::from(0),
    );

    let mut cur = f.clone();
    let mut transcript = UniMatZ::identity();

    let julia_point = |g: &IntBinaryForm| -> Result<H2Point, Error> {
        let jd = julia_covariant(&g.to_float())?;
        jd.critical_point.plane().ok_or(Error::PolicyNotApplicable)
    };

    // already reduced: identity transcript
    let z = julia_point(&cur)?;
    if in_f_h2(z, MEMBERSHIP_TOL).is_in() {
        return Ok((cur, transcript));
    }

    // phase 1: steer by the zero of Q0 (skipped when Q0 is unavailable),
    // updating the point arithmetically through the moves
    if let Ok(CovariantQuad::Real(q0)) = q0_covariant(&cur.to_float()) {
        let mut z0 = q0.zero();
        for _ in 0..256 {
            if in_f_h2(z0, MEMBERSHIP_TOL).is_in() {
                break;
            }
            let shift = z0.x.round();
            let step = if shift != 0.0 {
                z0 = H2Point::new(z0.x - shift, z0.y);
                UniMatZ::t_pow(&BigInt::from(shift as i64))
            } else {
                let w = -z0.to_complex().inv();
                z0 = H2Point::new(w.re, w.im);
                invert_letter.clone()
            };
            cur = act_form_exact(&step, &cur);
            transcript = transcript.mul(&step);
        }
    }

    // phase 2: steer by the Julia point, recomputed from the current form
    for _ in 0..256 {
        let z = julia_point(&cur)?;
        if in_f_h2(z, MEMBERSHIP_TOL).is_in() {
            return Ok((cur, transcript));
        }
        let shift = z.x.round();
        let step = if shift != 0.0 {
            UniMatZ::t_pow(&BigInt::from(shift as i64))
        } else if z.abs() < 1.0 - MEMBERSHIP_TOL {
            invert_letter.clone()
        } else {
            return Err(Error::NonTermination);
        };
        cur = act_form_exact(&step, &cur);
        transcript = transcript.mul(&step);
    }
    Err(Error::NonTermination)
}

/// Report on Julia's two bound inequalities for a form whose Julia point
/// lies in the fundamental domain:
///   a0 <= theta0 / (3^{n/2} n^n)
///   |alpha_i|^2 <= theta0 / (a0^2 (n-1)^{n-1} 3^{n/2})
/// with theta0 in the real-coefficient convention. Report-only; a violation
/// on a reduced form signals a numerical-accuracy problem, not an input
/// error.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub degree: usize,
    /// Whether the Julia point lies in the fundamental domain (the bounds
    /// are only asserted for reduced forms).
    pub reduced: bool,
    pub theta0_real: f64,
    pub lead: f64,
    pub lead_bound: f64,
    pub lead_ok: bool,
    pub lead_margin: f64,
    /// +infinity when the form has a root at infinity (a0 = 0).
    pub root_bound: f64,
    pub max_root_norm_sq: f64,
    pub roots_ok: bool,
    pub root_margin: f64,
}

pub fn julia_bounds_check(f: &BinaryForm) -> Result<BoundsReport, Error> {
    let n = f.degree();
    let jd = julia_covariant(f)?;
    let reduced = match jd.critical_point {
        UhPoint::Plane(p) => in_f_h2(p, MEMBERSHIP_TOL).is_in(),
        UhPoint::Space(p) => crate::halfplane::in_f_h3_qi(p, MEMBERSHIP_TOL).is_in(),
    };
    let theta0_real = if f.is_real() {
        jd.theta0
    } else {
        jd.theta0 * (2.0 * n as f64).powi(n as i32)
    };
    let nf = n as f64;
    let three_pow = 3f64.powf(nf / 2.0);
    let lead = f.effective_lead().norm();
    let lead_bound = theta0_real / (three_pow * nf.powi(n as i32));
    let lead_ok = lead <= lead_bound * (1.0 + 1e-9) + 1e-300;

    let profile = root_profile(f)?;
    let max_root_norm_sq = profile
        .roots
        .iter()
        .map(|r| r.norm_sqr())
        .fold(0.0, f64::max);
    let root_bound = if lead > 0.0 {
        theta0_real / (lead * lead * (nf - 1.0).powi(n as i32 - 1) * three_pow)
    } else {
        f64::INFINITY
    };
    let roots_ok = max_root_norm_sq <= root_bound * (1.0 + 1e-9) + 1e-300;

    Ok(BoundsReport {
        degree: n,
        reduced,
        theta0_real,
        lead,
        lead_bound,
        lead_ok,
        lead_margin: lead_bound - lead,
        root_bound,
        max_root_norm_sq,
        roots_ok,
        root_margin: root_bound - max_root_norm_sq,
    })
}
