//! Newton solver for the critical-point system of the Julia covariant.
//!
//! Given the finite roots alpha_j of a degree-n form and writing
//! d_j = |t - alpha_j|^2 + u^2, the system is
//!
//!   sum_j u^2 / d_j            = n/2
//!   sum_j (t - alpha_j) / d_j  = 0
//!
//! with t real for real forms (two unknowns) and t complex otherwise (three
//! real unknowns). Roots at infinity drop out of both sums while n keeps the
//! full degree: each contributes -log u to the underlying objective
//! L(t, u) = sum_j log d_j - n log u, which is geodesically convex with a
//! unique minimizer exactly when the form is stable. A damped Newton
//! iteration with a gradient-descent fallback on L therefore always
//! converges for stable root configurations.

use crate::error::Error;
use num::complex::Complex64;

pub const SYSTEM_RESIDUAL_TOL: f64 = 1e-11;
/// Newton polishes past the acceptance tolerance until progress stalls at
/// machine precision; downstream covariance identities use the extra digits.
const TARGET_RESIDUAL: f64 = 1e-15;
const NEWTON_ITERATIONS: usize = 120;
const FALLBACK_STEPS: usize = 600;

#[derive(Debug, Clone, Copy)]
pub struct CriticalPoint {
    pub t: Complex64,
    pub u: f64,
    pub residual: f64,
}

/// Scale-invariant residual: |g1| and u * |g2| (the second equation carries
/// dimension 1/length). `degree` is the full degree of the form; `roots`
/// holds only its finite roots.
fn residual_real(roots: &[Complex64], degree: usize, t: f64, u: f64) -> (f64, f64, f64) {
    let n = degree as f64;
    let mut g1 = -n / 2.0;
    let mut g2 = 0.0;
    for r in roots {
        let d = (t - r.re) * (t - r.re) + r.im * r.im + u * u;
        g1 += u * u / d;
        g2 += (t - r.re) / d;
    }
    let res = (g1 * g1 + (u * g2) * (u * g2)).sqrt();
    (g1, g2, res)
}

fn residual_complex(
    roots: &[Complex64],
    degree: usize,
    t: Complex64,
    u: f64,
) -> (f64, f64, f64, f64) {
    let n = degree as f64;
    let mut g1 = -n / 2.0;
    let mut g2 = 0.0;
    let mut g3 = 0.0;
    for r in roots {
        let d = (t - r).norm_sqr() + u * u;
        g1 += u * u / d;
        g2 += (t.re - r.re) / d;
        g3 += (t.im - r.im) / d;
    }
    let res = (g1 * g1 + (u * g2) * (u * g2) + (u * g3) * (u * g3)).sqrt();
    (g1, g2, g3, res)
}

/// Solve the two-unknown system for a conjugate-closed multiset of finite
/// roots of a degree-`degree` form.
pub fn solve_real(
    roots: &[Complex64],
    degree: usize,
    seed_t: f64,
    seed_u: f64,
) -> Result<CriticalPoint, Error> {
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let mut t = seed_t;
    let mut u = seed_u.max(1e-6 * scale);

    let (.., mut res) = residual_real(roots, degree, t, u);
    for _ in 0..NEWTON_ITERATIONS {
        if res <= TARGET_RESIDUAL {
            break;
        }
        let (g1, g2, _) = residual_real(roots, degree, t, u);
        // analytic Jacobian
        let (mut j11, mut j12, mut j21, mut j22) = (0.0, 0.0, 0.0, 0.0);
        for r in roots {
            let dt = t - r.re;
            let d = dt * dt + r.im * r.im + u * u;
            let d2 = d * d;
            j11 += -u * u * 2.0 * dt / d2; // d g1 / d t
            j12 += 2.0 * u * (d - u * u) / d2; // d g1 / d u
            j21 += (d - 2.0 * dt * dt) / d2; // d g2 / d t
            j22 += -2.0 * u * dt / d2; // d g2 / d u
        }
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-300 || !det.is_finite() {
            break;
        }
        let dt = (-g1 * j22 + g2 * j12) / det;
        let du = (-j11 * g2 + j21 * g1) / det;

        // damped step, keeping u positive
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let (tn, mut un) = (t + lambda * dt, u + lambda * du);
            if un <= 0.0 {
                un = u / 2.0;
            }
            let (.., rn) = residual_real(roots, degree, tn, un);
            if rn < res {
                t = tn;
                u = un;
                res = rn;
                accepted = true;
                break;
            }
            lambda /= 2.0;
        }
        if !accepted {
            break;
        }
    }
    if res <= SYSTEM_RESIDUAL_TOL {
        return Ok(CriticalPoint {
            t: Complex64::new(t, 0.0),
            u,
            residual: res,
        });
    }

    // Fallback: backtracking gradient descent on L in (t, log u) coordinates;
    // grad L = (2 g2, 2 g1) there.
    let mut s = u.ln();
    for _ in 0..FALLBACK_STEPS {
        let (g1, g2, r0) = residual_real(roots, degree, t, s.exp());
        if r0 <= SYSTEM_RESIDUAL_TOL {
            break;
        }
        let (dt, ds) = (-2.0 * g2 * s.exp() * s.exp(), -2.0 * g1);
        let mut lambda = 0.5;
        loop {
            let (tn, sn) = (t + lambda * dt, s + lambda * ds);
            let (.., rn) = residual_real(roots, degree, tn, sn.exp());
            if rn < r0 || lambda < 1e-14 {
                t = tn;
                s = sn;
                break;
            }
            lambda /= 2.0;
        }
    }
    u = s.exp();
    // polish with Newton once more
    let polished = newton_polish_real(roots, degree, t, u);
    let (t, u) = polished;
    let (.., res) = residual_real(roots, degree, t, u);
    if res <= SYSTEM_RESIDUAL_TOL {
        Ok(CriticalPoint {
            t: Complex64::new(t, 0.0),
            u,
            residual: res,
        })
    } else {
        Err(Error::SolverDiverged { residual: res })
    }
}

fn newton_polish_real(roots: &[Complex64], degree: usize, mut t: f64, mut u: f64) -> (f64, f64) {
    for _ in 0..NEWTON_ITERATIONS {
        let (g1, g2, res) = residual_real(roots, degree, t, u);
        if res <= SYSTEM_RESIDUAL_TOL * 0.01 {
            break;
        }
        let (mut j11, mut j12, mut j21, mut j22) = (0.0, 0.0, 0.0, 0.0);
        for r in roots {
            let dt = t - r.re;
            let d = dt * dt + r.im * r.im + u * u;
            let d2 = d * d;
            j11 += -u * u * 2.0 * dt / d2;
            j12 += 2.0 * u * (d - u * u) / d2;
            j21 += (d - 2.0 * dt * dt) / d2;
            j22 += -2.0 * u * dt / d2;
        }
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-300 {
            break;
        }
        let dt_step = (-g1 * j22 + g2 * j12) / det;
        let du_step = (-j11 * g2 + j21 * g1) / det;
        let (tn, un) = (t + dt_step, u + du_step);
        if un <= 0.0 || !tn.is_finite() || !un.is_finite() {
            break;
        }
        let (.., rn) = residual_real(roots, degree, tn, un);
        if rn >= res {
            break;
        }
        t = tn;
        u = un;
    }
    (t, u)
}

/// Solve the three-unknown system for the finite roots of a degree-`degree`
/// form.
pub fn solve_complex(
    roots: &[Complex64],
    degree: usize,
    seed_t: Complex64,
    seed_u: f64,
) -> Result<CriticalPoint, Error> {
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let mut t = seed_t;
    let mut u = seed_u.max(1e-6 * scale);

    let (.., mut res) = residual_complex(roots, degree, t, u);
    for _ in 0..NEWTON_ITERATIONS {
        if res <= TARGET_RESIDUAL {
            break;
        }
        let (g1, g2, g3, _) = residual_complex(roots, degree, t, u);
        // rows: g1, g2, g3; columns: tr, ti, u
        let mut j = [[0.0f64; 3]; 3];
        for r in roots {
            let dx = t.re - r.re;
            let dy = t.im - r.im;
            let d = dx * dx + dy * dy + u * u;
            let d2 = d * d;
            j[0][0] += -u * u * 2.0 * dx / d2;
            j[0][1] += -u * u * 2.0 * dy / d2;
            j[0][2] += 2.0 * u * (d - u * u) / d2;
            j[1][0] += (d - 2.0 * dx * dx) / d2;
            j[1][1] += -2.0 * dx * dy / d2;
            j[1][2] += -2.0 * u * dx / d2;
            j[2][0] += -2.0 * dx * dy / d2;
            j[2][1] += (d - 2.0 * dy * dy) / d2;
            j[2][2] += -2.0 * u * dy / d2;
        }
        let rhs = [-g1, -g2, -g3];
        let Some(step) = solve3(&j, &rhs) else { break };

        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let tn = Complex64::new(t.re + lambda * step[0], t.im + lambda * step[1]);
            let mut un = u + lambda * step[2];
            if un <= 0.0 {
                un = u / 2.0;
            }
            let (.., rn) = residual_complex(roots, degree, tn, un);
            if rn < res {
                t = tn;
                u = un;
                res = rn;
                accepted = true;
                break;
            }
            lambda /= 2.0;
        }
        if !accepted {
            break;
        }
    }
    if res <= SYSTEM_RESIDUAL_TOL {
        return Ok(CriticalPoint {
            t,
            u,
            residual: res,
        });
    }

    // gradient descent on L in (tr, ti, log u); grad = (2 g2, 2 g3, 2 g1)
    let mut s = u.ln();
    for _ in 0..FALLBACK_STEPS {
        let (g1, g2, g3, r0) = residual_complex(roots, degree, t, s.exp());
        if r0 <= SYSTEM_RESIDUAL_TOL {
            break;
        }
        let e2 = s.exp() * s.exp();
        let (dx, dy, ds) = (-2.0 * g2 * e2, -2.0 * g3 * e2, -2.0 * g1);
        let mut lambda = 0.5;
        loop {
            let tn = Complex64::new(t.re + lambda * dx, t.im + lambda * dy);
            let sn = s + lambda * ds;
            let (.., rn) = residual_complex(roots, degree, tn, sn.exp());
            if rn < r0 || lambda < 1e-14 {
                t = tn;
                s = sn;
                break;
            }
            lambda /= 2.0;
        }
    }
    u = s.exp();
    let (.., res) = residual_complex(roots, degree, t, u);
    if res <= SYSTEM_RESIDUAL_TOL {
        Ok(CriticalPoint {
            t,
            u,
            residual: res,
        })
    } else {
        Err(Error::SolverDiverged { residual: res })
    }
}

#[allow(clippy::needless_range_loop)]
fn solve3(a: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let mut m = *a;
    let mut v = *b;
    for col in 0..3 {
        let pivot =
            (col..3).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        v.swap(col, pivot);
        for row in (col + 1)..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                let pivot_val = m[col][k];
                m[row][k] -= f * pivot_val;
            }
            v[row] -= f * v[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = v[row];
        for k in (row + 1)..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    if x.iter().all(|c| c.is_finite()) {
        Some(x)
    } else {
        None
    }
}
