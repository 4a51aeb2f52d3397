//! Dense univariate polynomials over the complex doubles and an
//! Aberth-Ehrlich simultaneous root finder.
//!
//! Coefficients are stored in ascending order: `coeffs[k]` multiplies `x^k`.
//! The root finder initializes all approximations on a circle at the Cauchy
//! bound and iterates the coupled Newton corrections; it is robust for the
//! moderate degrees (<= ~20) this crate targets.

use crate::error::Error;
use num::complex::Complex64;
use num::Zero;

pub const DEFAULT_ROOT_TOL: f64 = 1e-13;
const MAX_ITERATIONS: usize = 500;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Build from ascending coefficients, trimming leading terms whose
    /// magnitude is negligible against the largest coefficient.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    fn trim(&mut self) {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        let cut = scale * 1e-300_f64;
        while self.coeffs.len() > 1 {
            let top = self.coeffs.last().unwrap().norm();
            if top > cut || top > 0.0 && scale == 0.0 {
                break;
            }
            if top == 0.0 || top <= cut {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(Complex64::zero());
        }
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

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::new(vec![Complex64::zero()]);
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * (k as f64 + 1.0))
                .collect(),
        )
    }

    /// Scale of the polynomial at radius |z|: sum |c_k| |z|^k. Used to turn
    /// absolute residuals into relative ones.
    pub fn scale_at(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let mut acc = 0.0;
        let mut rk = 1.0;
        for c in &self.coeffs {
            acc += c.norm() * rk;
            rk *= r;
        }
        acc
    }

    /// All `degree` complex roots (with multiplicity), by Aberth-Ehrlich
    /// iteration. The residual of each returned root is at most
    /// `tol * scale_at(root)`. Roots of real-coefficient input come back
    /// closed under conjugation.
    pub fn find_roots(&self, tol: f64) -> Result<Vec<Complex64>, Error> {
        let n = self.degree();
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if n < 1 || scale == 0.0 {
            return Err(Error::DegenerateInput);
        }
        if self.coeffs[n].norm() <= tol * scale {
            return Err(Error::DegenerateInput);
        }

        // Deflate exact roots at the origin first; integral forms produce
        // them routinely and they cost the iteration accuracy nothing.
        let zeros_at_origin = self
            .coeffs
            .iter()
            .take_while(|c| c.norm() == 0.0)
            .count()
            .min(n);
        let deflated = Poly {
            coeffs: self.coeffs[zeros_at_origin..].to_vec(),
        };

        let mut roots = vec![Complex64::zero(); zeros_at_origin];
        if deflated.degree() >= 1 {
            roots.extend(deflated.aberth(tol)?);
        }

        if self.is_real() {
            symmetrize_conjugates(&mut roots);
        }
        Ok(roots)
    }

    fn aberth(&self, tol: f64) -> Result<Vec<Complex64>, Error> {
        let n = self.degree();
        let lead = self.coeffs[n];
        let deriv = self.derivative();

        // Cauchy bound: every root has |z| <= 1 + max |c_k / c_n|.
        let radius = 1.0
            + self.coeffs[..n]
                .iter()
                .map(|c| (c / lead).norm())
                .fold(0.0, f64::max);
        let mut zs: Vec<Complex64> = (0..n)
            .map(|k| {
                // irrational angular offset so symmetric inputs do not start
                // on a symmetry axis of the configuration
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.43;
                Complex64::from_polar(radius, theta)
            })
            .collect();

        // after first meeting the tolerance, run two more full sweeps: the
        // coupled update keeps contracting and the extra digits matter to
        // the invariant computations downstream
        let mut polish_sweeps = 0;
        for _ in 0..MAX_ITERATIONS {
            let mut converged = true;
            let mut max_step = 0.0f64;
            for i in 0..n {
                let zi = zs[i];
                let pz = self.eval(zi);
                if pz.norm() > tol * self.scale_at(zi) {
                    converged = false;
                }
                let dz = deriv.eval(zi);
                let newton = if dz.norm() == 0.0 {
                    // perturb off the stationary point
                    Complex64::new(tol.max(1e-12), tol.max(1e-12))
                } else {
                    pz / dz
                };
                let mut coupling = Complex64::zero();
                for (j, zj) in zs.iter().enumerate() {
                    if j != i {
                        let diff = zi - zj;
                        if diff.norm() > 0.0 {
                            coupling += diff.inv();
                        }
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - newton * coupling;
                let step = if denom.norm() == 0.0 {
                    newton
                } else {
                    newton / denom
                };
                if !step.re.is_finite() || !step.im.is_finite() {
                    return Err(Error::NonConvergence);
                }
                zs[i] = zi - step;
                max_step = max_step.max(step.norm());
            }
            if converged && max_step <= tol * radius.max(1.0) {
                polish_sweeps += 1;
                if polish_sweeps >= 3 {
                    return Ok(zs);
                }
            }
        }

        // accept whatever already satisfies the residual test
        if zs
            .iter()
            .all(|&z| self.eval(z).norm() <= tol * self.scale_at(z).max(f64::MIN_POSITIVE))
        {
            return Ok(zs);
        }
        Err(Error::NonConvergence)
    }
}

/// Pair the roots of a real polynomial into conjugate pairs (and real
/// leftovers), replacing each pair by exact conjugates and flattening the
/// imaginary part of near-real roots. Greedy nearest matching; the inputs
/// come from a converged iteration so pairs are unambiguous.
fn symmetrize_conjugates(roots: &mut [Complex64]) {
    let n = roots.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        let zi = roots[i];
        let scale = zi.norm().max(1.0);
        if zi.im.abs() <= 1e-9 * scale {
            roots[i] = Complex64::new(zi.re, 0.0);
            continue;
        }
        // find the closest unused conjugate partner
        let mut best: Option<(usize, f64)> = None;
        for (j, used_j) in used.iter().enumerate().skip(i + 1) {
            if *used_j {
                continue;
            }
            let d = (roots[j] - zi.conj()).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        if let Some((j, d)) = best {
            if d <= 1e-6 * scale {
                used[j] = true;
                let mean = Complex64::new(0.5 * (zi.re + roots[j].re), 0.5 * (zi.im - roots[j].im));
                roots[i] = mean;
                roots[j] = mean.conj();
            }
        }
    }
}

/// Group roots into clusters of relative radius `rel_tol`, reporting each
/// cluster's centroid and multiplicity. Used by the stability check.
pub fn cluster_roots(roots: &[Complex64], rel_tol: f64) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        let scale = r.norm().max(1.0);
        match clusters
            .iter_mut()
            .find(|(c, _)| (*c - r).norm() <= rel_tol * scale.max(c.norm()))
        {
            Some((c, count)) => {
                // running centroid
                let k = *count as f64;
                *c = (*c * k + r) / (k + 1.0);
                *count += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    clusters
}
