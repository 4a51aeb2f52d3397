//! Property tests for the structural invariants that are not tied to a
//! golden table: root-finder reconstruction, action/zero-map identities,
//! height minimality, word decomposition, and weight-scale invariance.

use binform::arith::{GaussInt, Poly, UniMatZ, UniMatZi};
use binform::halfplane::{
    decompose_st, in_f_h2, mobius_h2, reduce_point_h2, st_word_product, H2Point, StWord,
    MEMBERSHIP_TOL,
};
use binform::hermforms::{act_herm, HermForm};
use binform::julia::{
    act_form, is_stable, julia_covariant, root_profile, theta0_real_convention, BinaryForm,
    CovariantQuad,
};
use binform::quadforms::{act, class_height, is_reduced_normalized, reduce, QuadForm};
use num::complex::Complex64;
use num::{BigInt, Signed};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

// ---------------------------------------------------------------------------
// root finder: reconstruction through refactoring
// ---------------------------------------------------------------------------

/// Grid of well-separated candidate roots (spacing 1/2).
fn real_grid() -> Vec<f64> {
    (-8..=8).map(|k| k as f64 / 2.0).collect()
}

fn pair_grid() -> Vec<Complex64> {
    let mut v = Vec::new();
    for re in -4..=4 {
        for im in 1..=3 {
            v.push(Complex64::new(re as f64 / 2.0, im as f64 / 2.0));
        }
    }
    v
}

fn expand(lead: Complex64, roots: &[Complex64]) -> Vec<Complex64> {
    let mut acc = vec![lead];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
        for (k, &c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        acc = next;
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn find_roots_reconstructs_coefficients(
        reals in proptest::sample::subsequence(real_grid(), 0..=6),
        pairs in proptest::sample::subsequence(pair_grid(), 0..=3),
        lead in 1i32..6,
    ) {
        let mut roots: Vec<Complex64> =
            reals.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        for p in &pairs {
            roots.push(*p);
            roots.push(p.conj());
        }
        prop_assume!(!roots.is_empty() && roots.len() <= 12);

        let lead = Complex64::new(lead as f64, 0.0);
        let coeffs = expand(lead, &roots); // ascending
        let p = Poly::new(coeffs.clone());
        let found = p.find_roots(1e-13).unwrap();
        prop_assert_eq!(found.len(), roots.len());

        let rebuilt = expand(lead, &found);
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for (got, want) in rebuilt.iter().zip(&coeffs) {
            prop_assert!(
                (got - want).norm() <= 1e-9 * scale,
                "coefficient drift: {} vs {}", got, want
            );
        }
    }

    #[test]
    fn quad_action_preserves_discriminant_and_definiteness(
        a in 1i64..=30,
        b in -30i64..=30,
        c_off in 0i64..=30,
        letters in proptest::collection::vec((0u8..2, -3i64..=3), 1..6),
    ) {
        let c = b * b / (4 * a) + 1 + c_off;
        let q = QuadForm::from_ints(a, b, c);
        prop_assume!(q.is_positive_definite());
        let mut m = UniMatZ::identity();
        for (kind, pow) in letters {
            let step = if kind == 0 { UniMatZ::s() } else { UniMatZ::t_pow(&BigInt::from(pow)) };
            m = m.mul(&step);
        }
        let moved = act(&m, &q);
        prop_assert_eq!(moved.disc(), q.disc());
        prop_assert!(moved.is_positive_definite());
        // and the reduction of the moved form is reduced and equivalent
        let (r, tm) = reduce(&moved).unwrap();
        prop_assert!(is_reduced_normalized(&r).unwrap());
        prop_assert_eq!(act(&tm, &moved), r);
    }

    #[test]
    fn herm_action_preserves_definiteness(
        a in 1i64..=12,
        bre in -8i64..=8,
        bim in -8i64..=8,
        c_off in 0i64..=12,
        letters in proptest::collection::vec(0u8..3, 1..6),
    ) {
        let c = (bre * bre + bim * bim) / a + 1 + c_off;
        let q = HermForm::from_ints(a, bre, bim, c);
        prop_assume!(q.is_positive_definite());
        let mut m = UniMatZi::identity();
        for kind in letters {
            let step = match kind {
                0 => UniMatZi::s(),
                1 => UniMatZi::translation(GaussInt::new(1, -1)),
                _ => UniMatZi::unit_i(),
            };
            m = m.mul(&step);
        }
        let moved = act_herm(&m, &q);
        prop_assert_eq!(moved.disc(), q.disc());
        prop_assert!(moved.is_positive_definite());
    }

    #[test]
    fn reduce_point_is_idempotent_on_interior_points(
        x in -0.49f64..0.49,
        y in 1.1f64..5.0,
    ) {
        let p = H2Point::new(x, y);
        prop_assume!(in_f_h2(p, MEMBERSHIP_TOL).is_in());
        let (q, m) = reduce_point_h2(p).unwrap();
        prop_assert!(m.is_pm_identity());
        prop_assert_eq!((q.x, q.y), (p.x, p.y));
    }
}

// ---------------------------------------------------------------------------
// seeded invariants
// ---------------------------------------------------------------------------

fn random_word(rng: &mut ChaCha8Rng, letters: usize, max_pow: i64) -> UniMatZ {
    let mut m = UniMatZ::identity();
    for _ in 0..letters {
        let step = if rng.gen_bool(0.5) {
            UniMatZ::s()
        } else {
            UniMatZ::t_pow(&BigInt::from(rng.gen_range(-max_pow..=max_pow)))
        };
        m = m.mul(&step);
    }
    m
}

#[test]
fn height_of_orbit_members_dominates_class_height() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..20 {
        let a = rng.gen_range(1..=10i64);
        let b = rng.gen_range(-a..=a);
        let c = a + rng.gen_range(0..=12i64);
        let r = QuadForm::from_ints(a, b, c);
        if !r.is_positive_definite() || !is_reduced_normalized(&r).unwrap() {
            continue;
        }
        let ch = class_height(&r).unwrap();
        for _ in 0..100 {
            let m = random_word(&mut rng, 5, 4);
            assert!(act(&m, &r).height() >= ch);
        }
    }
}

#[test]
fn mobius_height_identity() {
    // Im(Mz) = Im z / |cz + d|^2 to 1e-13
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let p = H2Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(0.1..4.0));
        let m = random_word(&mut rng, 6, 3);
        let q = mobius_h2(&m, p);
        let c = m.c.to_string().parse::<f64>().unwrap();
        let d = m.d.to_string().parse::<f64>().unwrap();
        let denom = (c * p.x + d) * (c * p.x + d) + c * c * p.y * p.y;
        assert!(close(q.y, p.y / denom, 1e-13));
    }
}

#[test]
fn st_decomposition_product_and_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..200 {
        let m = random_word(&mut rng, 8, 9);
        let word = decompose_st(&m);
        let prod = st_word_product(&word);
        assert!(
            prod == m || prod == m.neg(),
            "word product differs from +-M"
        );
        let max_entry_bits = [&m.a, &m.b, &m.c, &m.d]
            .iter()
            .map(|e| e.abs().bits())
            .max()
            .unwrap()
            .max(1);
        assert!(
            word.len() as u64 <= 4 * max_entry_bits + 8,
            "word too long: {} tokens for {} bits",
            word.len(),
            max_entry_bits
        );
        // tokens are S or T-powers only
        for t in &word {
            match t {
                StWord::S => {}
                StWord::TPow(k) => assert!(!k.is_zero()),
            }
        }
    }
}

use num::Zero;

#[test]
fn julia_zero_map_covariance() {
    // zero(J_{F^M}) = M^{-1} zero(J_F) to 1e-8 for degrees 3..8
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut case = 0;
    while case < 40 {
        let degree = 3 + case % 6;
        let coeffs: Vec<f64> = (0..=degree)
            .map(|k| {
                if k == 0 {
                    rng.gen_range(1..=9) as f64
                } else {
                    rng.gen_range(-9..=9) as f64
                }
            })
            .collect();
        let f = BinaryForm::from_real(&coeffs);
        if !matches!(is_stable(&f), Ok(true)) {
            continue;
        }
        let m = random_word(&mut rng, 3, 2);
        let moved = act_form(&m, &f);
        let sep = |g: &BinaryForm| -> f64 {
            let Ok(profile) = root_profile(g) else {
                return 0.0;
            };
            let mut min_sep = f64::INFINITY;
            for i in 0..profile.roots.len() {
                for j in (i + 1)..profile.roots.len() {
                    min_sep = min_sep.min((profile.roots[i] - profile.roots[j]).norm());
                }
            }
            min_sep
        };
        if sep(&f) < 5e-2 || sep(&moved) < 5e-2 {
            continue;
        }
        let (Ok(jd1), Ok(jd2)) = (julia_covariant(&f), julia_covariant(&moved)) else {
            continue;
        };
        let z1 = jd1.critical_point.plane().unwrap();
        let z2 = jd2.critical_point.plane().unwrap();
        let expect = mobius_h2(&m.inv(), z1);
        assert!(
            close(z2.x, expect.x, 1e-8) && close(z2.y, expect.y, 1e-8),
            "covariance failed in degree {degree} under {m}: ({}, {}) vs ({}, {})",
            z2.x,
            z2.y,
            expect.x,
            expect.y
        );
        case += 1;
    }
}

#[test]
fn h3_point_reduction_sweep() {
    use binform::halfplane::{in_f_h3_qi, mobius_h3, reduce_point_h3_qi, H3Point};
    use num::complex::Complex64 as C;
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..60 {
        let p = H3Point::new(
            C::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0)),
            rng.gen_range(0.05..4.0),
        );
        let (q, m) = reduce_point_h3_qi(p).unwrap();
        assert!(
            in_f_h3_qi(q, binform::halfplane::MEMBERSHIP_TOL).is_in(),
            "landed outside the domain from {p:?}"
        );
        assert_eq!(m.det(), GaussInt::one());
        let image = mobius_h3(&m, p);
        let scale = q.t.max(1.0);
        assert!(
            (image.z - q.z).norm() <= 1e-9 * scale && (image.t - q.t).abs() <= 1e-9 * scale,
            "transcript does not reproduce the landing point"
        );
    }
}

#[test]
fn complex_julia_data_is_sl2_zi_covariant() {
    // theta0 is invariant and the representative point in H3 transforms by
    // the inverse Mobius action under SL2(Z[i]) words
    use binform::halfplane::mobius_h3;
    use binform::julia::{act_form_gauss, UhPoint};
    use num::complex::Complex64 as C;
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let mut random_word_zi = |letters: usize| -> UniMatZi {
        let mut m = UniMatZi::identity();
        for _ in 0..letters {
            let step = match rng.gen_range(0..3u8) {
                0 => UniMatZi::s(),
                1 => UniMatZi::translation(GaussInt::new(
                    rand::Rng::gen_range(&mut rng, -1..=1i64),
                    rand::Rng::gen_range(&mut rng, -1..=1i64),
                )),
                _ => UniMatZi::unit_i(),
            };
            m = m.mul(&step);
        }
        m
    };
    // fixed complex forms with well-separated roots
    let forms = [
        BinaryForm::new(vec![
            C::new(1.0, 0.0),
            C::new(0.0, 2.0),
            C::new(-1.0, 1.0),
            C::new(3.0, -2.0),
        ]),
        BinaryForm::new(vec![
            C::new(2.0, 1.0),
            C::new(0.0, 0.0),
            C::new(1.0, -3.0),
            C::new(0.0, 1.0),
            C::new(-2.0, 0.0),
        ]),
        BinaryForm::new(vec![
            C::new(1.0, -1.0),
            C::new(4.0, 0.0),
            C::new(0.0, 2.0),
            C::new(-1.0, 0.0),
            C::new(2.0, 2.0),
            C::new(0.0, -3.0),
        ]),
    ];
    for f in &forms {
        let jd = julia_covariant(f).unwrap();
        let UhPoint::Space(z) = jd.critical_point else {
            panic!("complex forms live in H3")
        };
        for _ in 0..12 {
            let m = random_word_zi(4);
            let moved = act_form_gauss(&m, f);
            let Ok(jd2) = julia_covariant(&moved) else {
                continue; // a word may push roots together past the tolerance
            };
            assert!(
                close(jd.theta0, jd2.theta0, 1e-7),
                "theta0 moved under {m}: {} vs {}",
                jd.theta0,
                jd2.theta0
            );
            let UhPoint::Space(z2) = jd2.critical_point else {
                panic!()
            };
            let expect = mobius_h3(&m.inv(), z);
            assert!(
                (z2.z - expect.z).norm() <= 1e-7 * expect.t.max(1.0)
                    && close(z2.t, expect.t, 1e-7),
                "H3 covariance failed under {m}"
            );
        }
    }
}

#[test]
fn stoll_cremona_on_off_center_forms() {
    // forms whose roots sit far from the imaginary axis force shift moves;
    // every reduction must land in the domain with an exact transcript and
    // reduce idempotently
    use binform::halfplane::MEMBERSHIP_TOL as TOL;
    use binform::julia::{act_form_exact, julia_covariant, stoll_cremona_reduce, IntBinaryForm};
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let mut done = 0;
    while done < 25 {
        let degree = 3 + done % 4;
        // integer roots shifted well off center, distinct
        let mut roots: Vec<i64> = Vec::new();
        while roots.len() <= degree {
            let r = rng.gen_range(4..=14i64) * if rng.gen_bool(0.3) { -1 } else { 1 };
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        roots.truncate(degree);
        let mut coeffs = vec![num::BigInt::from(rng.gen_range(1..=3i64))];
        for r in &roots {
            let mut next = vec![num::BigInt::from(0); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k] += c;
                next[k + 1] -= c * num::BigInt::from(*r);
            }
            coeffs = next;
        }
        let f = IntBinaryForm::new(coeffs);
        let Ok((g, m)) = stoll_cremona_reduce(&f) else {
            continue;
        };
        assert_eq!(act_form_exact(&m, &f), g, "transcript replay failed for {f}");
        let jd = julia_covariant(&g.to_float()).unwrap();
        let z = jd.critical_point.plane().unwrap();
        assert!(in_f_h2(z, TOL).is_in(), "not reduced: {g} at ({}, {})", z.x, z.y);
        // idempotence
        let (g2, m2) = stoll_cremona_reduce(&g).unwrap();
        assert_eq!(g2, g);
        assert!(m2.is_pm_identity());
        done += 1;
    }
}

#[test]
fn weight_scale_drops_out_of_theta0_and_the_zero() {
    // the free scale s in the weight formula rescales J_f but moves neither
    // theta0 nor its zero
    let f = BinaryForm::from_real(&[2.0, 1.0, -3.0, -1.0, 4.0]);
    let profile = root_profile(&f).unwrap();
    let jd = julia_covariant(&f).unwrap();
    let lead = 2.0;
    let base_theta = theta0_real_convention(lead, &profile.roots, &jd.weights);
    let zero_of = |w: &[f64]| -> (f64, f64) {
        // assemble sum w_j |X - a_j Z|^2 independently of the library path
        let a: f64 = w.iter().sum();
        let mut b = 0.0;
        let mut c = 0.0;
        for (r, wi) in profile.roots.iter().zip(w) {
            b -= 2.0 * wi * r.re;
            c += wi * r.norm_sqr();
        }
        let x = -b / (2.0 * a);
        let y = (4.0 * a * c - b * b).sqrt() / (2.0 * a);
        (x, y)
    };
    let base_zero = zero_of(&jd.weights);
    for s in [0.3, 2.0, 17.5] {
        let scaled: Vec<f64> = jd.weights.iter().map(|w| w * s).collect();
        let theta = theta0_real_convention(lead, &profile.roots, &scaled);
        assert!(close(theta, base_theta, 1e-12));
        let z = zero_of(&scaled);
        assert!(close(z.0, base_zero.0, 1e-12) && close(z.1, base_zero.1, 1e-12));
    }
    // and the library's covariant agrees with the independent assembly
    let CovariantQuad::Real(j) = jd.julia_quadratic else {
        panic!()
    };
    let z = j.zero();
    assert!(close(z.x, base_zero.0, 1e-9) && close(z.y, base_zero.1, 1e-9));
}
