//! Oracle self-consistency: antipodal identity, boundary convexity,
//! rotation/scale covariance, the compression test against segment lengths,
//! and eigensolver invariants, on randomized corpora.

mod common;

use proptest::prelude::*;
use rand::Rng;

use numrange::random::{gaussian_matrix, haar_unitary, random_exceptional_params, random_hermitian, strictly_upper_nilpotent};
use numrange::{
    boundary_point, compression, compression_is_scalar, construct_exceptional,
    exceptional_angles, flat_portions, hermitian_eig, hermitian_eigenvalues, inner,
    nilpotent_triangularize, rotated_im, rotated_re, sample_boundary, support_value, C64, CMat,
    RangeConfig,
};

use common::{angle_distance, rng};

fn complex_vec_strategy(len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), len)
        .prop_map(|v| v.into_iter().map(|(re, im)| C64::new(re, im)).collect())
}

fn cmat_strategy() -> impl Strategy<Value = CMat> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), complex_vec_strategy(n * n)))
        .prop_map(|(n, data)| CMat::new(n, data).unwrap())
}

fn hermitian_strategy() -> impl Strategy<Value = CMat> {
    cmat_strategy().prop_map(|m| m.re_part())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eig_reconstruction(h in hermitian_strategy()) {
        let e = hermitian_eig(&h).unwrap();
        let n = h.n();
        let mut rebuilt = CMat::zeros(n);
        for k in 0..n {
            let x = e.vector(k);
            for i in 0..n {
                for j in 0..n {
                    rebuilt[(i, j)] += x[i] * x[j].conj() * e.values[k];
                }
            }
        }
        let err = rebuilt.sub(&h).fro_norm();
        prop_assert!(err <= 1e-10 * (1.0 + h.fro_norm()), "{err}");
        // ascending values
        for w in e.values.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        // orthonormal vectors
        for i in 0..n {
            for j in 0..n {
                let g = inner(&e.vector(i), &e.vector(j));
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((g - C64::new(want, 0.0)).norm() <= 1e-12);
            }
        }
        // negation reverses the spectrum
        let neg = hermitian_eigenvalues(&h.scale(C64::new(-1.0, 0.0))).unwrap();
        for k in 0..n {
            prop_assert!((neg[k] + e.values[n - 1 - k]).abs() <= 1e-12);
        }
    }

    #[test]
    fn antipodal_identity(a in cmat_strategy(), theta in 0.0..std::f64::consts::TAU) {
        let min_side = support_value(&a, theta);
        let opposite = hermitian_eigenvalues(&rotated_re(&a, theta + std::f64::consts::PI)).unwrap();
        let max_opposite = opposite[opposite.len() - 1];
        prop_assert!((min_side + max_opposite).abs() <= 1e-12 * (1.0 + a.fro_norm()));
    }

    #[test]
    fn boundary_point_on_support_line(a in cmat_strategy(), theta in 0.0..std::f64::consts::TAU) {
        let z = boundary_point(&a, theta);
        let d = support_value(&a, theta);
        let proj = (z * C64::from_polar(1.0, -theta)).re;
        prop_assert!((proj - d).abs() <= 1e-10 * (1.0 + a.fro_norm()));
    }
}

#[test]
fn boundary_samples_are_convex() {
    let mut r = rng(2024);
    for trial in 0..40 {
        let a = gaussian_matrix(4, &mut r);
        let pts = sample_boundary(&a, 128);
        let tol = 1e-9 * (1.0 + a.fro_norm()).powi(2);
        let n = pts.len();
        for i in 0..n {
            let p = pts[i];
            let q = pts[(i + 1) % n];
            let s = pts[(i + 2) % n];
            let e1 = q - p;
            let e2 = s - q;
            let cross = e1.re * e2.im - e1.im * e2.re;
            assert!(cross >= -tol, "trial {trial}: concave corner, cross = {cross}");
        }
    }
}

#[test]
fn antipodal_dense_grid() {
    let mut r = rng(7);
    for _ in 0..8 {
        let a = gaussian_matrix(5, &mut r);
        for _ in 0..32 {
            let theta: f64 = r.gen_range(0.0..std::f64::consts::TAU);
            let min_side = support_value(&a, theta);
            let vals = hermitian_eigenvalues(&rotated_re(&a, theta + std::f64::consts::PI)).unwrap();
            assert!((min_side + vals[vals.len() - 1]).abs() < 1e-12 * (1.0 + a.fro_norm()));
        }
    }
}

/// Flat portions of c e^{i phi} A are the images z -> c e^{i phi} z of the
/// portions of A.
#[test]
fn rotation_scale_covariance() {
    let mut r = rng(99);
    let mut checked = 0;
    while checked < 25 {
        let p = random_exceptional_params(&mut r);
        let a = construct_exceptional(&p);
        let portions = flat_portions(&a).unwrap();
        if portions.is_empty() {
            continue;
        }
        let c: f64 = r.gen_range(0.25..3.0);
        let phi: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        let w = C64::from_polar(c, phi);
        let b = a.scale(w);
        let moved = flat_portions(&b).unwrap();
        assert_eq!(portions.len(), moved.len(), "portion count changed under scaling");
        for p0 in &portions {
            let target_theta = (p0.line.theta + phi).rem_euclid(std::f64::consts::TAU);
            let hit = moved
                .iter()
                .find(|m| angle_distance(m.line.theta, target_theta) < 1e-6)
                .unwrap_or_else(|| panic!("no portion at rotated angle {target_theta}"));
            assert!((hit.line.d - c * p0.line.d).abs() <= 1e-8 * (1.0 + b.fro_norm()));
            let want1 = p0.z1 * w;
            let want2 = p0.z2 * w;
            let direct = (hit.z1 - want1).norm() + (hit.z2 - want2).norm();
            let flipped = (hit.z1 - want2).norm() + (hit.z2 - want1).norm();
            assert!(direct.min(flipped) <= 1e-8 * (1.0 + b.fro_norm()));
        }
        checked += 1;
    }
}

/// On every exceptional line with a 2-dimensional eigenspace, the segment is
/// nondegenerate exactly when the compression fails to be scalar.
#[test]
fn compression_test_matches_segment_length() {
    let mut r = rng(515);
    let cfg = RangeConfig::default();
    let mut lines = 0;
    let mut flats = 0;
    let mut rounds = 0;

    let mut check = |a: &CMat| {
        let eps_flat = cfg.eps_flat(a);
        for sub in exceptional_angles(a).unwrap() {
            if sub.basis.len() != 2 {
                continue;
            }
            let comp = compression(&rotated_im(a, sub.theta), &sub.basis);
            let mu = hermitian_eigenvalues(&comp).unwrap();
            let spread = mu[1] - mu[0];
            let scalar = compression_is_scalar(a, &sub.basis[0], &sub.basis[1]).unwrap();
            assert_eq!(
                spread > eps_flat,
                !scalar,
                "spread {spread} vs scalar-compression {scalar} at theta {}",
                sub.theta
            );
            lines += 1;
            if spread > eps_flat {
                flats += 1;
            } else {
                rounds += 1;
            }
        }
    };

    for _ in 0..30 {
        check(&construct_exceptional(&random_exceptional_params(&mut r)));
    }
    let mut produced = 0;
    while produced < 10 {
        if let Some(p) = common::noflat_case1_params(&mut r) {
            check(&construct_exceptional(&p));
            produced += 1;
        }
    }
    for _ in 0..5 {
        check(&construct_exceptional(&common::noflat_branch_ii_params(&mut r)));
        check(&construct_exceptional(&common::noflat_branch_iii_params(&mut r)));
        check(&construct_exceptional(&common::noflat_branch_iv_params(&mut r)));
    }
    assert!(lines >= 40, "exercised only {lines} exceptional lines");
    assert!(flats >= 20 && rounds >= 15, "one-sided corpus: {flats} flat, {rounds} round");
}

/// Triangularization invariants on random nilpotent draws.
#[test]
fn triangularization_round_trip() {
    let mut r = rng(31);
    for n in [2usize, 3, 4, 5, 6] {
        for _ in 0..8 {
            let t0 = strictly_upper_nilpotent(n, &mut r);
            let u = haar_unitary(n, &mut r);
            let a = t0.conjugate_by(&u);
            let (q, t) = nilpotent_triangularize(&a).unwrap();
            let unitary_err = q.adjoint().mul(&q).sub(&CMat::identity(n)).fro_norm();
            assert!(unitary_err < 1e-12, "n = {n}: {unitary_err}");
            for i in 0..n {
                for j in 0..=i {
                    assert!(t[(i, j)].norm() == 0.0);
                }
            }
            let back = q.mul(&t).mul(&q.adjoint());
            assert!(back.sub(&a).fro_norm() <= 1e-10 * (1.0 + a.fro_norm()));
        }
    }
}

/// Independent eigenvalue check of the solver on random Hermitian inputs.
#[test]
fn eigenvalues_match_external_solver() {
    let mut r = rng(4096);
    for n in [2usize, 3, 5, 8] {
        for _ in 0..6 {
            let h = random_hermitian(n, &mut r);
            let mine = hermitian_eigenvalues(&h).unwrap();
            let mut na = nalgebra::DMatrix::<nalgebra::Complex<f64>>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    na[(i, j)] = nalgebra::Complex::new(h[(i, j)].re, h[(i, j)].im);
                }
            }
            let mut theirs: Vec<f64> = na.symmetric_eigenvalues().iter().copied().collect();
            theirs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (m, t) in mine.iter().zip(&theirs) {
                assert!((m - t).abs() < 1e-10 * (1.0 + h.fro_norm()), "n = {n}: {m} vs {t}");
            }
        }
    }
}

/// Certification smoke runs; the full-size sweeps live in the acceptance
/// suite.
#[test]
fn certification_smoke() {
    use numrange::certify::{run_certification, CertFamily};
    let cfg = RangeConfig::default();
    for family in [
        CertFamily::Nilpotent4,
        CertFamily::General4,
        CertFamily::Reducible4,
        CertFamily::Reducible5,
    ] {
        let s = run_certification(family, 24, 1234, &cfg);
        assert!(s.passed(), "{family:?}: {:?}", s.violations);
        assert!(s.max_count <= s.bound);
        assert_eq!(s.histogram.values().sum::<u64>(), 24);
    }
}

/// Equal-radius direct sum of two 2-by-2 blocks: the range is a disk whose
/// boundary points are all multiply generated, so the gap vanishes at every
/// angle. The oracle must cope (many exceptional angles, no portions).
#[test]
fn everywhere_exceptional_disk() {
    let mut a = CMat::zeros(4);
    a[(0, 1)] = C64::new(1.0, 0.0);
    a[(2, 3)] = C64::new(1.0, 0.0);
    let subs = exceptional_angles(&a).unwrap();
    assert!(!subs.is_empty());
    for s in &subs {
        assert!(s.basis.len() >= 2);
    }
    assert!(flat_portions(&a).unwrap().is_empty());
}

/// Basis vectors of an exceptional subspace are genuine eigenvectors of the
/// minimal eigenvalue of the rotated real part.
#[test]
fn exceptional_subspace_residuals() {
    let mut r = rng(1717);
    for _ in 0..15 {
        let p = random_exceptional_params(&mut r);
        let a = construct_exceptional(&p);
        for sub in exceptional_angles(&a).unwrap() {
            let h = rotated_re(&a, sub.theta);
            let lambda = support_value(&a, sub.theta);
            for b in &sub.basis {
                let hb = h.mat_vec(b);
                let res: f64 = hb
                    .iter()
                    .zip(b)
                    .map(|(u, v)| (u - v * lambda).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(res <= 1e-10 * (1.0 + a.fro_norm()), "residual {res}");
            }
        }
    }
}
