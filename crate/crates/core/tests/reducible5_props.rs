//! The 5-by-5 direct-sum family: closed-form classification against the
//! oracle, the trigonometric support distance against an independent cubic
//! solver, and the cardioid geometry.

mod common;

use std::f64::consts::{PI, TAU};

use rand::Rng;

use numrange::{
    assemble_5x5, cardioid_point, flat_count_5x5, flat_portions, support_distance_3x3,
    support_value, CMat, Reducible5Params,
};

use common::rng;

/// Maximal real root of x^3 - s x - c via companion-matrix eigenvalues
/// (nalgebra Schur), polished by Newton; independent of the trigonometric
/// closed form.
fn max_root_companion(s: f64, c: f64) -> f64 {
    let companion =
        nalgebra::DMatrix::<f64>::from_row_slice(3, 3, &[0.0, s, c, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    let eig = companion.complex_eigenvalues();
    let mut best = f64::NEG_INFINITY;
    for z in eig.iter() {
        if z.im.abs() < 1e-6 * (1.0 + z.re.abs()) {
            best = best.max(z.re);
        }
    }
    // Newton polish on f(x) = x^3 - s x - c
    let mut x = best;
    for _ in 0..50 {
        let f = x * x * x - s * x - c;
        let df = 3.0 * x * x - s;
        if df.abs() < 1e-300 {
            break;
        }
        let step = f / df;
        x -= step;
        if step.abs() <= 1e-16 * (1.0 + x.abs()) {
            break;
        }
    }
    x
}

#[test]
fn viete_matches_companion_matrix() {
    let mut r = rng(5150);
    for draw in 0..50 {
        let p = Reducible5Params::new(
            1.0,
            r.gen_range(0.3..3.0),
            r.gen_range(0.05..3.0),
            r.gen_range(0.3..3.0),
        )
        .unwrap();
        for k in 0..64 {
            let theta = TAU * k as f64 / 64.0;
            let mine = support_distance_3x3(&p, theta);
            let oracle = 0.5 * max_root_companion(p.s(), 2.0 * p.t() * theta.cos());
            assert!(
                (mine - oracle).abs() <= 1e-12 * (1.0 + oracle.abs()),
                "draw {draw}, theta {theta}: {mine} vs {oracle}"
            );
        }
    }
}

/// The classifier agrees with the oracle count on the assembled matrix,
/// including near-threshold radii outside a 1e-4 guard band, and the count
/// never exceeds two.
#[test]
fn classification_matches_oracle() {
    let mut r = rng(5151);
    let mut done = 0;
    let mut near_threshold = 0;
    while done < 200 {
        let equal_case = r.gen_bool(0.5);
        let p = if equal_case {
            let rho: f64 = r.gen_range(0.6..2.5);
            // thresholds at rho and 2 rho
            let radius: f64 = if r.gen_bool(0.3) {
                let t = if r.gen_bool(0.5) { rho } else { 2.0 * rho };
                let off: f64 = r.gen_range(2e-4..1e-2) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
                (t + off).max(1e-3)
            } else {
                r.gen_range(0.05..2.6) * rho
            };
            Reducible5Params::new(radius, rho, rho, rho).unwrap()
        } else {
            Reducible5Params::new(
                r.gen_range(0.3..5.0),
                r.gen_range(0.4..2.2),
                r.gen_range(0.05..2.2),
                r.gen_range(0.4..2.2),
            )
            .unwrap()
        };

        // guard band around the count thresholds
        let (lo, hi) = if equal_case {
            (p.r1, 2.0 * p.r1)
        } else {
            (2.0 * support_distance_3x3(&p, PI), 2.0 * support_distance_3x3(&p, 0.0))
        };
        let guard = 1e-4;
        if (p.r - lo).abs() < guard * (1.0 + lo) || (p.r - hi).abs() < guard * (1.0 + hi) {
            continue;
        }
        if (p.r - lo).abs() < 5e-2 || (p.r - hi).abs() < 5e-2 {
            near_threshold += 1;
        }

        let predicted = flat_count_5x5(&p);
        let a = assemble_5x5(&p);
        let oracle = flat_portions(&a).unwrap().len();
        assert_eq!(predicted, oracle, "params {p:?}");
        assert!(oracle <= 2, "params {p:?}: count {oracle}");
        done += 1;
    }
    assert!(near_threshold >= 5, "only {near_threshold} near-threshold draws");
}

/// Support function of the 3-by-3 equal-parameter block against the support
/// of the convex hull of the cardioid arc (|phi| <= 2 pi / 3).
#[test]
fn cardioid_support_consistency() {
    let a2 = CMat::from_real_rows(&[
        vec![0.0, 3.0, 3.0],
        vec![0.0, 0.0, 3.0],
        vec![0.0, 0.0, 0.0],
    ])
    .unwrap();
    let arc = 2.0 * PI / 3.0;
    let hull_support = |theta: f64| -> f64 {
        let obj = |phi: f64| {
            let z = cardioid_point(phi);
            (z * numrange::C64::from_polar(1.0, -theta)).re
        };
        // coarse scan plus golden refinement
        let n = 4096;
        let mut best_phi = -arc;
        let mut best = f64::INFINITY;
        for k in 0..=n {
            let phi = -arc + 2.0 * arc * k as f64 / n as f64;
            let v = obj(phi);
            if v < best {
                best = v;
                best_phi = phi;
            }
        }
        let h = 2.0 * arc / n as f64;
        let (mut lo, mut hi) = ((best_phi - h).max(-arc), (best_phi + h).min(arc));
        for _ in 0..80 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if obj(m1) <= obj(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        obj(0.5 * (lo + hi)).min(best)
    };
    for k in 0..64 {
        let theta = TAU * k as f64 / 64.0;
        let sv = support_value(&a2, theta);
        let hull = hull_support(theta);
        assert!((sv - hull).abs() <= 1e-8, "theta {theta}: {sv} vs {hull}");
    }
}

/// Oracle counts for the worked radii, on the assembled block-diagonal
/// matrices.
#[test]
fn oracle_counts_for_worked_examples() {
    let cases = [
        (3.3, 3.0, 2usize),
        (2.0, 3.0, 1),
        (7.0, 3.0, 0),
        (3.3, 3.3, 1),
        (1.0, 3.0, 1),
    ];
    for (radius, rho, want) in cases {
        let p = Reducible5Params::new(radius, rho, rho, rho).unwrap();
        let a = assemble_5x5(&p);
        let got = flat_portions(&a).unwrap().len();
        assert_eq!(got, want, "r = {radius}, rho = {rho}");
        assert_eq!(flat_count_5x5(&p), want);
    }
}

/// Degenerate cubic member (r2 = 0): both blocks are disks and the larger
/// one wins; here the 2-by-2 block with radius 2 gives a disk of radius 1.
#[test]
fn disk_dominated_assembly() {
    let p = Reducible5Params::new(2.0, 1.0, 0.0, 1.0).unwrap();
    let a = assemble_5x5(&p);
    assert_eq!(flat_count_5x5(&p), 0);
    assert!(flat_portions(&a).unwrap().is_empty());
    for k in 0..32 {
        let theta = TAU * k as f64 / 32.0;
        assert!((support_value(&a, theta) + 1.0).abs() < 1e-12);
    }
}
