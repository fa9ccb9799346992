//! Shared corpus builders for the property and acceptance suites.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use numrange::{real_tau2, C64, ExceptionalParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn angle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// Real parameters with tau2 = 0, found by bisection in a1: an exceptional
/// member whose supporting line carries no flat portion (regime with all
/// radii nonzero; tau1 vanishes identically for real parameters).
pub fn noflat_case1_params<R: Rng + ?Sized>(rng: &mut R) -> Option<ExceptionalParams> {
    let a2: f64 = rng.gen_range(0.2..0.9);
    let a3: f64 = rng.gen_range(0.2..0.9);
    let f = |a1: f64| real_tau2(a1, a2, a3, 0.0, 0.0).unwrap().re;
    let (mut lo, mut hi) = (1e-3, 1.0 - 1e-6);
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        hi = lo;
    } else if flo * fhi > 0.0 {
        return None;
    }
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        if f(lo) * f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let a1 = 0.5 * (lo + hi);
    if f(a1).abs() > 1e-10 {
        return None;
    }
    Some(
        ExceptionalParams::new(
            C64::new(1.0, 0.0),
            C64::new(a1, 0.0),
            C64::new(a2, 0.0),
            C64::new(a3, 0.0),
            0.0,
            0.0,
        )
        .unwrap(),
    )
}

/// No-flat member with r1 = 0: equal moduli |a2| = |a3| and the argument
/// identity arg a3 = arg a2 + theta3.
pub fn noflat_branch_ii_params<R: Rng + ?Sized>(rng: &mut R) -> ExceptionalParams {
    let tau = std::f64::consts::TAU;
    let theta1 = rng.gen_range(0.0..tau);
    let theta2 = rng.gen_range(0.0..tau);
    let x: f64 = rng.gen_range(0.1..0.95);
    let psi = rng.gen_range(0.0..tau);
    ExceptionalParams::new(
        C64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..tau)),
        C64::from_polar(1.0, rng.gen_range(0.0..tau)),
        C64::from_polar(x, psi),
        C64::from_polar(x, psi + (theta2 - theta1)),
        theta1,
        theta2,
    )
    .unwrap()
}

/// No-flat member with r2 = 0: |a1| = |a3| and arg a3 = arg a1 + theta2 + pi.
pub fn noflat_branch_iii_params<R: Rng + ?Sized>(rng: &mut R) -> ExceptionalParams {
    let tau = std::f64::consts::TAU;
    let theta1 = rng.gen_range(0.0..tau);
    let theta2 = rng.gen_range(0.0..tau);
    let x: f64 = rng.gen_range(0.1..0.95);
    let phi = rng.gen_range(0.0..tau);
    ExceptionalParams::new(
        C64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..tau)),
        C64::from_polar(x, phi),
        C64::from_polar(1.0, rng.gen_range(0.0..tau)),
        C64::from_polar(x, phi + theta2 + std::f64::consts::PI),
        theta1,
        theta2,
    )
    .unwrap()
}

/// No-flat member with r3 = 0: |a1| = |a2| and arg a2 = arg a1 + theta1.
pub fn noflat_branch_iv_params<R: Rng + ?Sized>(rng: &mut R) -> ExceptionalParams {
    let tau = std::f64::consts::TAU;
    let theta1 = rng.gen_range(0.0..tau);
    let theta2 = rng.gen_range(0.0..tau);
    let x: f64 = rng.gen_range(0.1..0.95);
    let phi = rng.gen_range(0.0..tau);
    ExceptionalParams::new(
        C64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..tau)),
        C64::from_polar(x, phi),
        C64::from_polar(x, phi + theta1),
        C64::from_polar(1.0, rng.gen_range(0.0..tau)),
        theta1,
        theta2,
    )
    .unwrap()
}

/// Member with two unit moduli (the segment always materializes).
pub fn flat_case2_params<R: Rng + ?Sized>(rng: &mut R) -> ExceptionalParams {
    let tau = std::f64::consts::TAU;
    ExceptionalParams::new(
        C64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..tau)),
        C64::from_polar(1.0, rng.gen_range(0.0..tau)),
        C64::from_polar(1.0, rng.gen_range(0.0..tau)),
        numrange::random::unit_disk(rng),
        rng.gen_range(0.0..tau),
        rng.gen_range(0.0..tau),
    )
    .unwrap()
}
