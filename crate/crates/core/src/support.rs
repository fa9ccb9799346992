//! Support-function oracle for the numerical range F(A).
//!
//! Convention used throughout: the supporting line at angle theta is
//! { z : Re(e^{-i theta} z) = d } with d the minimal eigenvalue of
//! Re(e^{-i theta} A), and F(A) lies in { z : Re(e^{-i theta} z) >= d }.
//! Maxima are reached through theta + pi.

use std::f64::consts::TAU;


use crate::cmat::{inner, vec_norm, CMat, C64};
use crate::eig::{hermitian_eig, hermitian_eigenvalues};
use crate::error::{Error, Result};

/// Scan and tolerance knobs for the oracle.
#[derive(Clone, Debug)]
pub struct RangeConfig {
    /// Number of grid angles scanned for eigenvalue-gap minima.
    pub n_scan: usize,
    /// Multiple-eigenvalue tolerance, relative to (1 + |A|_F).
    pub eps_mult_rel: f64,
    /// Minimal reported flat-portion length, relative to (1 + |A|_F).
    pub eps_flat_rel: f64,
}

impl Default for RangeConfig {
    fn default() -> Self {
        RangeConfig { n_scan: 2048, eps_mult_rel: 1e-8, eps_flat_rel: 1e-7 }
    }
}

impl RangeConfig {
    pub fn eps_mult(&self, a: &CMat) -> f64 {
        self.eps_mult_rel * (1.0 + a.fro_norm())
    }

    pub fn eps_flat(&self, a: &CMat) -> f64 {
        self.eps_flat_rel * (1.0 + a.fro_norm())
    }
}

/// Supporting line { z : Re(e^{-i theta} z) = d }.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportLine {
    /// Direction angle, canonical range [0, 2 pi).
    pub theta: f64,
    /// Signed distance; F(A) lies on the side Re(e^{-i theta} z) >= d.
    pub d: f64,
}

impl SupportLine {
    pub fn new(theta: f64, d: f64) -> Self {
        SupportLine { theta: theta.rem_euclid(TAU), d }
    }

    /// Line coordinates (u, v) with u x + v y + 1 = 0, defined when the line
    /// misses the origin.
    pub fn line_coords(&self) -> Option<(f64, f64)> {
        if self.d.abs() < 1e-300 {
            return None;
        }
        Some((-self.theta.cos() / self.d, -self.theta.sin() / self.d))
    }
}

/// A nondegenerate line segment on the boundary of F(A).
#[derive(Clone, Debug)]
pub struct FlatPortion {
    pub line: SupportLine,
    pub z1: C64,
    pub z2: C64,
    pub length: f64,
}

/// Eigenspace of the minimal eigenvalue of Re(e^{-i theta} A) when its
/// multiplicity is at least two. The basis is orthonormal.
#[derive(Clone, Debug)]
pub struct ExceptionalSubspace {
    pub theta: f64,
    pub basis: Vec<Vec<C64>>,
}

/// Re(e^{-i theta} A). Built in a single pass; this sits in the scan's hot
/// loop.
pub fn rotated_re(a: &CMat, theta: f64) -> CMat {
    let w = C64::from_polar(1.0, -theta);
    let n = a.n();
    let mut out = CMat::zeros(n);
    for i in 0..n {
        for j in i..n {
            let z = (w * a[(i, j)] + (w * a[(j, i)]).conj()) * 0.5;
            out[(i, j)] = z;
            out[(j, i)] = z.conj();
        }
    }
    out
}

/// Im(e^{-i theta} A).
pub fn rotated_im(a: &CMat, theta: f64) -> CMat {
    let w = C64::from_polar(1.0, -theta);
    let n = a.n();
    let mut out = CMat::zeros(n);
    for i in 0..n {
        for j in i..n {
            // (z - conj(z'))/2i with z = w a_ij, z' = w a_ji
            let z = (w * a[(i, j)] - (w * a[(j, i)]).conj()) * C64::new(0.0, -0.5);
            out[(i, j)] = z;
            out[(j, i)] = z.conj();
        }
    }
    out
}

fn eig_values(h: &CMat) -> Vec<f64> {
    hermitian_eigenvalues(h).expect("eigensolver convergence")
}

/// Minimal eigenvalue of Re(e^{-i theta} A): the signed support distance.
pub fn support_value(a: &CMat, theta: f64) -> f64 {
    eig_values(&rotated_re(a, theta))[0]
}

pub fn support_line(a: &CMat, theta: f64) -> SupportLine {
    SupportLine::new(theta, support_value(a, theta))
}

/// A point of F(A) on the supporting line at angle theta: <A x, x> for a unit
/// eigenvector x of the minimal eigenvalue. When the eigenvalue is multiple,
/// any extremal eigenvector is acceptable; `flat_portions` gives the segment.
pub fn boundary_point(a: &CMat, theta: f64) -> C64 {
    let eig = hermitian_eig(&rotated_re(a, theta)).expect("eigensolver convergence");
    let x = eig.vector(0);
    inner(&a.mat_vec(&x), &x)
}

/// Boundary points at n equally spaced angles in [0, 2 pi); n >= 16.
pub fn sample_boundary(a: &CMat, n_samples: usize) -> Vec<C64> {
    assert!(n_samples >= 16, "need at least 16 samples");
    (0..n_samples)
        .map(|k| boundary_point(a, TAU * k as f64 / n_samples as f64))
        .collect()
}

/// F(A) is degenerate (a point or a segment) iff its boundary probe is
/// collinear to 1e-10 (1 + |A|_F).
pub fn is_degenerate(a: &CMat) -> bool {
    let pts = sample_boundary(a, 64);
    let tol = 1e-10 * (1.0 + a.fro_norm());
    let p0 = pts[0];
    let mut far = p0;
    let mut dist = 0.0;
    for &p in &pts {
        let d = (p - p0).norm();
        if d > dist {
            dist = d;
            far = p;
        }
    }
    if dist <= tol {
        return true; // single point
    }
    let dir = (far - p0) / dist;
    pts.iter().all(|&p| ((p - p0) * dir.conj()).im.abs() <= tol)
}

fn ensure_nondegenerate(a: &CMat) -> Result<()> {
    if is_degenerate(a) {
        Err(Error::DegenerateRange)
    } else {
        Ok(())
    }
}

fn circular_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Golden-section minimization on [lo, hi] to interval width `tol`.
fn golden_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INVPHI * (hi - lo);
    let mut x2 = lo + INVPHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INVPHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INVPHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// All angles in [0, 2 pi) where the minimal eigenvalue of Re(e^{-i theta} A)
/// is multiple under the eps_mult tolerance, with the corresponding
/// eigenspaces. Found by scanning the eigenvalue gap on a grid and refining
/// each local minimum by golden-section search to 1e-12.
pub fn exceptional_angles(a: &CMat) -> Result<Vec<ExceptionalSubspace>> {
    exceptional_angles_with(a, &RangeConfig::default())
}

pub fn exceptional_angles_with(a: &CMat, cfg: &RangeConfig) -> Result<Vec<ExceptionalSubspace>> {
    ensure_nondegenerate(a)?;
    let n_scan = cfg.n_scan.max(16);
    let eps_mult = cfg.eps_mult(a);
    let gap = |theta: f64| {
        let vals = eig_values(&rotated_re(a, theta));
        vals[1] - vals[0]
    };
    let h = TAU / n_scan as f64;
    // Independent per-angle work; the indexed collect keeps the result
    // identical for any parallel schedule.
    let gaps: Vec<f64> = {
        use rayon::prelude::*;
        (0..n_scan).into_par_iter().map(|k| gap(k as f64 * h)).collect()
    };

    let mut angles: Vec<f64> = Vec::new();
    for i in 0..n_scan {
        let prev = gaps[(i + n_scan - 1) % n_scan];
        let next = gaps[(i + 1) % n_scan];
        if gaps[i] <= prev && gaps[i] <= next {
            let lo = (i as f64 - 1.0) * h;
            let hi = (i as f64 + 1.0) * h;
            let theta = golden_min(&gap, lo, hi, 1e-12);
            if gap(theta) < eps_mult {
                angles.push(polish_angle(a, theta, cfg, &gap).rem_euclid(TAU));
            }
        }
    }
    angles.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut dedup: Vec<f64> = Vec::new();
    for t in angles {
        if dedup.iter().all(|&s| circular_distance(s, t) > 1e-9) {
            dedup.push(t);
        }
    }

    dedup
        .into_iter()
        .map(|theta| {
            let eig = hermitian_eig(&rotated_re(a, theta))?;
            let lambda0 = eig.values[0];
            let basis: Vec<Vec<C64>> = eig
                .values
                .iter()
                .enumerate()
                .take_while(|(_, &v)| v - lambda0 <= eps_mult)
                .map(|(k, _)| eig.vector(k))
                .collect();
            Ok(ExceptionalSubspace { theta, basis })
        })
        .collect()
}

/// Sharpen an exceptional angle found by the gap scan.
///
/// Where the lowest eigenvalue branches touch tangentially (gap of order
/// c (theta - theta0)^2: the multiply generated round points), the gap is at
/// roundoff level over a valley of width ~1e-8 and the refined angle can
/// land anywhere inside it, tilting the eigenbasis and leaving a spurious
/// compression spread of the same order. The spread decays linearly in the
/// angle offset, so minimizing it recovers the exact angle.
///
/// A genuine flat portion is left alone: its spread stays near the segment
/// length across the bracket, so the polished angle is accepted only when
/// the minimized spread certifies a round point (below eps_flat) and the
/// gap still certifies multiplicity.
fn polish_angle(a: &CMat, theta: f64, cfg: &RangeConfig, gap: &dyn Fn(f64) -> f64) -> f64 {
    let eps_mult = cfg.eps_mult(a);
    let k = {
        let vals = eig_values(&rotated_re(a, theta));
        vals.iter().take_while(|&&v| v - vals[0] <= eps_mult).count().max(2)
    };
    let spread = |th: f64| {
        let eig = hermitian_eig(&rotated_re(a, th)).expect("eigensolver convergence");
        let basis: Vec<Vec<C64>> = (0..k).map(|j| eig.vector(j)).collect();
        let mu = eig_values(&compression(&rotated_im(a, th), &basis));
        mu[mu.len() - 1] - mu[0]
    };
    let polished = golden_min(&spread, theta - 1e-4, theta + 1e-4, 1e-12);
    // The correction only ever traverses the roundoff valley (width ~1e-8);
    // a larger jump would mean the search escaped toward some other feature.
    if (polished - theta).abs() <= 1e-5
        && spread(polished) < cfg.eps_flat(a)
        && gap(polished) < eps_mult
    {
        polished
    } else {
        theta
    }
}

/// Compression of M onto the span of an orthonormal basis:
/// `C[i][j] = <M b_j, b_i>`.
pub fn compression(m: &CMat, basis: &[Vec<C64>]) -> CMat {
    let k = basis.len();
    assert!(k >= 1 && k <= m.n());
    let mut c = CMat::zeros(k);
    for (j, bj) in basis.iter().enumerate() {
        let mb = m.mat_vec(bj);
        for (i, bi) in basis.iter().enumerate() {
            c[(i, j)] = inner(&mb, bi);
        }
    }
    c
}

/// Test whether the compression of A onto span{y1, y2} is a scalar multiple
/// of the identity:
///   <A y1, y1> |y2|^2 = <A y2, y2> |y1|^2   and
///   <A y2, y1> |y1|^2 = <y2, y1> <A y1, y1>,
/// both to 1e-9 (1 + |A|_F) |y1|^2 |y2|^2.
pub fn compression_is_scalar(a: &CMat, y1: &[C64], y2: &[C64]) -> Result<bool> {
    let n1 = vec_norm(y1).powi(2);
    let n2 = vec_norm(y2).powi(2);
    let g12 = inner(y1, y2);
    let gram = n1 * n2 - g12.norm_sqr();
    let rel = if n1 * n2 > 0.0 { gram / (n1 * n2) } else { 0.0 };
    if !(rel > 1e-12) {
        return Err(Error::DependentVectors(rel));
    }
    let ay1 = a.mat_vec(y1);
    let ay2 = a.mat_vec(y2);
    let q11 = inner(&ay1, y1);
    let q22 = inner(&ay2, y2);
    let q21 = inner(&ay2, y1);
    let tol = 1e-9 * (1.0 + a.fro_norm()) * n1 * n2;
    let eq1 = (q11 * n2 - q22 * n1).norm() <= tol;
    let eq2 = (q21 * n1 - inner(y2, y1) * q11).norm() <= tol;
    Ok(eq1 && eq2)
}

/// All flat portions of the boundary of F(A), with endpoints.
///
/// For each exceptional angle the compression of Im(e^{-i theta} A) onto the
/// minimal eigenspace is diagonalized; its extreme eigenvalues mu-/mu+ give
/// the segment endpoints e^{i theta} (d + i mu). Segments shorter than
/// eps_flat are multiply generated round boundary points, not flat portions.
pub fn flat_portions(a: &CMat) -> Result<Vec<FlatPortion>> {
    flat_portions_with(a, &RangeConfig::default())
}

pub fn flat_portions_with(a: &CMat, cfg: &RangeConfig) -> Result<Vec<FlatPortion>> {
    let eps_flat = cfg.eps_flat(a);
    let mut out = Vec::new();
    for sub in exceptional_angles_with(a, cfg)? {
        let theta = sub.theta;
        let d = support_value(a, theta);
        let comp = compression(&rotated_im(a, theta), &sub.basis);
        let mu = eig_values(&comp);
        let (mu_min, mu_max) = (mu[0], mu[mu.len() - 1]);
        let length = mu_max - mu_min;
        if length > eps_flat {
            let w = C64::from_polar(1.0, theta);
            out.push(FlatPortion {
                line: SupportLine::new(theta, d),
                z1: w * C64::new(d, mu_min),
                z2: w * C64::new(d, mu_max),
                length,
            });
        }
    }
    Ok(out)
}
