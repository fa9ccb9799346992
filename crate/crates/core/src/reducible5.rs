//! Flat-portion classification for 5-by-5 nilpotent matrices built as a
//! direct sum of a 2-by-2 block [[0, r], [0, 0]] and a 3-by-3 block
//! [[0, r1, r2], [0, 0, r3], [0, 0, 0]].

use std::f64::consts::PI;

use crate::cmat::{CMat, C64};
use crate::error::{Error, Result};

/// Parameters of the direct-sum family: r is the 2-by-2 radius parameter,
/// (r1, r2, r3) the 3-by-3 entries, with r, r1, r3 > 0 and r2 >= 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reducible5Params {
    pub r: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl Reducible5Params {
    pub fn new(r: f64, r1: f64, r2: f64, r3: f64) -> Result<Self> {
        for (name, x) in [("r", r), ("r1", r1), ("r2", r2), ("r3", r3)] {
            if !x.is_finite() {
                return Err(Error::BadParams(format!("{name} must be finite")));
            }
        }
        if !(r > 0.0 && r1 > 0.0 && r3 > 0.0) {
            return Err(Error::BadParams(format!(
                "need r, r1, r3 > 0 (got r = {r}, r1 = {r1}, r3 = {r3})"
            )));
        }
        if r2 < 0.0 {
            return Err(Error::BadParams(format!("need r2 >= 0 (got {r2})")));
        }
        Ok(Reducible5Params { r, r1, r2, r3 })
    }

    /// s = r1^2 + r2^2 + r3^2.
    pub fn s(&self) -> f64 {
        self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3
    }

    /// t = r1 r2 r3.
    pub fn t(&self) -> f64 {
        self.r1 * self.r2 * self.r3
    }
}

/// Distance from the origin to the supporting line of the 3-by-3 block's
/// numerical range at angle theta: half the maximal root of
/// f(x) = x^3 - s x - 2 t cos(theta), evaluated in closed trigonometric form
///   sqrt(s/3) cos( arccos(3 sqrt(3) t cos(theta) / s^{3/2}) / 3 ).
/// For t = 0 the cubic degenerates and the distance is sqrt(s)/2 (a disk).
pub fn support_distance_3x3(p: &Reducible5Params, theta: f64) -> f64 {
    let s = p.s();
    let t = p.t();
    if t == 0.0 {
        return s.sqrt() / 2.0;
    }
    // AM-GM gives |3 sqrt(3) t| <= s^{3/2}; clamp against roundoff.
    let arg = (3.0 * 3.0f64.sqrt() * t * theta.cos() / s.powf(1.5)).clamp(-1.0, 1.0);
    (s / 3.0).sqrt() * (arg.acos() / 3.0).cos()
}

/// Point of the cardioid x = 2 cos(theta) + cos(2 theta),
/// y = 2 sin(theta) + sin(2 theta): the boundary generating curve of the
/// 3-by-3 block with equal parameters 3. Its modulus is sqrt(5 + 4 cos theta).
pub fn cardioid_point(theta: f64) -> C64 {
    C64::new(
        2.0 * theta.cos() + (2.0 * theta).cos(),
        2.0 * theta.sin() + (2.0 * theta).sin(),
    )
}

/// Exact flat-portion count of the assembled 5-by-5 matrix.
///
/// - r2 = 0: both blocks have circular disks, count 0.
/// - unequal parameters: the 3-by-3 range has no flat portion of its own and
///   the count is 2 exactly when the disk radius r/2 lies strictly between
///   the extreme support distances (attained at theta = pi and theta = 0),
///   otherwise 0.
/// - all parameters equal to rho: the 3-by-3 range has a vertical segment on
///   its boundary; count 1 for r <= rho, 2 for rho < r < 2 rho, 0 for
///   r >= 2 rho (thresholds scale linearly in rho).
pub fn flat_count_5x5(p: &Reducible5Params) -> usize {
    if p.r2 == 0.0 {
        return 0;
    }
    if p.r1 == p.r2 && p.r2 == p.r3 {
        let rho = p.r1;
        if p.r <= rho {
            1
        } else if p.r < 2.0 * rho {
            2
        } else {
            0
        }
    } else {
        let d_min = support_distance_3x3(p, PI);
        let d_max = support_distance_3x3(p, 0.0);
        let half = p.r / 2.0;
        if d_min < half && half < d_max {
            2
        } else {
            0
        }
    }
}

/// The 5-by-5 block-diagonal matrix of the family.
pub fn assemble_5x5(p: &Reducible5Params) -> CMat {
    let b1 = CMat::from_real_rows(&[vec![0.0, p.r], vec![0.0, 0.0]]).expect("finite");
    let b2 = CMat::from_real_rows(&[
        vec![0.0, p.r1, p.r2],
        vec![0.0, 0.0, p.r3],
        vec![0.0, 0.0, 0.0],
    ])
    .expect("finite");
    CMat::block_diag(&[b1, b2]).expect("5x5 fits")
}
