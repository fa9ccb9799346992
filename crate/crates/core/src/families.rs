//! Constructors and closed-form flat-portion criteria for the structured
//! 4-by-4 nilpotent families: the exceptional-line family, its tau
//! obstructions, the parallel-flat canonical form, and the real
//! palindromic family.

use std::f64::consts::PI;


use crate::cmat::{CMat, C64};
use crate::eig::hermitian_eigenvalues;
use crate::error::{Error, Result};

/// Parameters (alpha, a1, a2, a3, theta1, theta2) of the exceptional-line
/// family. Derived quantities: r_j = sqrt(1 - |a_j|^2) and
/// theta3 = theta2 - theta1.
#[derive(Clone, Debug)]
pub struct ExceptionalParams {
    pub alpha: C64,
    pub a1: C64,
    pub a2: C64,
    pub a3: C64,
    pub theta1: f64,
    pub theta2: f64,
}

impl ExceptionalParams {
    pub fn new(alpha: C64, a1: C64, a2: C64, a3: C64, theta1: f64, theta2: f64) -> Result<Self> {
        for (j, a) in [(1usize, a1), (2, a2), (3, a3)] {
            let m = a.norm();
            if !(m <= 1.0 + 1e-12) {
                return Err(Error::BadModulus { j, modulus: m });
            }
        }
        Ok(ExceptionalParams { alpha, a1, a2, a3, theta1, theta2 })
    }

    pub fn theta3(&self) -> f64 {
        self.theta2 - self.theta1
    }

    /// r_j = sqrt(1 - |a_j|^2). A modulus within 1e-12 of one counts as
    /// exactly one (r_j = 0): the square root would otherwise turn entry
    /// roundoff of order 1e-16 into a spurious radius of order 1e-8,
    /// pushing the parameters off the |a_j| = 1 stratum.
    pub fn r(&self) -> [f64; 3] {
        let r = |a: C64| {
            let x = 1.0 - a.norm_sqr();
            if x.abs() <= 1e-12 {
                0.0
            } else {
                x.max(0.0).sqrt()
            }
        };
        [r(self.a1), r(self.a2), r(self.a3)]
    }
}

/// Entries of a strictly upper triangular 4-by-4 matrix. In the single-index
/// aliases, (a1..a6) = (a12, a13, a14, a23, a24, a34).
#[derive(Clone, Copy, Debug)]
pub struct UpperNilpotent4 {
    pub a12: C64,
    pub a13: C64,
    pub a14: C64,
    pub a23: C64,
    pub a24: C64,
    pub a34: C64,
}

impl UpperNilpotent4 {
    pub fn from_entries([a1, a2, a3, a4, a5, a6]: [C64; 6]) -> Self {
        UpperNilpotent4 { a12: a1, a13: a2, a14: a3, a23: a4, a24: a5, a34: a6 }
    }

    pub fn entries(&self) -> [C64; 6] {
        [self.a12, self.a13, self.a14, self.a23, self.a24, self.a34]
    }

    /// Extract from a strictly upper triangular matrix; entries on or below
    /// the diagonal must vanish to 1e-10 (1 + |T|_F).
    pub fn from_matrix(t: &CMat) -> Result<Self> {
        if t.n() != 4 {
            return Err(Error::BadParams(format!("expected 4x4, got {}x{}", t.n(), t.n())));
        }
        let tol = 1e-10 * (1.0 + t.fro_norm());
        for i in 0..4 {
            for j in 0..=i {
                if t[(i, j)].norm() > tol {
                    return Err(Error::BadParams(format!(
                        "entry ({i}, {j}) = {} is not strictly upper triangular",
                        t[(i, j)]
                    )));
                }
            }
        }
        Ok(UpperNilpotent4 {
            a12: t[(0, 1)],
            a13: t[(0, 2)],
            a14: t[(0, 3)],
            a23: t[(1, 2)],
            a24: t[(1, 3)],
            a34: t[(2, 3)],
        })
    }

    pub fn matrix(&self, alpha: C64) -> CMat {
        let z = C64::new(0.0, 0.0);
        CMat::from_rows(&[
            vec![z, alpha * self.a12, alpha * self.a13, alpha * self.a14],
            vec![z, z, alpha * self.a23, alpha * self.a24],
            vec![z, z, z, alpha * self.a34],
            vec![z, z, z, z],
        ])
        .expect("finite entries")
    }
}

/// The 3-by-3 hermitian residual whose positive semidefiniteness with rank
/// at most one characterizes the exceptional-line family.
#[derive(Clone, Debug)]
pub struct GramResidual {
    pub matrix: CMat,
    /// The three 2-by-2 principal minors, in index order {1,2}, {1,3}, {2,3}.
    pub minors: [f64; 3],
}

pub fn gram_residual(m: &UpperNilpotent4) -> GramResidual {
    let [a1, a2, a3, a4, a5, a6] = m.entries();
    let g11 = 1.0 - a1.norm_sqr();
    let g22 = 1.0 - a2.norm_sqr();
    let g33 = 1.0 - a3.norm_sqr();
    let g12 = a4 - a1.conj() * a2;
    let g13 = a5 - a1.conj() * a3;
    let g23 = a6 - a2.conj() * a3;
    let matrix = CMat::from_rows(&[
        vec![C64::new(g11, 0.0), g12, g13],
        vec![g12.conj(), C64::new(g22, 0.0), g23],
        vec![g13.conj(), g23.conj(), C64::new(g33, 0.0)],
    ])
    .expect("finite entries");
    let minors = [
        g11 * g22 - g12.norm_sqr(),
        g11 * g33 - g13.norm_sqr(),
        g22 * g33 - g23.norm_sqr(),
    ];
    GramResidual { matrix, minors }
}

/// The member of the exceptional-line family with the given parameters:
/// alpha times the strictly upper matrix with first row (a1, a2, a3) and
///   a4 = conj(a1) a2 + r1 r2 e^{i theta1},
///   a5 = conj(a1) a3 + r1 r3 e^{i theta2},
///   a6 = conj(a2) a3 + r2 r3 e^{i theta3}.
pub fn construct_exceptional(p: &ExceptionalParams) -> CMat {
    let [r1, r2, r3] = p.r();
    let e1 = C64::from_polar(1.0, p.theta1);
    let e2 = C64::from_polar(1.0, p.theta2);
    let e3 = C64::from_polar(1.0, p.theta3());
    let a4 = p.a1.conj() * p.a2 + e1 * (r1 * r2);
    let a5 = p.a1.conj() * p.a3 + e2 * (r1 * r3);
    let a6 = p.a2.conj() * p.a3 + e3 * (r2 * r3);
    UpperNilpotent4::from_entries([p.a1, p.a2, p.a3, a4, a5, a6]).matrix(p.alpha)
}

/// Whether the supporting line at angle arg(alpha) and distance |alpha|/2 is
/// exceptional for alpha * T(m): equivalently, the Gram residual is positive
/// semidefinite of rank at most one. alpha = 0 gives the zero matrix, for
/// which every supporting line is trivially exceptional.
pub fn exceptional_criterion(m: &UpperNilpotent4, alpha: C64) -> bool {
    if alpha.norm() == 0.0 {
        return true;
    }
    let g = gram_residual(m);
    let eps = 1e-8 * (1.0 + g.matrix.fro_norm());
    let vals = hermitian_eigenvalues(&g.matrix).expect("eigensolver convergence");
    vals[0] >= -eps && vals[1] <= eps
}

/// First obstruction to a flat portion in the r1 r2 r3 != 0 regime.
pub fn tau1(p: &ExceptionalParams) -> Result<C64> {
    let [r1, r2, r3] = p.r();
    if r1 == 0.0 || r2 == 0.0 || r3 == 0.0 {
        return Err(Error::ZeroRadius);
    }
    let (a1, a2, a3) = (p.a1, p.a2, p.a3);
    let e1 = C64::from_polar(1.0, p.theta1);
    let e2 = C64::from_polar(1.0, p.theta2);
    let e21 = C64::from_polar(1.0, p.theta2 - p.theta1);
    let t_a = a1.conj() * a3 * e2.conj() - a1 * a3.conj() * e2;
    let t_b = a1 * a2.conj() * e1 - a1.conj() * a2 * e1.conj();
    let t_c = a2 * a3.conj() * e21 - a2.conj() * a3 * e21.conj();
    Ok(t_a * (r3 * (r1 * r1 + r2 * r2 - r1 * r1 * r2 * r2))
        + t_b * (r2 * (r1 * r1 + r3 * r3 - r1 * r1 * r3 * r3))
        + t_c * (r1 * r2 * r3 * a1.norm_sqr()))
}

/// Second obstruction to a flat portion in the r1 r2 r3 != 0 regime.
pub fn tau2(p: &ExceptionalParams) -> Result<C64> {
    let [r1, r2, r3] = p.r();
    if r1 == 0.0 || r2 == 0.0 || r3 == 0.0 {
        return Err(Error::ZeroRadius);
    }
    let (a1, a2, a3) = (p.a1, p.a2, p.a3);
    let e1 = C64::from_polar(1.0, p.theta1);
    let e2 = C64::from_polar(1.0, p.theta2);
    let e21 = C64::from_polar(1.0, p.theta2 - p.theta1);
    let e2m21 = C64::from_polar(1.0, p.theta2 - 2.0 * p.theta1);
    let (r1s, r2s) = (r1 * r1, r2 * r2);
    Ok(a2.conj() * a3 * (r1 * (r1s + 2.0 * r2s - 2.0 * r1s * r2s))
        - a1 * a2.conj() * a2.conj() * a3 * (r1s * r2) * e1
        + a1.conj() * a3 * (r2 * (-r2s - r1s + r1s * r2s)) * e1.conj()
        + a1 * a2.conj() * (r1s * r3 * a2.norm_sqr()) * e2
        + e21 * (r1 * r2 * r3 * (1.0 - 2.0 * a1.norm_sqr() * a2.norm_sqr()))
        + a1.conj() * a2 * (a1.norm_sqr() * r2s * r3) * e2m21)
}

/// Specialization of [`tau2`] to real a_j with theta_j multiples of pi;
/// agrees with `tau2` on the common domain.
pub fn real_tau2(a1: f64, a2: f64, a3: f64, theta1: f64, theta2: f64) -> Result<C64> {
    let r = |a: f64| (1.0 - a * a).max(0.0).sqrt();
    let (r1, r2, r3) = (r(a1), r(a2), r(a3));
    if r1 == 0.0 || r2 == 0.0 || r3 == 0.0 {
        return Err(Error::ZeroRadius);
    }
    let theta3 = theta2 - theta1;
    let e1 = C64::from_polar(1.0, theta1);
    let e2 = C64::from_polar(1.0, theta2);
    let e3 = C64::from_polar(1.0, theta3);
    let (r1s, r2s) = (r1 * r1, r2 * r2);
    Ok(C64::new(r1 * a2 * a3 * (r1s + 2.0 * r2s - 2.0 * r1s * r2s), 0.0)
        - e1 * (a1 * r2 * a3 * (r2s + 2.0 * r1s - 2.0 * r1s * r2s))
        + e2 * (a1 * a2 * r3 * (r1s + r2s - 2.0 * r1s * r2s))
        + e3 * (r1 * r2 * r3 * (1.0 - 2.0 * a1 * a1 * a2 * a2)))
}

/// Outcome of the closed-form flat-portion criterion on the exceptional
/// supporting line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatVerdict {
    /// A proper segment materializes on the line.
    Flat,
    /// The line meets F(A) in a single (multiply generated round) point.
    NoFlat,
    /// A branch condition involves the argument of a zero entry; the
    /// closed form does not decide and the oracle answer should be used.
    ClosedFormInapplicable,
}

const ZERO_TOL: f64 = 1e-9;
const ANGLE_TOL: f64 = 1e-9;

fn angles_equal(x: f64, y: f64) -> bool {
    let d = (x - y).rem_euclid(2.0 * PI);
    d <= ANGLE_TOL || (2.0 * PI - d) <= ANGLE_TOL
}

/// Four-branch criterion for a flat portion on the exceptional supporting
/// line of [`construct_exceptional`]:
///   (i)   r1 r2 r3 != 0 and tau1 = tau2 = 0        -> no flat portion
///   (ii)  r1 = 0, r2 = r3 != 0, arg a3 = arg a2 + theta3 -> no flat portion
///   (iii) r2 = 0, r1 = r3 != 0, arg a3 = arg a1 + theta2 + pi -> none
///   (iv)  r3 = 0, r1 = r2 != 0, arg a2 = arg a1 + theta1 -> none
/// and a flat portion in every other case, including all cases with at
/// least two r_j equal to zero.
pub fn flat_on_line_verdict(p: &ExceptionalParams) -> FlatVerdict {
    let [r1, r2, r3] = p.r();
    let z1 = r1 <= ZERO_TOL;
    let z2 = r2 <= ZERO_TOL;
    let z3 = r3 <= ZERO_TOL;
    match (z1, z2, z3) {
        (false, false, false) => {
            let t1 = tau1(p).expect("nonzero radii");
            let t2 = tau2(p).expect("nonzero radii");
            if t1.norm() <= ZERO_TOL && t2.norm() <= ZERO_TOL {
                FlatVerdict::NoFlat
            } else {
                FlatVerdict::Flat
            }
        }
        (true, false, false) => {
            if (r2 - r3).abs() > ZERO_TOL {
                return FlatVerdict::Flat;
            }
            if p.a2.norm() <= ZERO_TOL || p.a3.norm() <= ZERO_TOL {
                return FlatVerdict::ClosedFormInapplicable;
            }
            if angles_equal(p.a3.arg(), p.a2.arg() + p.theta3()) {
                FlatVerdict::NoFlat
            } else {
                FlatVerdict::Flat
            }
        }
        (false, true, false) => {
            if (r1 - r3).abs() > ZERO_TOL {
                return FlatVerdict::Flat;
            }
            if p.a1.norm() <= ZERO_TOL || p.a3.norm() <= ZERO_TOL {
                return FlatVerdict::ClosedFormInapplicable;
            }
            if angles_equal(p.a3.arg(), p.a1.arg() + p.theta2 + PI) {
                FlatVerdict::NoFlat
            } else {
                FlatVerdict::Flat
            }
        }
        (false, false, true) => {
            if (r1 - r2).abs() > ZERO_TOL {
                return FlatVerdict::Flat;
            }
            if p.a1.norm() <= ZERO_TOL || p.a2.norm() <= ZERO_TOL {
                return FlatVerdict::ClosedFormInapplicable;
            }
            if angles_equal(p.a2.arg(), p.a1.arg() + p.theta1) {
                FlatVerdict::NoFlat
            } else {
                FlatVerdict::Flat
            }
        }
        // at least two radii vanish: the segment always materializes
        _ => FlatVerdict::Flat,
    }
}

/// Boolean form of the criterion. The inapplicable corner is mapped to
/// `true` (a flat portion), matching the convention that a branch condition
/// on the argument of a zero entry is vacuous.
pub fn has_flat_on_line(p: &ExceptionalParams) -> bool {
    flat_on_line_verdict(p) != FlatVerdict::NoFlat
}

/// Canonical matrix with two parallel flat portions:
/// alpha * [[0, a1, a2, a3], [0, 0, a3, -a2], [0, 0, 0, a1], 0]
/// with a1, a3 > 0 and a2 real. The portions lie on lines at distance
/// |alpha| sqrt(a1^2 + a2^2 + a3^2) / 2 from the origin with slope angle
/// arg(alpha).
pub fn parallel_canonical(a1: f64, a2: f64, a3: f64, alpha: C64) -> Result<CMat> {
    if !(a1 > 0.0) || !(a3 > 0.0) {
        return Err(Error::BadParams(format!("need a1, a3 > 0, got a1 = {a1}, a3 = {a3}")));
    }
    if !a2.is_finite() {
        return Err(Error::BadParams("a2 must be finite".into()));
    }
    if alpha.norm() == 0.0 || !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::BadParams("alpha must be nonzero and finite".into()));
    }
    let m = CMat::from_real_rows(&[
        vec![0.0, a1, a2, a3],
        vec![0.0, 0.0, a3, -a2],
        vec![0.0, 0.0, 0.0, a1],
        vec![0.0, 0.0, 0.0, 0.0],
    ])?;
    Ok(m.scale(alpha))
}

/// The real palindromic family [[0, a1, a2, a3], [0, 0, a3, a2],
/// [0, 0, 0, a1], 0].
pub fn real_family_matrix(a1: f64, a2: f64, a3: f64) -> CMat {
    CMat::from_real_rows(&[
        vec![0.0, a1, a2, a3],
        vec![0.0, 0.0, a3, a2],
        vec![0.0, 0.0, 0.0, a1],
        vec![0.0, 0.0, 0.0, 0.0],
    ])
    .expect("finite entries")
}

/// Closed-form eigenvalues of Re(e^{-i theta} A) for the real palindromic
/// family, in the fixed order (lambda1, lambda2, lambda3, lambda4):
///   lambda1/3 = (-a2 -/+ sqrt(a1^2 + a3^2 - 2 a1 a3 cos theta)) / 2,
///   lambda2/4 = ( a2 -/+ sqrt(a1^2 + a3^2 + 2 a1 a3 cos theta)) / 2.
pub fn real_family_eigenvalues(a1: f64, a2: f64, a3: f64, theta: f64) -> [f64; 4] {
    let c = theta.cos();
    let sm = (a1 * a1 + a3 * a3 - 2.0 * a1 * a3 * c).max(0.0).sqrt();
    let sp = (a1 * a1 + a3 * a3 + 2.0 * a1 * a3 * c).max(0.0).sqrt();
    [
        0.5 * (-a2 - sm),
        0.5 * (a2 - sp),
        0.5 * (-a2 + sm),
        0.5 * (a2 + sp),
    ]
}

/// The boundary of F(A) for the real palindromic family contains a vertical
/// flat portion iff |a1| = |a3| and |a2| >= |a1|; it is then the only flat
/// portion.
pub fn real_family_vertical_flat(a1: f64, a2: f64, a3: f64) -> Result<bool> {
    if a1 == 0.0 {
        return Err(Error::ZeroA1);
    }
    Ok(a1.abs() == a3.abs() && a2.abs() >= a1.abs())
}
