//! Self-contained Hermitian eigensolver for matrices of dimension <= 8.
//!
//! Cyclic complex Jacobi: each rotation annihilates one off-diagonal pair
//! exactly, so a 2-by-2 input is diagonalized in closed form by the first
//! rotation. Convergence is quadratic; the sweep cap is a hard error, never
//! a silent fallback.


use crate::cmat::{CMat, C64};
use crate::error::{Error, Result};

/// Sweep cap for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 200;

/// Two eigenvalues of H count as equal when closer than this times (1 + |H|_F).
pub const EPS_MULT_REL: f64 = 1e-8;

/// Eigendecomposition of a Hermitian matrix.
///
/// `values` ascending; column k of `vectors` is a unit eigenvector for
/// `values[k]`, and the columns are orthonormal.
#[derive(Clone, Debug)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl HermEig {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }
}

fn check_hermitian(h: &CMat) -> Result<()> {
    let tol = 1e-10 * (1.0 + h.fro_norm());
    let asym = h.hermitian_asymmetry();
    if asym > tol {
        return Err(Error::NotHermitian { asym, tol });
    }
    Ok(())
}

/// One Jacobi pass over all (p, q) pairs; returns the rotated matrix in place.
///
/// The rotation for the pair (p, q) is the unitary that diagonalizes the
/// 2-by-2 block [[a_pp, a_pq], [conj(a_pq), a_qq]]:
///   V = [[c, -s e^{i b}], [s e^{-i b}, c]],  b = arg(a_pq),
/// with tan(2t) = 2|a_pq| / (a_pp - a_qq), resolved through the classical
/// tangent recurrence (inner rotations, |t| <= pi/4).
fn sweep(a: &mut CMat, v: Option<&mut CMat>, skip_below: f64) {
    let n = a.n();
    let mut vv = v;
    for p in 0..n {
        for q in p + 1..n {
            let apq = a[(p, q)];
            let r = apq.norm();
            if r <= skip_below {
                continue;
            }
            let app = a[(p, p)].re;
            let aqq = a[(q, q)].re;
            let phase = apq / r;
            let cot2 = (app - aqq) / (2.0 * r);
            let t = cot2.signum() / (cot2.abs() + (1.0 + cot2 * cot2).sqrt());
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;
            let sp = phase * s; // s e^{i b}
            // Column update: A <- A V.
            for k in 0..n {
                let akp = a[(k, p)];
                let akq = a[(k, q)];
                a[(k, p)] = akp * c + akq * sp.conj();
                a[(k, q)] = akq * c - akp * sp;
            }
            // Row update: A <- V* A.
            for k in 0..n {
                let apk = a[(p, k)];
                let aqk = a[(q, k)];
                a[(p, k)] = apk * c + aqk * sp;
                a[(q, k)] = aqk * c - apk * sp.conj();
            }
            if let Some(ref mut vm) = vv {
                for k in 0..n {
                    let vkp = vm[(k, p)];
                    let vkq = vm[(k, q)];
                    vm[(k, p)] = vkp * c + vkq * sp.conj();
                    vm[(k, q)] = vkq * c - vkp * sp;
                }
            }
        }
    }
}

fn off_norm(a: &CMat) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(h: &CMat, want_vectors: bool) -> Result<(Vec<f64>, Option<CMat>)> {
    let n = h.n();
    // Work on the exactly hermitian average so roundoff in the input cannot
    // push eigenvalues off the real axis.
    let mut a = CMat::zeros(n);
    for i in 0..n {
        for j in i..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = want_vectors.then(|| CMat::identity(n));
    let scale = 1.0 + h.fro_norm();
    let target = 1e-14 * scale;
    let skip = 1e-18 * scale;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        sweep(&mut a, v.as_mut(), skip);
    }
    if !converged && off_norm(&a) > target {
        return Err(Error::ConvergenceFailed(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = v.map(|vm| {
        let mut out = CMat::zeros(n);
        for (new_j, &old_j) in order.iter().enumerate() {
            for i in 0..n {
                out[(i, new_j)] = vm[(i, old_j)];
            }
        }
        out
    });
    Ok((values, vectors))
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(h: &CMat) -> Result<HermEig> {
    check_hermitian(h)?;
    let (values, vectors) = jacobi(h, true)?;
    Ok(HermEig { values, vectors: vectors.unwrap() })
}

/// Eigenvalues only (ascending); cheaper than [`hermitian_eig`].
pub fn hermitian_eigenvalues(h: &CMat) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    Ok(jacobi(h, false)?.0)
}

/// Orthonormal basis of the numerical kernel of M: the span of eigenvectors
/// of M*M with eigenvalue at most eps_mult^2, eps_mult = 1e-8 (1 + |M|_F).
pub fn numerical_kernel(m: &CMat) -> Result<Vec<Vec<C64>>> {
    let gram = m.adjoint().mul(m);
    let eig = hermitian_eig(&gram)?;
    let eps = EPS_MULT_REL * (1.0 + m.fro_norm());
    let thr = eps * eps;
    let mut basis = Vec::new();
    for (k, &lam) in eig.values.iter().enumerate() {
        if lam <= thr {
            basis.push(eig.vector(k));
        }
    }
    Ok(basis)
}
