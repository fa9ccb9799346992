//! Unitary triangularization of nilpotent matrices via the kernel flag
//! ker A <= ker A^2 <= ... and diagonal-unitary normalization of the
//! superdiagonal.

use num_complex::Complex64;

use crate::cmat::{inner, vec_norm, CMat, C64};
use crate::eig::numerical_kernel;
use crate::error::{Error, Result};

/// Nilpotency test: |A^n|_F <= 1e-8 (1 + |A|_F)^n.
pub fn is_nilpotent(a: &CMat) -> bool {
    nilpotency_residual(a).is_ok()
}

fn nilpotency_residual(a: &CMat) -> Result<()> {
    let n = a.n();
    let residual = a.pow(n).fro_norm();
    let tol = 1e-8 * (1.0 + a.fro_norm()).powi(n as i32);
    if residual > tol {
        return Err(Error::NotNilpotent { residual, tol });
    }
    Ok(())
}

/// Unitary Q and strictly upper triangular T with Q* A Q = T.
///
/// Q's columns are an orthonormal basis adapted to the kernel flag, so A maps
/// each flag level into the previous one; entries of Q* A Q on or below the
/// diagonal are pure roundoff and are zeroed after a tolerance check.
pub fn nilpotent_triangularize(a: &CMat) -> Result<(CMat, CMat)> {
    nilpotency_residual(a)?;
    let n = a.n();
    let scale = 1.0 + a.fro_norm();

    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut power = CMat::identity(n);
    for _ in 0..n {
        if basis.len() == n {
            break;
        }
        power = power.mul(a);
        for cand in numerical_kernel(&power)? {
            if basis.len() == n {
                break;
            }
            // Orthogonalize against the flag built so far (twice, to keep Q
            // unitary to machine precision).
            let mut v = cand;
            for _ in 0..2 {
                for b in &basis {
                    let c = inner(&v, b);
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= c * bi;
                    }
                }
            }
            let nrm = vec_norm(&v);
            if nrm > 1e-8 {
                for vi in v.iter_mut() {
                    *vi /= nrm;
                }
                basis.push(v);
            }
        }
    }
    if basis.len() != n {
        // The flag did not exhaust the space; the input failed to be
        // numerically nilpotent despite passing the norm test.
        return Err(Error::NotNilpotent { residual: f64::NAN, tol: 0.0 });
    }

    let mut q = CMat::zeros(n);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            q[(i, j)] = b[i];
        }
    }
    let mut t = a.conjugate_by(&q);
    let tol = 1e-10 * scale;
    for i in 0..n {
        for j in 0..=i {
            let low = t[(i, j)].norm();
            if low > tol {
                return Err(Error::NotNilpotent { residual: low, tol });
            }
            t[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok((q, t))
}

/// Diagonal-unitary similarity making the superdiagonal entries real and
/// non-negative. Moduli of all entries are unchanged; zero superdiagonal
/// entries stay zero.
pub fn normalize_superdiagonal(t: &CMat) -> CMat {
    let n = t.n();
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n - 1 {
        let s = t[(i, i + 1)];
        let r = s.norm();
        phases[i + 1] = if r == 0.0 {
            phases[i]
        } else {
            // want conj(d_i) s d_{i+1} = |s|
            phases[i] * s.conj() / r
        };
    }
    let mut out = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = phases[i].conj() * t[(i, j)] * phases[j];
        }
    }
    out
}
