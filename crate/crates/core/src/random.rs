//! Seeded random generators for the certification sweeps and property tests.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::cmat::{inner, vec_norm, CMat, C64};
use crate::families::ExceptionalParams;

/// Standard complex gaussian: real and imaginary parts N(0, 1/2).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let mut m = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// Strictly upper triangular with independent complex gaussian entries.
pub fn strictly_upper_nilpotent<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let mut m = CMat::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    gaussian_matrix(n, rng).re_part()
}

/// Haar-distributed unitary: modified Gram-Schmidt (with reorthogonalization)
/// of a complex gaussian matrix. The diagonal of the implicit R factor is
/// positive real, which makes the distribution exactly Haar.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    loop {
        let g = gaussian_matrix(n, rng);
        let mut cols: Vec<Vec<C64>> = (0..n).map(|j| g.column(j)).collect();
        let mut ok = true;
        for j in 0..n {
            for _ in 0..2 {
                for k in 0..j {
                    let c = inner(&cols[j], &cols[k]);
                    let prev = cols[k].clone();
                    for (x, p) in cols[j].iter_mut().zip(&prev) {
                        *x -= c * p;
                    }
                }
            }
            let nrm = vec_norm(&cols[j]);
            if nrm < 1e-8 {
                ok = false;
                break;
            }
            for x in cols[j].iter_mut() {
                *x /= nrm;
            }
        }
        if !ok {
            continue; // essentially impossible; redraw
        }
        let mut u = CMat::zeros(n);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                u[(i, j)] = col[i];
            }
        }
        return u;
    }
}

/// Point uniform on the closed unit disk.
pub fn unit_disk<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let r = rng.gen::<f64>().sqrt();
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    C64::from_polar(r, phi)
}

/// Generic draw of exceptional-line family parameters: moduli strictly
/// inside the unit disk, free angles, alpha of moderate magnitude.
pub fn random_exceptional_params<R: Rng + ?Sized>(rng: &mut R) -> ExceptionalParams {
    let tau = std::f64::consts::TAU;
    ExceptionalParams::new(
        C64::from_polar(rng.gen_range(0.4..2.0), rng.gen_range(0.0..tau)),
        unit_disk(rng),
        unit_disk(rng),
        unit_disk(rng),
        rng.gen_range(0.0..tau),
        rng.gen_range(0.0..tau),
    )
    .expect("moduli at most one by construction")
}
