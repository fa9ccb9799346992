//! Dense complex matrices of dimension at most 8, row-major storage.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const MAX_DIM: usize = 8;

/// Dense complex n-by-n matrix, 1 <= n <= 8.
///
/// All entries are finite; construction enforces both invariants.
#[derive(Clone, PartialEq)]
pub struct CMat {
    n: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn new(n: usize, data: Vec<C64>) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::Dimension(n));
        }
        if data.len() != n * n {
            return Err(Error::Shape { n });
        }
        for (k, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { i: k / n, j: k % n });
            }
        }
        Ok(CMat { n, data })
    }

    /// Build from rows of real numbers.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Shape { n });
            }
            data.extend(row.iter().map(|&x| C64::new(x, 0.0)));
        }
        CMat::new(n, data)
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Shape { n });
            }
            data.extend_from_slice(row);
        }
        CMat::new(n, data)
    }

    pub fn zeros(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "dimension {n} out of range");
        CMat { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Block-diagonal direct sum.
    pub fn block_diag(blocks: &[CMat]) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        if n == 0 || n > MAX_DIM {
            return Err(Error::Dimension(n));
        }
        let mut m = CMat::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m[(off + i, off + j)] = b[(i, j)];
                }
            }
            off += b.n;
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.n, rhs.n);
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        CMat { n: self.n, data }
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.n, rhs.n);
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        CMat { n: self.n, data }
    }

    pub fn scale(&self, c: C64) -> CMat {
        CMat { n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// A^k by repeated multiplication (k small).
    pub fn pow(&self, k: usize) -> CMat {
        let mut out = CMat::identity(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Hermitian part (A + A*)/2.
    pub fn re_part(&self) -> CMat {
        let adj = self.adjoint();
        self.add(&adj).scale(C64::new(0.5, 0.0))
    }

    /// Skew part (A - A*)/(2i); hermitian, satisfies A = Re A + i Im A.
    pub fn im_part(&self) -> CMat {
        let adj = self.adjoint();
        // 1/(2i) = -i/2
        self.sub(&adj).scale(C64::new(0.0, -0.5))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_asymmetry() <= tol
    }

    /// max_{i,j} |a_ij - conj(a_ji)|
    pub fn hermitian_asymmetry(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn mat_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.n);
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * x[j]).sum())
            .collect()
    }

    /// u* A u for unitary u.
    pub fn conjugate_by(&self, u: &CMat) -> CMat {
        u.adjoint().mul(self).mul(u)
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> C64 {
        let n = self.n;
        let mut lu = self.data.clone();
        let mut det = C64::new(1.0, 0.0);
        for k in 0..n {
            let mut piv = k;
            let mut best = lu[k * n + k].norm();
            for i in k + 1..n {
                let v = lu[i * n + k].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best == 0.0 {
                return C64::new(0.0, 0.0);
            }
            if piv != k {
                for j in 0..n {
                    lu.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            let pivot = lu[k * n + k];
            det *= pivot;
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                for j in k + 1..n {
                    let sub = f * lu[k * n + j];
                    lu[i * n + j] -= sub;
                }
            }
        }
        det
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.n).map(|i| self.data[i * self.n + j]).collect()
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Standard scalar product <x, y> = sum_i x_i conj(y_i), linear in the first slot.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
