use thiserror::Error;

/// Errors surfaced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} out of range (expected 1..=8)")]
    Dimension(usize),

    #[error("dimension {0} unsupported (expected at most 8)")]
    UnsupportedDimension(usize),

    #[error("entry grid does not match declared dimension {n}")]
    Shape { n: usize },

    #[error("matrix contains a non-finite entry at ({i}, {j})")]
    NonFinite { i: usize, j: usize },

    #[error("matrix is not hermitian (max asymmetry {asym:.3e} > tol {tol:.3e})")]
    NotHermitian { asym: f64, tol: f64 },

    #[error("eigensolver failed to converge within {0} sweeps")]
    ConvergenceFailed(usize),

    #[error("matrix is not nilpotent (|A^n| = {residual:.3e} > tol {tol:.3e})")]
    NotNilpotent { residual: f64, tol: f64 },

    #[error("numerical range is degenerate (a point or a segment)")]
    DegenerateRange,

    #[error("vectors are linearly dependent (normalized Gram determinant {0:.3e})")]
    DependentVectors(f64),

    #[error("parameter modulus |a{j}| = {modulus} exceeds 1")]
    BadModulus { j: usize, modulus: f64 },

    #[error("some r_j vanishes; the tau expressions require r1*r2*r3 != 0")]
    ZeroRadius,

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("a1 must be nonzero for the real-family criterion")]
    ZeroA1,

    #[error("failed to parse matrix JSON: {0}")]
    ParseMatrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;
