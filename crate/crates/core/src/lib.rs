//! Numerical ranges (fields of values) of small complex matrices.
//!
//! The toolkit computes support functions and boundary points of F(A),
//! detects exceptional supporting lines, extracts flat portions with their
//! endpoints, evaluates the Kippenhahn polynomial det(uH + vK + wI) and its
//! singular points, and implements closed-form flat-portion criteria for
//! structured nilpotent families (4-by-4 triangular families and the 5-by-5
//! direct-sum family), each cross-validated against the eigenvalue-based
//! oracle.
//!
//! Everything is pure and reentrant; matrices are immutable after
//! construction.

pub mod certify;
pub mod cmat;
pub mod eig;
pub mod error;
pub mod families;
pub mod io;
pub mod kippenhahn;
pub mod random;
pub mod reducible5;
pub mod support;
pub mod triangularize;

pub use cmat::{inner, vec_norm, C64, CMat};
pub use eig::{hermitian_eig, hermitian_eigenvalues, numerical_kernel, HermEig};
pub use error::{Error, Result};
pub use families::{
    construct_exceptional, exceptional_criterion, flat_on_line_verdict, gram_residual,
    has_flat_on_line, parallel_canonical, real_family_eigenvalues, real_family_matrix,
    real_family_vertical_flat, real_tau2, tau1, tau2, ExceptionalParams, FlatVerdict,
    GramResidual, UpperNilpotent4,
};
pub use io::{matrix_from_json, matrix_to_json};
pub use kippenhahn::{
    coeffs_nilpotent4, default_search_radius, eval_general, newton_coefficients,
    singular_points, singularity_residual, HomogeneousQuartic, KippenhahnQuartic, SingularPoint,
};
pub use reducible5::{
    assemble_5x5, cardioid_point, flat_count_5x5, support_distance_3x3, Reducible5Params,
};
pub use support::{
    boundary_point, compression, compression_is_scalar, exceptional_angles,
    exceptional_angles_with, flat_portions, flat_portions_with, is_degenerate, rotated_im,
    rotated_re, sample_boundary, support_line, support_value, ExceptionalSubspace, FlatPortion,
    RangeConfig, SupportLine,
};
pub use triangularize::{is_nilpotent, nilpotent_triangularize, normalize_superdiagonal};
