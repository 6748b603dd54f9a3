//! Dense complex-matrix kernels.

mod class;
mod decomp;
mod eigen;
mod matrix;
mod norms;
mod radius;

pub use class::{class_check, default_class_tolerance, normality_defect, OperatorClass};
pub use decomp::{polar_decompose, svd, PolarFactors, Svd};
pub use eigen::{
    hermitian_eig, hermitian_max_eigenvalue, hermitian_min_eigenvalue, EigenDecomposition,
    JACOBI_OFF_DIAGONAL_TOL,
};
pub use matrix::{c64, distance, inner, norm2, scale_vec, ComplexMatrix, UnitVector, C64};
pub use norms::{operator_norm, schatten_norm, singular_values};
pub use radius::{numerical_radius, numerical_radius_seeded, NumericalRadius, SWEEP_ANGLES};

pub(crate) use matrix::{ONE, ZERO};
