//! Norm and numerical-radius attainment correctors for operators on `ℂⁿ`.
//!
//! Given an operator `T` of a declared class that almost attains its norm (or
//! numerical radius) at a unit vector `x₀`, the correctors build a nearby
//! operator `S` of the same class that attains at a nearby point `x₁`, or at
//! `x₀` itself, together with a [`CorrectionCertificate`] comparing the
//! achieved distances with closed-form bounds.

pub mod certificate;
pub mod error;
pub mod io;
pub mod isometry;
pub mod linalg;
pub mod norm_correct;
pub mod nu_correct;
pub mod spectral;

pub use certificate::{BoundCheck, Correction, CorrectionCertificate, TheoremTag};
pub use error::{Error, Result};
pub use isometry::{conjugate_transport, pointify, transitive_isometry, Mode};
pub use linalg::{ComplexMatrix, OperatorClass, UnitVector, C64};
pub use norm_correct::{
    norm_correct, norm_correct_positive, norm_correct_schatten, NormCorrectionRequest,
};
pub use nu_correct::{
    nu_correct, nu_correct_any, nu_correct_normal, nu_correct_selfadjoint, nu_correct_unitary,
    nu_iterate, IterationTrace, NuCorrectionRequest, NuOptions,
};
pub use spectral::{SpectralMeasure, SpectralRegion};
