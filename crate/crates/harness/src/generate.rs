//! Random instances that satisfy the almost-attainment preconditions.

use bpb_core::linalg::{
    inner, norm2, numerical_radius, svd, ComplexMatrix, OperatorClass, UnitVector, C64,
};
use bpb_core::{Mode, NormCorrectionRequest, NuCorrectionRequest};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{HarnessError, Result};

/// `x₀` is accepted once its deficit is at most this fraction of the allowed one.
pub const MARGIN: f64 = 0.9;

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub t: ComplexMatrix,
    pub x0: UnitVector,
    /// Norm or numerical radius of the raw draw, divided out of `t`.
    pub scale: f64,
}

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent substream seed for one trial of one cell.
pub fn trial_seed(seed: u64, cell: u64, trial: u64) -> u64 {
    mix(mix(mix(seed) ^ cell) ^ trial)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| gaussian(rng))
}

pub fn random_unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> UnitVector {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        if norm2(&v) > 1e-8 {
            return UnitVector::normalize(v).expect("nonzero vector");
        }
    }
}

/// Unitary factor of a complex Gaussian matrix by Gram–Schmidt.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let p = inner(&v, c);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= p * ci;
                }
            }
        }
        let n = norm2(&v);
        if n > 1e-6 {
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    ComplexMatrix::from_columns(&cols)
}

/// Unnormalized member of `class`.
pub fn random_operator(rng: &mut ChaCha8Rng, class: OperatorClass, dim: usize) -> ComplexMatrix {
    match class {
        OperatorClass::General | OperatorClass::SchattenP(_) => gaussian_matrix(rng, dim),
        OperatorClass::SelfAdjoint => gaussian_matrix(rng, dim).hermitian_part(),
        OperatorClass::AntiSymmetric => gaussian_matrix(rng, dim)
            .hermitian_part()
            .scale(C64::new(0.0, 1.0)),
        OperatorClass::Positive => gaussian_matrix(rng, dim).gram(),
        OperatorClass::Unitary => random_unitary(rng, dim),
        OperatorClass::Normal => {
            let u = random_unitary(rng, dim);
            let d: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
            u.matmul(&ComplexMatrix::from_diagonal(&d))
                .matmul(&u.adjoint())
        }
    }
}

/// Almost-attainment threshold for `(mode, class, ε)`, as enforced by the correctors.
pub fn threshold(mode: Mode, class: OperatorClass, epsilon: f64) -> f64 {
    let t = ComplexMatrix::identity(1);
    let x = UnitVector::basis(1, 0);
    match mode {
        Mode::Norm => NormCorrectionRequest::new(t, x, epsilon, class).threshold(),
        Mode::Nu => NuCorrectionRequest::new(t, x, epsilon, class).threshold(),
    }
}

fn attained(mode: Mode, t: &ComplexMatrix, x: &[C64]) -> f64 {
    match mode {
        Mode::Norm => norm2(&t.mul_vec(x)),
        Mode::Nu => t.quadratic_form(x).norm(),
    }
}

/// Normalized member of `class` with a starting point `x₀ = normalize(x* + δv)`
/// near an exact attainment point `x*`, where `δ` is halved until the deficit
/// `1 − value(x₀)` is at most 90% of the allowed `1 − threshold`.
pub fn gen_instance(
    class: OperatorClass,
    dim: usize,
    epsilon: f64,
    mode: Mode,
    seed: u64,
) -> Result<Instance> {
    if dim < 2 {
        return Err(HarnessError::Config(format!(
            "dimension must be at least 2, got {dim}"
        )));
    }
    let mut rng = rng(seed);
    let raw = random_operator(&mut rng, class, dim);
    let (scale, witness) = match mode {
        Mode::Norm => {
            let s = svd(&raw)?;
            (s.singular_values[0], s.right.column(0))
        }
        Mode::Nu => {
            let r = numerical_radius(&raw, 1e-13)?;
            (r.value, r.witness.into_inner())
        }
    };
    let t = raw.scale_real(1.0 / scale);
    let allowed = 1.0 - threshold(mode, class, epsilon);
    let v = random_unit_vector(&mut rng, dim);
    let mut delta = (2.0 * allowed).sqrt();
    for _ in 0..200 {
        let x: Vec<C64> = witness
            .iter()
            .zip(v.as_slice())
            .map(|(w, vi)| w + vi * delta)
            .collect();
        let x0 = UnitVector::normalize(x)?;
        if 1.0 - attained(mode, &t, x0.as_slice()) <= MARGIN * allowed {
            return Ok(Instance { t, x0, scale });
        }
        delta *= 0.5;
    }
    Err(HarnessError::Config(
        "could not place a starting point within the margin".into(),
    ))
}
