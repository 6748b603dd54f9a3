//! Finite-dimensional resolution of the identity for normal matrices.
//!
//! A normal `T` is stored as a list of distinct eigenvalues `λ_j` with the
//! orthogonal projections `P_j` onto their eigenspaces, so that
//! `Σ P_j = Id` and `T = Σ λ_j P_j`. Functions of `T`, spectral projections
//! `E(ω)` and truncations `∫_ω f dE` are then finite sums.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{
    default_class_tolerance, hermitian_eig, normality_defect, operator_norm, ComplexMatrix,
    PolarFactors, C64, ONE, ZERO,
};

#[derive(Clone, Debug)]
pub struct SpectralPoint {
    pub eigenvalue: C64,
    pub projection: ComplexMatrix,
}

#[derive(Clone, Debug)]
pub struct SpectralMeasure {
    dim: usize,
    points: Vec<SpectralPoint>,
    grouping_tol: f64,
}

/// A Borel set of the plane, given by a membership predicate.
#[derive(Clone)]
pub struct SpectralRegion {
    label: String,
    contains: Arc<dyn Fn(C64) -> bool + Send + Sync>,
}

impl SpectralRegion {
    pub fn new(
        label: impl Into<String>,
        contains: impl Fn(C64) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            contains: Arc::new(contains),
        }
    }

    pub fn everything() -> Self {
        Self::new("ℂ", |_| true)
    }

    pub fn nothing() -> Self {
        Self::new("∅", |_| false)
    }

    /// `{z : |z| > r}`.
    pub fn modulus_above(r: f64) -> Self {
        Self::new(format!("|z| > {r}"), move |z| z.norm() > r)
    }

    /// `{z : |z| ≤ r}`.
    pub fn modulus_at_most(r: f64) -> Self {
        Self::new(format!("|z| ≤ {r}"), move |z| z.norm() <= r)
    }

    /// `{z : Re z > t}`; for measures with real spectrum this is `{z > t}`.
    pub fn real_above(t: f64) -> Self {
        Self::new(format!("z > {t}"), move |z| z.re > t)
    }

    pub fn contains(&self, z: C64) -> bool {
        (self.contains)(z)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn complement(&self) -> Self {
        let inner = Arc::clone(&self.contains);
        Self {
            label: format!("ℂ ∖ ({})", self.label),
            contains: Arc::new(move |z| !inner(z)),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let (a, b) = (Arc::clone(&self.contains), Arc::clone(&other.contains));
        Self {
            label: format!("({}) ∪ ({})", self.label, other.label),
            contains: Arc::new(move |z| a(z) || b(z)),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (Arc::clone(&self.contains), Arc::clone(&other.contains));
        Self {
            label: format!("({}) ∩ ({})", self.label, other.label),
            contains: Arc::new(move |z| a(z) && b(z)),
        }
    }
}

impl fmt::Debug for SpectralRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("SpectralRegion").field(&self.label).finish()
    }
}

impl SpectralMeasure {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[SpectralPoint] {
        &self.points
    }

    pub fn grouping_tol(&self) -> f64 {
        self.grouping_tol
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        self.points.iter().map(|p| p.eigenvalue).collect()
    }

    /// Image measure under `f`: eigenvalues are mapped and coinciding images merged.
    pub fn push_forward(&self, f: impl Fn(C64) -> C64) -> Self {
        let mut points: Vec<SpectralPoint> = Vec::new();
        for p in &self.points {
            let z = f(p.eigenvalue);
            match points
                .iter_mut()
                .find(|q| (q.eigenvalue - z).norm() <= self.grouping_tol)
            {
                Some(q) => q.projection = &q.projection + &p.projection,
                None => points.push(SpectralPoint {
                    eigenvalue: z,
                    projection: p.projection.clone(),
                }),
            }
        }
        Self {
            dim: self.dim,
            points,
            grouping_tol: self.grouping_tol,
        }
    }

    /// `E(ω)x`.
    pub fn project(&self, region: &SpectralRegion, x: &[C64]) -> Vec<C64> {
        spectral_projection(self, region).mul_vec(x)
    }
}

/// Spectral measure of a normal matrix.
///
/// The Hermitian part is diagonalized first; inside each of its eigenvalue
/// clusters the compression of the skew part is diagonalized, which splits
/// the cluster into joint eigenvectors. Eigenvalues `v*Tv` are then grouped
/// within `1e−8·max(1, ‖T‖)`.
pub fn normal_spectral_measure(t: &ComplexMatrix) -> Result<SpectralMeasure> {
    let defect = normality_defect(t);
    if defect > default_class_tolerance(t) {
        return Err(Error::NotNormal { residual: defect });
    }
    let n = t.dim();
    let scale = operator_norm(t).max(1.0);
    let cluster_tol = 1e-8 * scale;
    let grouping_tol = 1e-8 * scale;

    let re = hermitian_eig(&t.hermitian_part())?;
    let im = t.skew_hermitian_part();

    let mut vectors: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && re.eigenvalues[end - 1] - re.eigenvalues[end] <= cluster_tol {
            end += 1;
        }
        let basis: Vec<Vec<C64>> = (start..end).map(|k| re.eigenvector(k)).collect();
        if basis.len() == 1 {
            vectors.extend(basis);
        } else {
            let k = basis.len();
            let images: Vec<Vec<C64>> = basis.iter().map(|v| im.mul_vec(v)).collect();
            let compressed =
                ComplexMatrix::from_fn(k, |i, j| crate::linalg::inner(&images[j], &basis[i]))
                    .hermitian_part();
            let inner_eig = hermitian_eig(&compressed)?;
            for c in 0..k {
                let coeffs = inner_eig.eigenvector(c);
                let mut v = vec![ZERO; n];
                for (b, &a) in basis.iter().zip(&coeffs) {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += a * bi;
                    }
                }
                vectors.push(v);
            }
        }
        start = end;
    }

    let mut groups: Vec<(Vec<C64>, Vec<Vec<C64>>)> = Vec::new();
    for v in vectors {
        let lambda = t.quadratic_form(&v);
        match groups.iter_mut().find(|(ls, _)| {
            let mean = ls.iter().sum::<C64>() / ls.len() as f64;
            (mean - lambda).norm() <= grouping_tol
        }) {
            Some((ls, vs)) => {
                ls.push(lambda);
                vs.push(v);
            }
            None => groups.push((vec![lambda], vec![v])),
        }
    }

    let points = groups
        .into_iter()
        .map(|(ls, vs)| {
            let mut projection = ComplexMatrix::zeros(n);
            for v in &vs {
                projection = &projection + &ComplexMatrix::outer(v, v);
            }
            SpectralPoint {
                eigenvalue: ls.iter().sum::<C64>() / ls.len() as f64,
                projection: projection.hermitian_part(),
            }
        })
        .collect();
    Ok(SpectralMeasure {
        dim: n,
        points,
        grouping_tol,
    })
}

/// `f(T) = Σ f(λ_j) P_j`.
pub fn apply_borel_function(e: &SpectralMeasure, f: impl Fn(C64) -> C64) -> ComplexMatrix {
    region_truncation(e, &SpectralRegion::everything(), f)
}

/// `E(ω) = Σ_{λ_j ∈ ω} P_j`.
pub fn spectral_projection(e: &SpectralMeasure, region: &SpectralRegion) -> ComplexMatrix {
    region_truncation(e, region, |_| ONE)
}

/// `∫_ω f dE = Σ_{λ_j ∈ ω} f(λ_j) P_j`.
pub fn region_truncation(
    e: &SpectralMeasure,
    region: &SpectralRegion,
    f: impl Fn(C64) -> C64,
) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(e.dim);
    for p in e.points.iter().filter(|p| region.contains(p.eigenvalue)) {
        out = &out + &p.projection.scale(f(p.eigenvalue));
    }
    out
}

/// Polar factors of a normal matrix from its spectral measure, so that `U`
/// commutes with `|T|`. `U` acts as the identity on `ker T`.
pub fn normal_polar(t: &ComplexMatrix) -> Result<PolarFactors> {
    let e = normal_spectral_measure(t)?;
    Ok(polar_from_measure(&e))
}

pub(crate) fn unit_phase(z: C64) -> C64 {
    if z.norm() == 0.0 {
        ONE
    } else {
        z / z.norm()
    }
}

pub(crate) fn polar_from_measure(e: &SpectralMeasure) -> PolarFactors {
    PolarFactors {
        isometry_part: apply_borel_function(e, unit_phase),
        modulus: apply_borel_function(e, |z| C64::new(z.norm(), 0.0)),
    }
}
