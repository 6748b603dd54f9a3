//! Numerical radius `ν(T) = sup{|⟨Tx, x⟩| : ‖x‖ = 1}`.
//!
//! With `T = A + iB` (`A`, `B` Hermitian), the support function of the field
//! of values in direction `θ` is `λ_max(cos θ·A − sin θ·B)`, the top eigenvalue
//! of the Hermitian part of `e^{iθ}T`. `ν(T)` is its maximum over `θ`. The
//! maximum is located by an equispaced sweep followed by golden-section
//! refinement of the best local maxima; the witness is a top eigenvector at the
//! optimal angle.

use std::f64::consts::PI;

use super::eigen::{hermitian_eig, hermitian_max_eigenvalue};
use super::matrix::{inner, norm2, ComplexMatrix, UnitVector, C64, ZERO};
use crate::error::{Error, Result};

pub const SWEEP_ANGLES: usize = 720;
const REFINED_CANDIDATES: usize = 3;
const GOLDEN: f64 = 0.618_033_988_749_894_8;

#[derive(Clone, Debug)]
pub struct NumericalRadius {
    pub value: f64,
    pub witness: UnitVector,
    /// Angle `θ` at which `Re(e^{iθ}⟨T w, w⟩)` is maximal.
    pub angle: f64,
}

struct SupportFunction {
    re: ComplexMatrix,
    im: ComplexMatrix,
    lipschitz: f64,
}

impl SupportFunction {
    fn new(t: &ComplexMatrix) -> Self {
        let re = t.hermitian_part();
        let im = t.skew_hermitian_part();
        let lipschitz = re.frobenius_norm() + im.frobenius_norm();
        Self { re, im, lipschitz }
    }

    fn hermitian_at(&self, theta: f64) -> ComplexMatrix {
        let (s, c) = theta.sin_cos();
        &self.re.scale_real(c) - &self.im.scale_real(s)
    }

    fn eval(&self, theta: f64) -> f64 {
        hermitian_max_eigenvalue(&self.hermitian_at(theta))
    }

    fn golden_max(&self, mut lo: f64, mut hi: f64, width: f64) -> (f64, f64) {
        let mut x1 = hi - GOLDEN * (hi - lo);
        let mut x2 = lo + GOLDEN * (hi - lo);
        let mut f1 = self.eval(x1);
        let mut f2 = self.eval(x2);
        for _ in 0..200 {
            if hi - lo <= width {
                break;
            }
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + GOLDEN * (hi - lo);
                f2 = self.eval(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - GOLDEN * (hi - lo);
                f1 = self.eval(x1);
            }
        }
        if f1 >= f2 {
            (x1, f1)
        } else {
            (x2, f2)
        }
    }

    /// Refines a grid angle within one grid step on each side.
    fn refine(&self, theta: f64, value: f64, step: f64, width: f64) -> (f64, f64) {
        let (t, v) = self.golden_max(theta - step, theta + step, width);
        if v >= value {
            (t, v)
        } else {
            (theta, value)
        }
    }

    fn angular_width(&self, tol: f64) -> f64 {
        (tol / (1.0 + self.lipschitz)).clamp(1e-13, 1e-4)
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::PreconditionViolated {
            what: "numerical-radius tolerance must be positive".into(),
            residual: tol,
        });
    }
    Ok(())
}

/// Global maximum of the support function: sweep plus refinement.
fn global_search(f: &SupportFunction, tol: f64) -> (f64, f64) {
    let step = 2.0 * PI / SWEEP_ANGLES as f64;
    let grid: Vec<f64> = (0..SWEEP_ANGLES).map(|k| f.eval(k as f64 * step)).collect();
    let best = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let slack = f.lipschitz * step;
    let mut candidates: Vec<usize> = (0..SWEEP_ANGLES)
        .filter(|&k| {
            let prev = grid[(k + SWEEP_ANGLES - 1) % SWEEP_ANGLES];
            let next = grid[(k + 1) % SWEEP_ANGLES];
            grid[k] >= prev && grid[k] >= next && grid[k] >= best - slack
        })
        .collect();
    candidates.sort_by(|&i, &j| grid[j].total_cmp(&grid[i]));
    candidates.truncate(REFINED_CANDIDATES);

    let width = f.angular_width(tol);
    let mut result = (0.0, f64::NEG_INFINITY);
    for k in candidates {
        let (t, v) = f.refine(k as f64 * step, grid[k], step, width);
        if v > result.1 {
            result = (t, v);
        }
    }
    result
}

/// Hill-climbs the support function from `theta`, then refines.
fn local_search(f: &SupportFunction, theta: f64, tol: f64) -> (f64, f64) {
    let step = 2.0 * PI / SWEEP_ANGLES as f64;
    let mut current = (theta, f.eval(theta));
    let up = f.eval(theta + step);
    let down = f.eval(theta - step);
    let direction = if up >= down { 1.0 } else { -1.0 };
    for _ in 0..SWEEP_ANGLES {
        let next_theta = current.0 + direction * step;
        let next = f.eval(next_theta);
        if next > current.1 {
            current = (next_theta, next);
        } else {
            break;
        }
    }
    f.refine(current.0, current.1, step, f.angular_width(tol))
}

/// Unit vector in the top eigenspace of `h`, as close as possible to `prefer`.
fn top_eigenvector(h: &ComplexMatrix, prefer: Option<&[C64]>) -> Result<UnitVector> {
    let eig = hermitian_eig(h)?;
    let top = eig.eigenvalues[0];
    let cluster_tol = 1e-9 * top.abs().max(1.0);
    let cluster: Vec<Vec<C64>> = (0..eig.dim())
        .take_while(|&k| eig.eigenvalues[k] >= top - cluster_tol)
        .map(|k| eig.eigenvector(k))
        .collect();
    let first = UnitVector::normalize(cluster[0].clone())?;
    let Some(seed) = prefer else {
        return Ok(first);
    };
    let mut proj = vec![ZERO; h.dim()];
    for v in &cluster {
        let c = inner(seed, v);
        for (p, vi) in proj.iter_mut().zip(v) {
            *p += c * vi;
        }
    }
    if norm2(&proj) > 1e-6 {
        UnitVector::normalize(proj)
    } else {
        Ok(first.aligned_to(seed))
    }
}

fn finish(
    t: &ComplexMatrix,
    f: &SupportFunction,
    theta: f64,
    value: f64,
    prefer: Option<&[C64]>,
) -> Result<NumericalRadius> {
    let witness = top_eigenvector(&f.hermitian_at(theta), prefer)?;
    let attained = t.quadratic_form(witness.as_slice()).norm();
    Ok(NumericalRadius {
        value: value.max(attained),
        witness,
        angle: theta.rem_euclid(2.0 * PI),
    })
}

pub fn numerical_radius(t: &ComplexMatrix, tol: f64) -> Result<NumericalRadius> {
    check_tol(tol)?;
    let f = SupportFunction::new(t);
    let (theta, value) = global_search(&f, tol);
    finish(t, &f, theta, value, None)
}

/// Like [`numerical_radius`], but prefers a witness reached by local ascent
/// from `seed` whenever that local maximum is global within `tol`.
pub fn numerical_radius_seeded(
    t: &ComplexMatrix,
    tol: f64,
    seed: &UnitVector,
) -> Result<NumericalRadius> {
    check_tol(tol)?;
    if seed.dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: seed.dim(),
        });
    }
    let f = SupportFunction::new(t);
    let (g_theta, g_value) = global_search(&f, tol);
    let w = t.quadratic_form(seed.as_slice());
    let start = if w.norm() > 0.0 { -w.arg() } else { 0.0 };
    let (l_theta, l_value) = local_search(&f, start, tol);
    if l_value >= g_value - tol {
        finish(t, &f, l_theta, l_value.max(g_value), Some(seed.as_slice()))
    } else {
        finish(t, &f, g_theta, g_value, Some(seed.as_slice()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::c64;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn identity() {
        let r = numerical_radius(&ComplexMatrix::identity(2), 1e-10).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let id = ComplexMatrix::identity(2);
        assert!((id.quadratic_form(r.witness.as_slice()).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nilpotent_jordan_block() {
        // ν of [[0,2],[0,0]] is max 2|x₁||x₂| = 1 at (1,1)/√2 up to phase
        let t = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        let r = numerical_radius(&t, 1e-10).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        let w = r.witness.as_slice();
        assert!((w[0].norm() - FRAC_1_SQRT_2).abs() < 1e-6);
        assert!((w[1].norm() - FRAC_1_SQRT_2).abs() < 1e-6);
        assert!(t.quadratic_form(w).norm() >= r.value - 1e-10);
    }

    #[test]
    fn normal_diagonal() {
        let t = ComplexMatrix::from_diagonal(&[c64(0.0, 1.0), c64(0.0, -1.0)]);
        let r = numerical_radius(&t, 1e-10).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        let t = ComplexMatrix::identity(2);
        assert!(numerical_radius(&t, 0.0).is_err());
        assert!(numerical_radius(&t, -1.0).is_err());
    }

    #[test]
    fn seeded_prefers_nearby_witness_in_flat_case() {
        // every unit vector attains ν(Id) = 1
        let seed = UnitVector::normalize(vec![c64(0.6, 0.0), c64(0.0, 0.8)]).unwrap();
        let r = numerical_radius_seeded(&ComplexMatrix::identity(2), 1e-10, &seed).unwrap();
        assert!(r.witness.distance(&seed) < 1e-12);
    }
}
