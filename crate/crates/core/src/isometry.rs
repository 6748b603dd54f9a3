//! Unitaries moving one unit vector onto another with the least possible
//! displacement, and the conjugation transport built on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    inner, norm2, numerical_radius, operator_norm, ComplexMatrix, UnitVector, C64, ONE,
};

/// Gap allowed between `‖R − Id‖` and `‖x − y‖` before construction fails.
pub const ISOMETRY_VALIDATION_TOL: f64 = 1e-8;
const PARALLEL_TOL: f64 = 1e-12;

/// Which attainment notion a transfer has to preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Norm,
    Nu,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "norm" => Ok(Mode::Norm),
            "nu" | "numerical-radius" => Ok(Mode::Nu),
            _ => Err(format!("unknown mode {s:?} (expected norm or nu)")),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Norm => "norm",
            Mode::Nu => "nu",
        })
    }
}

fn check_dims(x: &UnitVector, y: &UnitVector) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    Ok(())
}

/// Unitary `R` with `Rx = y`, `‖R − Id‖ = ‖x − y‖`, identity on `span{x, y}^⊥`.
///
/// Writing `y = αx + βw` with `w ⟂ x`, `R` acts on `span{x, w}` as
/// `[[α, −β̄], [β, ᾱ]]`. This matrix lies in `SU(2)`, so its eigenvalues are
/// `e^{±iγ}` with `cos γ = Re α` and `‖R − Id‖ = (2 − 2 Re α)^{1/2} = ‖x − y‖`.
/// When `y` is a multiple of `x` the rank-one phase map `Id + (α − 1)xx*` is
/// used instead; it covers `y = −x` too.
pub fn transitive_isometry(x: &UnitVector, y: &UnitVector) -> Result<ComplexMatrix> {
    check_dims(x, y)?;
    let n = x.dim();
    let (xs, ys) = (x.as_slice(), y.as_slice());
    let alpha = inner(ys, xs);
    let mut r: Vec<C64> = ys.iter().zip(xs).map(|(yi, xi)| yi - alpha * xi).collect();
    let c = inner(&r, xs);
    for (ri, xi) in r.iter_mut().zip(xs) {
        *ri -= c * xi;
    }
    let alpha = alpha + c;
    let beta = norm2(&r);

    let mut rot = ComplexMatrix::identity(n);
    if beta <= PARALLEL_TOL {
        let phase = if alpha.norm() == 0.0 {
            ONE
        } else {
            alpha / alpha.norm()
        };
        let p = ComplexMatrix::outer(xs, xs).scale(phase - ONE);
        rot = &rot + &p;
    } else {
        let w: Vec<C64> = r.iter().map(|z| z / beta).collect();
        let scale = (alpha.norm_sqr() + beta * beta).sqrt();
        let (a, b) = (alpha / scale, beta / scale);
        let xx = ComplexMatrix::outer(xs, xs).scale(a - ONE);
        let wx = ComplexMatrix::outer(&w, xs).scale_real(b);
        let xw = ComplexMatrix::outer(xs, &w).scale_real(-b);
        let ww = ComplexMatrix::outer(&w, &w).scale(a.conj() - ONE);
        rot = &(&(&(&rot + &xx) + &wx) + &xw) + &ww;
    }

    let gap = (operator_norm(&(&rot - &ComplexMatrix::identity(n))) - x.distance(y)).abs();
    if gap > ISOMETRY_VALIDATION_TOL {
        return Err(Error::Internal(format!(
            "transitive isometry misses ‖R − Id‖ = ‖x − y‖ by {gap:.3e}"
        )));
    }
    Ok(rot)
}

/// `R*·T·R` with `R = transitive_isometry(x, y)`; satisfies `⟨R*TR x, x⟩ = ⟨Ty, y⟩`.
pub fn conjugate_transport(
    t: &ComplexMatrix,
    x: &UnitVector,
    y: &UnitVector,
) -> Result<ComplexMatrix> {
    if t.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: x.dim(),
        });
    }
    let r = transitive_isometry(x, y)?;
    Ok(r.adjoint().matmul(t).matmul(&r))
}

/// Tolerance on the attainment preconditions of [`pointify`].
pub const POINTIFY_TOL: f64 = 1e-8;

/// Moves attainment of `s_tilde` from `x1` to `x0` by conjugation.
///
/// The displacement is at most `2‖x₀ − x₁‖·‖S̃‖`, that is `2‖x₀ − x₁‖` in norm
/// mode and `4‖x₀ − x₁‖` in ν mode (where `‖S̃‖ ≤ 2ν(S̃) = 2`).
pub fn pointify(
    s_tilde: &ComplexMatrix,
    x1: &UnitVector,
    x0: &UnitVector,
    mode: Mode,
) -> Result<ComplexMatrix> {
    check_dims(x1, x0)?;
    let residual = match mode {
        Mode::Norm => {
            let norm = operator_norm(s_tilde);
            (norm - 1.0)
                .abs()
                .max((norm2(&s_tilde.mul_vec(x1.as_slice())) - 1.0).abs())
        }
        Mode::Nu => {
            let nu = numerical_radius(s_tilde, 1e-12)?.value;
            (nu - 1.0)
                .abs()
                .max((s_tilde.quadratic_form(x1.as_slice()).norm() - 1.0).abs())
        }
    };
    if residual > POINTIFY_TOL {
        return Err(Error::PreconditionViolated {
            what: format!("operator must attain its {mode} value 1 at the source point"),
            residual,
        });
    }
    conjugate_transport(s_tilde, x0, x1)
}

/// Bound on `‖pointify(S̃, x₁, x₀) − S̃‖`.
pub fn pointify_bound(x1: &UnitVector, x0: &UnitVector, mode: Mode) -> f64 {
    let d = x1.distance(x0);
    match mode {
        Mode::Norm => 2.0 * d,
        Mode::Nu => 4.0 * d,
    }
}
