//! Hermitian eigensolvers.
//!
//! [`hermitian_eig`] is a cyclic complex Jacobi method returning the full
//! eigendecomposition. [`hermitian_max_eigenvalue`] reduces to real
//! tridiagonal form by Householder reflections and locates the top eigenvalue
//! by Sturm bisection; it is the inner kernel of the numerical-radius sweep,
//! where only eigenvalues are needed.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// Relative off-diagonal threshold at which Jacobi sweeps stop.
pub const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Eigenvalues in descending order with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `V · diag(f(λ)) · V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| v[(i, k)] * v[(j, k)].conj() * fl[k]).sum()
        })
    }
}

fn hermitian_tolerance(a: &ComplexMatrix) -> f64 {
    1e-8 * a.frobenius_norm().max(1.0)
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    let residual = a.hermitian_defect();
    if residual > hermitian_tolerance(a) {
        return Err(Error::NotHermitian { residual });
    }
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm();
    let threshold = JACOBI_OFF_DIAGONAL_TOL * scale;
    let budget = 30 * n * n;
    let mut rotations = 0usize;

    if scale > 0.0 {
        loop {
            if off_diagonal_norm(&m) <= threshold {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[(p, q)];
                    let g = apq.norm();
                    if g == 0.0 {
                        continue;
                    }
                    if rotations >= budget {
                        return Err(Error::NoConvergence {
                            iterations: rotations,
                        });
                    }
                    rotate(&mut m, &mut v, p, q, apq, g);
                    rotations += 1;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        let mut col = v.column(old_col);
        fix_phase(&mut col);
        for (i, z) in col.into_iter().enumerate() {
            eigenvectors[(i, new_col)] = z;
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Applies `m ← J* m J`, `v ← v J` with `J` annihilating `m[p][q]`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, apq: C64, g: f64) {
    let n = m.dim();
    let phase = apq / g;
    let a = m[(p, p)].re;
    let b = m[(q, q)].re;
    let theta = (b - a) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J = diag(1, conj(phase)) · [[c, s], [-s, c]]
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * jpp + mkq * jqp;
        m[(k, q)] = mkp * jpq + mkq * jqq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = jpp.conj() * mpk + jqp.conj() * mqk;
        m[(q, k)] = jpq.conj() * mpk + jqq.conj() * mqk;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Makes the first non-negligible component real and positive.
fn fix_phase(col: &mut [C64]) {
    if let Some(pivot) = col.iter().find(|z| z.norm() > 1e-8).copied() {
        let rot = pivot.conj() / pivot.norm();
        for z in col.iter_mut() {
            *z *= rot;
        }
    }
}

/// Largest eigenvalue of a Hermitian matrix (no Hermitian check; uses the Hermitian part).
pub fn hermitian_max_eigenvalue(a: &ComplexMatrix) -> f64 {
    let (d, e) = tridiagonalize(a);
    tridiagonal_max_eigenvalue(&d, &e)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn hermitian_min_eigenvalue(a: &ComplexMatrix) -> f64 {
    -hermitian_max_eigenvalue(&a.scale_real(-1.0))
}

/// Householder reduction of the Hermitian part of `a` to a real symmetric
/// tridiagonal matrix with the same eigenvalues: returns (diagonal, |subdiagonal|).
fn tridiagonalize(a: &ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = a.dim();
    let mut m: Vec<C64> = a.hermitian_part().as_slice().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];

    for k in 0..n.saturating_sub(1) {
        let lo = k + 1;
        let xnorm2: f64 = (lo..n).map(|i| m[i * n + k].norm_sqr()).sum();
        let xnorm = xnorm2.sqrt();
        d[k] = m[k * n + k].re;
        if xnorm == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = m[lo * n + k];
        let phase = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        for i in lo..n {
            v[i] = m[i * n + k];
        }
        v[lo] -= alpha;
        let vnorm2: f64 = (lo..n).map(|i| v[i].norm_sqr()).sum();
        e[k] = xnorm;
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        // p = τ A v on the trailing block
        for i in lo..n {
            let mut s = ZERO;
            for j in lo..n {
                s += m[i * n + j] * v[j];
            }
            p[i] = s * tau;
        }
        // K = τ (v* p) / 2, real for Hermitian A
        let vp: C64 = (lo..n).map(|i| v[i].conj() * p[i]).sum();
        let kk = 0.5 * tau * vp.re;
        for i in lo..n {
            p[i] -= v[i] * kk;
        }
        // A ← A − v p* − p v*
        for i in lo..n {
            for j in lo..n {
                m[i * n + j] -= v[i] * p[j].conj() + p[i] * v[j].conj();
            }
        }
    }
    d[n - 1] = m[(n - 1) * n + (n - 1)].re;
    (d, e)
}

/// Number of eigenvalues strictly less than `x`.
fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        let prev = if q == 0.0 {
            f64::MIN_POSITIVE.sqrt()
        } else {
            q
        };
        q = d[i] - x - e[i - 1] * e[i - 1] / prev;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn tridiagonal_max_eigenvalue(d: &[f64], e: &[f64]) -> f64 {
    let n = d.len();
    if n == 1 {
        return d[0];
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { e[i - 1] } else { 0.0 } + if i + 1 < n { e[i] } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    let width = (hi - lo).max(f64::MIN_POSITIVE);
    hi += 1e-15 * width;
    lo -= 1e-15 * width;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(d, e, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}
