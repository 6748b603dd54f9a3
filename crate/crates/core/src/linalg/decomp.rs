use super::eigen::hermitian_eig;
use super::matrix::{inner, norm2, ComplexMatrix, C64, ZERO};
use crate::error::Result;

/// Singular values below this fraction of the largest are treated as kernel.
const RANK_CUTOFF: f64 = 1e-12;

/// `T = left · diag(singular_values) · right*` with both factors unitary.
#[derive(Clone, Debug)]
pub struct Svd {
    pub singular_values: Vec<f64>,
    pub left: ComplexMatrix,
    pub right: ComplexMatrix,
}

/// `T = U·|T|` with `U` unitary (a unitary extension of the partial isometry)
/// and `|T| = (T*T)^{1/2}` positive semidefinite.
#[derive(Clone, Debug)]
pub struct PolarFactors {
    pub isometry_part: ComplexMatrix,
    pub modulus: ComplexMatrix,
}

impl PolarFactors {
    pub fn recompose(&self) -> ComplexMatrix {
        self.isometry_part.matmul(&self.modulus)
    }
}

/// SVD through the Hermitian eigendecomposition of `T*T`.
///
/// Right singular vectors come from `T*T`; singular values are recomputed as
/// `‖T v_j‖`. Left vectors for nonzero singular values are `T v_j / s_j`; the
/// remaining columns are completed by Gram–Schmidt, trying `v_j` first and then
/// the standard basis, so the left factor is identity on a kernel that is
/// orthogonal to the range.
pub fn svd(t: &ComplexMatrix) -> Result<Svd> {
    let n = t.dim();
    let eig = hermitian_eig(&t.gram())?;
    let right_cols: Vec<Vec<C64>> = (0..n).map(|j| eig.eigenvector(j)).collect();
    let images: Vec<Vec<C64>> = right_cols.iter().map(|v| t.mul_vec(v)).collect();
    let mut sv: Vec<f64> = images.iter().map(|w| norm2(w)).collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sv[j].total_cmp(&sv[i]));
    let right_cols: Vec<Vec<C64>> = order.iter().map(|&i| right_cols[i].clone()).collect();
    let images: Vec<Vec<C64>> = order.iter().map(|&i| images[i].clone()).collect();
    sv = order.iter().map(|&i| sv[i]).collect();

    let smax = sv[0];
    let cutoff = RANK_CUTOFF * smax;
    let mut left_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        if smax > 0.0 && sv[j] > cutoff {
            let u: Vec<C64> = images[j].iter().map(|z| z / sv[j]).collect();
            let u = orthonormalize_against(&u, &left_cols).unwrap_or(u);
            left_cols.push(u);
        } else {
            sv[j] = if smax > 0.0 { sv[j] } else { 0.0 };
            let mut candidates = vec![right_cols[j].clone()];
            candidates.extend((0..n).map(|k| {
                let mut e = vec![ZERO; n];
                e[k] = C64::new(1.0, 0.0);
                e
            }));
            let u = candidates
                .iter()
                .find_map(|c| orthonormalize_against(c, &left_cols))
                .expect("standard basis spans the complement");
            left_cols.push(u);
        }
    }
    Ok(Svd {
        singular_values: sv,
        left: ComplexMatrix::from_columns(&left_cols),
        right: ComplexMatrix::from_columns(&right_cols),
    })
}

/// Two passes of modified Gram–Schmidt; `None` if the candidate is (nearly) in the span.
fn orthonormalize_against(candidate: &[C64], basis: &[Vec<C64>]) -> Option<Vec<C64>> {
    let start = norm2(candidate);
    if start == 0.0 {
        return None;
    }
    let mut w = candidate.to_vec();
    for _ in 0..2 {
        for b in basis {
            let c = inner(&w, b);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= c * bi;
            }
        }
    }
    let r = norm2(&w);
    if r <= 0.1 * start {
        return None;
    }
    Some(w.into_iter().map(|z| z / r).collect())
}

pub fn polar_decompose(t: &ComplexMatrix) -> Result<PolarFactors> {
    let s = svd(t)?;
    let n = t.dim();
    let v = &s.right;
    let modulus = ComplexMatrix::from_fn(n, |i, j| {
        (0..n)
            .map(|k| v[(i, k)] * v[(j, k)].conj() * s.singular_values[k])
            .sum()
    });
    let isometry_part = s.left.matmul(&v.adjoint());
    Ok(PolarFactors {
        isometry_part,
        modulus: modulus.hermitian_part(),
    })
}
