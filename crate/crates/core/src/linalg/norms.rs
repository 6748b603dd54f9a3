use super::decomp::svd;
use super::eigen::hermitian_max_eigenvalue;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Largest singular value.
pub fn operator_norm(t: &ComplexMatrix) -> f64 {
    hermitian_max_eigenvalue(&t.gram()).max(0.0).sqrt()
}

/// Singular values in descending order.
pub fn singular_values(t: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(svd(t)?.singular_values)
}

/// Schatten `p`-norm; `p = f64::INFINITY` gives the operator norm.
pub fn schatten_norm(t: &ComplexMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidP(p));
    }
    if p.is_infinite() {
        return Ok(operator_norm(t));
    }
    let s = singular_values(t)?;
    Ok(lp_norm(&s, p))
}

/// `(Σ |x_j|^p)^{1/p}`, scaled by the largest entry to avoid overflow.
fn lp_norm(values: &[f64], p: f64) -> f64 {
    let top = values.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
    if top == 0.0 {
        return 0.0;
    }
    if p.is_infinite() {
        return top;
    }
    top * values
        .iter()
        .map(|x| (x.abs() / top).powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}
