use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense square matrix of complex scalars, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows, validating shape and finiteness.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidShape(
                "matrix must have at least one row".into(),
            ));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidShape(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    /// Real-entry convenience constructor; panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(rows).expect("well-formed real rows")
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    /// Rank-one operator `u v*`, i.e. `x ↦ ⟨x, v⟩ u`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        assert_eq!(u.len(), v.len());
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<C64>]) -> Self {
        let n = cols.len();
        Self::from_fn(n, |i, j| cols[j][i])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨Ax, x⟩ = x* A x`.
    pub fn quadratic_form(&self, x: &[C64]) -> C64 {
        inner(&self.mul_vec(x), x)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let other_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `(A + A*)/2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// `(A − A*)/(2i)`, so that `A = hermitian_part + i·skew_hermitian_part`.
    pub fn skew_hermitian_part(&self) -> Self {
        let n = self.dim;
        let half_over_i = C64::new(0.0, -0.5);
        Self::from_fn(n, |i, j| (self[(i, j)] - self[(j, i)].conj()) * half_over_i)
    }

    /// `‖A − A*‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        s.sqrt()
    }

    /// `A*A`, exactly Hermitian by construction.
    pub fn gram(&self) -> Self {
        let g = self.adjoint().matmul(self);
        g.hermitian_part()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

/// `⟨x, y⟩ = Σ x_i ȳ_i`, linear in the first argument.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    assert_eq!(x.len(), y.len(), "vector length mismatch");
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm2(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn distance(x: &[C64], y: &[C64]) -> f64 {
    assert_eq!(x.len(), y.len(), "vector length mismatch");
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn scale_vec(x: &[C64], s: C64) -> Vec<C64> {
    x.iter().map(|z| z * s).collect()
}

/// Unit vector of ℂⁿ, `| ‖x‖₂ − 1 | ≤ 1e−12`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector(Vec<C64>);

impl UnitVector {
    pub const TOLERANCE: f64 = 1e-12;

    pub fn new(entries: Vec<C64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidShape("vector must be nonempty".into()));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let norm = norm2(&entries);
        if (norm - 1.0).abs() > Self::TOLERANCE {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self(entries))
    }

    /// Rescales a nonzero finite vector to unit length.
    pub fn normalize(entries: Vec<C64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidShape("vector must be nonempty".into()));
        }
        let norm = norm2(&entries);
        if !norm.is_finite() {
            return Err(Error::NonFinite);
        }
        if norm == 0.0 {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self(entries.into_iter().map(|z| z / norm).collect()))
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim);
        let mut v = vec![ZERO; dim];
        v[k] = ONE;
        Self(v)
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<C64> {
        self.0
    }

    /// Multiplies by a unimodular scalar.
    pub fn rotate_phase(&self, phase: C64) -> Self {
        let phase = phase / phase.norm();
        Self(scale_vec(&self.0, phase))
    }

    /// Representative of the ray `{e^{iφ}x}` closest to `target`.
    pub fn aligned_to(&self, target: &[C64]) -> Self {
        let c = inner(target, &self.0);
        if c.norm() == 0.0 {
            self.clone()
        } else {
            self.rotate_phase(c / c.norm())
        }
    }

    pub fn distance(&self, other: &UnitVector) -> f64 {
        distance(&self.0, &other.0)
    }
}

impl AsRef<[C64]> for UnitVector {
    fn as_ref(&self) -> &[C64] {
        &self.0
    }
}

/// Shorthand constructor.
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
