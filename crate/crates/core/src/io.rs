//! JSON interchange.
//!
//! Matrices are `{"dim": n, "entries": [[[re, im], ...], ...]}` (row-major),
//! vectors `{"dim": n, "entries": [[re, im], ...]}`.

use std::path::Path;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::certificate::CorrectionCertificate;
use crate::error::{Error, Result};
use crate::isometry::Mode;
use crate::linalg::{ComplexMatrix, OperatorClass, UnitVector, C64};
use crate::nu_correct::IterationTrace;
use crate::spectral::SpectralMeasure;

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

fn pair(z: &C64) -> [f64; 2] {
    [z.re, z.im]
}

fn from_matrix_json(m: MatrixJson) -> Result<ComplexMatrix> {
    if m.entries.len() != m.dim {
        return Err(Error::InvalidShape(format!(
            "dim is {} but {} rows were given",
            m.dim,
            m.entries.len()
        )));
    }
    let rows = m
        .entries
        .into_iter()
        .map(|row| row.into_iter().map(|[re, im]| C64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(rows)
}

fn vector_entries(v: VectorJson) -> Result<Vec<C64>> {
    if v.entries.len() != v.dim {
        return Err(Error::InvalidShape(format!(
            "dim is {} but {} entries were given",
            v.dim,
            v.entries.len()
        )));
    }
    Ok(v.entries
        .into_iter()
        .map(|[re, im]| C64::new(re, im))
        .collect())
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            dim: self.dim(),
            entries: (0..self.dim())
                .map(|i| self.row(i).iter().map(pair).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        from_matrix_json(MatrixJson::deserialize(deserializer)?).map_err(D::Error::custom)
    }
}

impl Serialize for UnitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        VectorJson {
            dim: self.dim(),
            entries: self.as_slice().iter().map(pair).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UnitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries =
            vector_entries(VectorJson::deserialize(deserializer)?).map_err(D::Error::custom)?;
        UnitVector::new(entries).map_err(D::Error::custom)
    }
}

pub fn matrix_from_json(s: &str) -> Result<ComplexMatrix> {
    Ok(serde_json::from_str(s)?)
}

pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string_pretty(m).expect("matrix serialization is infallible")
}

/// Reads a vector; with `normalize` any nonzero vector is rescaled,
/// otherwise it must already have unit norm.
pub fn vector_from_json(s: &str, normalize: bool) -> Result<UnitVector> {
    let entries = vector_entries(serde_json::from_str(s)?)?;
    if normalize {
        UnitVector::normalize(entries)
    } else {
        UnitVector::new(entries)
    }
}

pub fn vector_to_json(v: &UnitVector) -> String {
    serde_json::to_string_pretty(v).expect("vector serialization is infallible")
}

#[derive(Serialize)]
struct SpectralPointJson<'a> {
    eigenvalue: [f64; 2],
    projection: &'a ComplexMatrix,
}

pub fn spectral_measure_to_json(e: &SpectralMeasure) -> String {
    let points: Vec<SpectralPointJson> = e
        .points()
        .iter()
        .map(|p| SpectralPointJson {
            eigenvalue: pair(&p.eigenvalue),
            projection: &p.projection,
        })
        .collect();
    serde_json::to_string_pretty(&points).expect("spectral serialization is infallible")
}

/// Everything needed to re-check a correction from a file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrectionRecord {
    pub mode: Mode,
    pub class: OperatorClass,
    pub epsilon: f64,
    pub exact_point: bool,
    /// Factor the raw input was divided by (1 when it was already normalized).
    pub scale: f64,
    #[serde(rename = "T")]
    pub t: ComplexMatrix,
    pub x0: UnitVector,
    #[serde(rename = "S")]
    pub s: ComplexMatrix,
    pub x1: UnitVector,
    pub certificate: CorrectionCertificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<IterationTrace>,
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Json(format!("{}: {e}", path.display())))
}
