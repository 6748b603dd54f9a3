use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::eigen::hermitian_min_eigenvalue;
use super::matrix::ComplexMatrix;
use super::norms::operator_norm;

/// Operator classes admitted by the correctors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorClass {
    General,
    Positive,
    SelfAdjoint,
    /// `T* = −T`.
    AntiSymmetric,
    Unitary,
    Normal,
    /// Schatten–von Neumann class with exponent `p` (every matrix qualifies).
    #[serde(rename = "schatten")]
    SchattenP(f64),
}

impl OperatorClass {
    pub fn name(&self) -> &'static str {
        match self {
            OperatorClass::General => "general",
            OperatorClass::Positive => "positive",
            OperatorClass::SelfAdjoint => "self-adjoint",
            OperatorClass::AntiSymmetric => "anti-symmetric",
            OperatorClass::Unitary => "unitary",
            OperatorClass::Normal => "normal",
            OperatorClass::SchattenP(_) => "schatten",
        }
    }

    pub fn schatten_exponent(&self) -> Option<f64> {
        match self {
            OperatorClass::SchattenP(p) => Some(*p),
            _ => None,
        }
    }
}

impl fmt::Display for OperatorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorClass::SchattenP(p) => write!(f, "schatten:{p}"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for OperatorClass {
    type Err = String;

    /// Parses the class names used on the command line; `schatten` defaults to `p = 2`
    /// and `schatten:<p>` sets the exponent.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        if let Some(p) = lower.strip_prefix("schatten:") {
            return p
                .parse::<f64>()
                .map(OperatorClass::SchattenP)
                .map_err(|e| format!("bad Schatten exponent {p:?}: {e}"));
        }
        Ok(match lower.as_str() {
            "general" => OperatorClass::General,
            "positive" => OperatorClass::Positive,
            "self-adjoint" | "selfadjoint" | "hermitian" => OperatorClass::SelfAdjoint,
            "anti-symmetric" | "antisymmetric" | "skew-hermitian" => OperatorClass::AntiSymmetric,
            "unitary" => OperatorClass::Unitary,
            "normal" => OperatorClass::Normal,
            "schatten" => OperatorClass::SchattenP(2.0),
            _ => return Err(format!("unknown operator class {s:?}")),
        })
    }
}

pub fn default_class_tolerance(t: &ComplexMatrix) -> f64 {
    1e-8 * operator_norm(t).max(1.0)
}

/// Membership test; residuals are measured in operator norm.
pub fn class_check(t: &ComplexMatrix, class: OperatorClass, tol: f64) -> bool {
    match class {
        OperatorClass::General | OperatorClass::SchattenP(_) => true,
        OperatorClass::SelfAdjoint => operator_norm(&(t - &t.adjoint())) <= tol,
        OperatorClass::AntiSymmetric => operator_norm(&(t + &t.adjoint())) <= tol,
        OperatorClass::Positive => {
            operator_norm(&(t - &t.adjoint())) <= tol && hermitian_min_eigenvalue(t) >= -tol
        }
        OperatorClass::Unitary => {
            let n = t.dim();
            operator_norm(&(&t.adjoint().matmul(t) - &ComplexMatrix::identity(n))) <= tol
        }
        OperatorClass::Normal => normality_defect(t) <= tol,
    }
}

/// `‖TT* − T*T‖`.
pub fn normality_defect(t: &ComplexMatrix) -> f64 {
    let ts = t.adjoint();
    operator_norm(&(&t.matmul(&ts) - &ts.matmul(t)))
}
