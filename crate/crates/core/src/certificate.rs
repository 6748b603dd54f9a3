use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::isometry::Mode;
use crate::linalg::{
    class_check, default_class_tolerance, norm2, numerical_radius, operator_norm, schatten_norm,
    ComplexMatrix, OperatorClass, UnitVector,
};
use crate::nu_correct::IterationTrace;

/// Slack granted to strict inequalities.
pub const STRICT_SLACK: f64 = 1e-9;

/// Which closed-form bound a certificate instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremTag {
    /// `S = U|T|f(|T|)`, `‖S − T‖ < ε`, `‖x₁ − x₀‖ < 4√ε`.
    NormSpectralTruncation,
    /// Unitary input attains everywhere; `S = T`.
    NormUnitary,
    /// Norm correction followed by a transfer to `x₀`.
    NormPointTransfer,
    /// `S̃ = S∘R`, `σ_p(S̃ − T) < 2εM + (1 + 2ε)M·4√ε`.
    NormSchatten,
    /// `S̃ = T_∞/ν(T_∞)` from rank-one bumps of size `(ε/4)ⁿ`.
    NuIteration,
    /// Iteration plus phase alignment and symmetrization, `‖S − T‖ < 9ε`.
    NuSelfAdjoint,
    /// `S = R∘T` with `R` rotating `Tx₀` onto `e^{iθ}x₀`.
    NuUnitaryRotation,
    /// `S = R*N₁ + N₂`.
    NuNormalSurgery,
    /// Normal surgery with the `σ_p` estimate.
    NuNormalSchatten,
    /// Iteration with the `σ_p` estimate `(ε/(1−ε))(M + ε) + ε`.
    NuSchatten,
    /// ν correction followed by a transfer to `x₀`.
    NuPointTransfer,
}

/// A measured quantity and the bound it must respect.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
}

impl BoundCheck {
    pub fn new(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            bound,
        }
    }

    pub fn holds(&self) -> bool {
        self.measured.is_finite() && self.measured <= self.bound + STRICT_SLACK
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchattenDistance {
    pub p: f64,
    pub value: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrectionCertificate {
    pub mode: Mode,
    pub class: OperatorClass,
    pub epsilon: f64,
    pub theorem_tag: TheoremTag,
    /// `‖S − T‖`.
    pub op_distance: f64,
    pub theoretical_bound: f64,
    pub schatten_distance: Option<SchattenDistance>,
    /// `‖x − x₀‖` for the attainment point `x`.
    pub point_distance: f64,
    pub point_bound: f64,
    /// Distance of the attained value from 1 (norm or numerical radius).
    pub attainment_residual: f64,
    pub attainment_tolerance: f64,
    /// Almost-attainment threshold enforced on the input.
    pub threshold: f64,
    /// Class membership of the output at the class-check tolerance.
    pub class_preserved: bool,
    /// Intermediate inequalities of the construction.
    pub checks: Vec<BoundCheck>,
    pub notes: Vec<String>,
}

impl CorrectionCertificate {
    /// Every inequality the certificate asserts, headline bounds first.
    pub fn all_checks(&self) -> Vec<BoundCheck> {
        let mut out = vec![
            BoundCheck::new(
                "operator distance",
                self.op_distance,
                self.theoretical_bound,
            ),
            BoundCheck::new("point distance", self.point_distance, self.point_bound),
            BoundCheck::new(
                "attainment residual",
                self.attainment_residual,
                self.attainment_tolerance,
            ),
        ];
        if let Some(s) = self.schatten_distance {
            out.push(BoundCheck::new(
                format!("schatten-{} distance", s.p),
                s.value,
                s.bound,
            ));
        }
        out.extend(self.checks.iter().cloned());
        out
    }

    pub fn failed_checks(&self) -> Vec<BoundCheck> {
        self.all_checks()
            .into_iter()
            .filter(|c| !c.holds())
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.class_preserved && self.failed_checks().is_empty()
    }

    /// `op_distance / theoretical_bound`, zero when both vanish.
    pub fn bound_ratio(&self) -> f64 {
        if self.theoretical_bound > 0.0 {
            self.op_distance / self.theoretical_bound
        } else if self.op_distance == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Output of every corrector: the new operator, the point where it attains,
/// and the certificate.
#[derive(Clone, Debug)]
pub struct Correction {
    pub operator: ComplexMatrix,
    pub point: UnitVector,
    pub certificate: CorrectionCertificate,
    pub trace: Option<IterationTrace>,
}

/// Bounds fixed by a construction, before the achieved quantities are measured.
#[derive(Clone, Debug)]
pub(crate) struct CertificateDraft {
    pub mode: Mode,
    pub class: OperatorClass,
    pub epsilon: f64,
    pub theorem_tag: TheoremTag,
    pub theoretical_bound: f64,
    pub point_bound: f64,
    pub attainment_tolerance: f64,
    pub threshold: f64,
    /// `(p, bound)` for a Schatten estimate.
    pub schatten: Option<(f64, f64)>,
    pub checks: Vec<BoundCheck>,
    pub notes: Vec<String>,
}

impl CertificateDraft {
    /// Measures `S` against `T` and the attainment of `S` at `x`.
    pub fn finish(
        self,
        t: &ComplexMatrix,
        s: &ComplexMatrix,
        x0: &UnitVector,
        x: &UnitVector,
    ) -> Result<CorrectionCertificate> {
        let diff = s - t;
        let attainment_residual = match self.mode {
            Mode::Norm => {
                let norm = operator_norm(s);
                (norm - 1.0)
                    .abs()
                    .max((norm2(&s.mul_vec(x.as_slice())) - 1.0).abs())
            }
            Mode::Nu => {
                let nu = numerical_radius(s, 1e-12)?.value;
                (nu - 1.0)
                    .abs()
                    .max((s.quadratic_form(x.as_slice()).norm() - 1.0).abs())
            }
        };
        let schatten_distance = match self.schatten {
            Some((p, bound)) => Some(SchattenDistance {
                p,
                value: schatten_norm(&diff, p)?,
                bound,
            }),
            None => None,
        };
        Ok(CorrectionCertificate {
            mode: self.mode,
            class: self.class,
            epsilon: self.epsilon,
            theorem_tag: self.theorem_tag,
            op_distance: operator_norm(&diff),
            theoretical_bound: self.theoretical_bound,
            schatten_distance,
            point_distance: x.distance(x0),
            point_bound: self.point_bound,
            attainment_residual,
            attainment_tolerance: self.attainment_tolerance,
            threshold: self.threshold,
            class_preserved: class_check(s, self.class, default_class_tolerance(s)),
            checks: self.checks,
            notes: self.notes,
        })
    }
}
