//! Norm-attainment correctors.
//!
//! With `T = U|T|` and `f(t) = 1` on `[0, 1 − ε]`, `f(t) = 1/t` on `(1 − ε, 1]`,
//! the operator `S = U|T|f(|T|)` lifts the top part of the spectrum of `|T|`
//! to 1 and leaves the rest alone, so `‖S − T‖ ≤ ε`. It attains its norm on
//! `range E(A)`, `A = {t > 1 − ε}`, at the point `x₁ = E(A)x₀/‖E(A)x₀‖`.
//! Eigenvalues exactly equal to `1 − ε` stay outside `A`.

use crate::certificate::{BoundCheck, CertificateDraft, Correction, TheoremTag};
use crate::error::{Error, Result};
use crate::isometry::{pointify, pointify_bound, transitive_isometry, Mode};
use crate::linalg::{
    class_check, default_class_tolerance, hermitian_min_eigenvalue, norm2, operator_norm,
    polar_decompose, schatten_norm, ComplexMatrix, OperatorClass, UnitVector, C64,
};
use crate::spectral::{
    apply_borel_function, normal_spectral_measure, polar_from_measure, spectral_projection,
    SpectralMeasure, SpectralRegion,
};

/// Allowed deviation of `‖T‖` from 1 on input.
pub const NORM_INPUT_TOLERANCE: f64 = 1e-8;
/// Allowed deviation of `‖S‖` and `‖Sx₁‖` from 1 on output.
pub const NORM_ATTAINMENT_TOLERANCE: f64 = 1e-8;
/// Output tolerance after a transfer to `x₀`.
pub const NORM_TRANSFER_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct NormCorrectionRequest {
    pub t: ComplexMatrix,
    pub x0: UnitVector,
    pub epsilon: f64,
    pub class: OperatorClass,
    /// Schatten exponent when the class does not carry one.
    pub schatten_p: Option<f64>,
    /// Upper bound `M ≥ σ_p(T)`; defaults to `σ_p(T)`.
    pub schatten_bound: Option<f64>,
    /// Attain at `x₀` itself instead of at a nearby point.
    pub exact_point: bool,
}

impl NormCorrectionRequest {
    pub fn new(t: ComplexMatrix, x0: UnitVector, epsilon: f64, class: OperatorClass) -> Self {
        Self {
            t,
            x0,
            epsilon,
            class,
            schatten_p: None,
            schatten_bound: None,
            exact_point: false,
        }
    }

    pub fn with_exact_point(mut self, exact: bool) -> Self {
        self.exact_point = exact;
        self
    }

    /// `‖Tx₀‖` must exceed `1 − ε²/4`.
    pub fn threshold(&self) -> f64 {
        1.0 - self.epsilon * self.epsilon / 4.0
    }

    pub fn p(&self) -> Option<f64> {
        self.class.schatten_exponent().or(self.schatten_p)
    }

    pub fn validate(&self) -> Result<()> {
        check_epsilon(self.epsilon, 1.0)?;
        if self.t.dim() != self.x0.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.t.dim(),
                found: self.x0.dim(),
            });
        }
        if !self.t.is_finite() {
            return Err(Error::NonFinite);
        }
        let norm = operator_norm(&self.t);
        if (norm - 1.0).abs() > NORM_INPUT_TOLERANCE {
            return Err(Error::NotNormalized {
                quantity: "‖T‖",
                measured: norm,
                tolerance: NORM_INPUT_TOLERANCE,
            });
        }
        check_membership(&self.t, self.class)?;
        let attained = norm2(&self.t.mul_vec(self.x0.as_slice()));
        if attained <= self.threshold() {
            return Err(Error::AlmostAttainmentViolated {
                measured: attained,
                threshold: self.threshold(),
            });
        }
        Ok(())
    }
}

pub(crate) fn check_epsilon(epsilon: f64, upper: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < upper) {
        return Err(Error::InvalidEpsilon {
            value: epsilon,
            lower: 0.0,
            upper,
        });
    }
    Ok(())
}

pub(crate) fn check_membership(t: &ComplexMatrix, class: OperatorClass) -> Result<()> {
    if let Some(p) = class.schatten_exponent() {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidP(p));
        }
    }
    if class_check(t, class, default_class_tolerance(t)) {
        return Ok(());
    }
    if class == OperatorClass::Positive {
        return Err(Error::NotPositive {
            min_eigenvalue: hermitian_min_eigenvalue(&t.hermitian_part()),
        });
    }
    Err(Error::ClassMismatch {
        class: class.to_string(),
    })
}

/// `f(t) = 1` on `[0, 1 − ε]`, `1/t` on `(1 − ε, 1]`.
pub fn truncation_function(epsilon: f64) -> Result<impl Fn(f64) -> f64 + Copy> {
    check_epsilon(epsilon, 1.0)?;
    Ok(move |t: f64| if t > 1.0 - epsilon { 1.0 / t } else { 1.0 })
}

struct Truncation {
    s: ComplexMatrix,
    x1: UnitVector,
    top_projection: ComplexMatrix,
}

/// `S = U·(|T|f(|T|))` given `U` and the spectral measure of `|T|`.
fn truncate(
    u: Option<&ComplexMatrix>,
    modulus: &SpectralMeasure,
    x0: &UnitVector,
    epsilon: f64,
) -> Result<Truncation> {
    let f = truncation_function(epsilon)?;
    let top = SpectralRegion::real_above(1.0 - epsilon);
    let top_projection = spectral_projection(modulus, &top);
    let y = top_projection.mul_vec(x0.as_slice());
    if norm2(&y) == 0.0 {
        return Err(Error::EmptyProjection);
    }
    let x1 = UnitVector::normalize(y)?;
    let lifted = apply_borel_function(modulus, |z| C64::new(z.re * f(z.re), 0.0));
    let s = match u {
        Some(u) => u.matmul(&lifted),
        None => lifted,
    };
    Ok(Truncation {
        s,
        x1,
        top_projection,
    })
}

fn draft(req: &NormCorrectionRequest, tag: TheoremTag) -> CertificateDraft {
    CertificateDraft {
        mode: Mode::Norm,
        class: req.class,
        epsilon: req.epsilon,
        theorem_tag: tag,
        theoretical_bound: req.epsilon,
        point_bound: 4.0 * req.epsilon.sqrt(),
        attainment_tolerance: NORM_ATTAINMENT_TOLERANCE,
        threshold: req.threshold(),
        schatten: None,
        checks: Vec::new(),
        notes: Vec::new(),
    }
}

fn range_check(tr: &Truncation) -> BoundCheck {
    let px = tr.top_projection.mul_vec(tr.x1.as_slice());
    BoundCheck::new(
        "x1 in range E(A)",
        crate::linalg::distance(&px, tr.x1.as_slice()),
        1e-9,
    )
}

/// `R = T·f(T)` for positive `T`.
pub fn norm_correct_positive(req: &NormCorrectionRequest) -> Result<Correction> {
    if req.class != OperatorClass::Positive {
        return Err(Error::ClassMismatch {
            class: req.class.to_string(),
        });
    }
    req.validate()?;
    let base = positive_base(req)?;
    if req.exact_point {
        transfer(req, base)
    } else {
        Ok(base)
    }
}

fn positive_base(req: &NormCorrectionRequest) -> Result<Correction> {
    let e = normal_spectral_measure(&req.t)?;
    let tr = truncate(None, &e, &req.x0, req.epsilon)?;
    let f = truncation_function(req.epsilon)?;
    let t_f = req
        .t
        .matmul(&apply_borel_function(&e, |z| C64::new(f(z.re), 0.0)));
    let mut d = draft(req, TheoremTag::NormSpectralTruncation);
    d.checks.push(range_check(&tr));
    d.checks.push(BoundCheck::new(
        "quadratic form at x1",
        (tr.s.quadratic_form(tr.x1.as_slice()) - C64::new(1.0, 0.0)).norm(),
        NORM_ATTAINMENT_TOLERANCE,
    ));
    d.checks.push(BoundCheck::new(
        "R = T f(T)",
        operator_norm(&(&tr.s - &t_f)),
        1e-9,
    ));
    d.notes
        .push("boundary eigenvalues equal to 1 - epsilon are kept on the f = 1 branch".into());
    let cert = d.finish(&req.t, &tr.s, &req.x0, &tr.x1)?;
    Ok(Correction {
        operator: tr.s,
        point: tr.x1,
        certificate: cert,
        trace: None,
    })
}

/// Normal, self-adjoint and anti-symmetric inputs: `U` from the spectral
/// measure of `T`, so it commutes with `|T|`.
fn normal_base(req: &NormCorrectionRequest) -> Result<Correction> {
    let rotate = req.class == OperatorClass::AntiSymmetric;
    let t = if rotate {
        req.t.scale(C64::new(0.0, 1.0))
    } else {
        req.t.clone()
    };
    let e = normal_spectral_measure(&t)?;
    let polar = polar_from_measure(&e);
    let modulus = e.push_forward(|z| C64::new(z.norm(), 0.0));
    let tr = truncate(Some(&polar.isometry_part), &modulus, &req.x0, req.epsilon)?;
    let mut d = draft(req, TheoremTag::NormSpectralTruncation);
    d.checks.push(range_check(&tr));
    d.checks.push(BoundCheck::new(
        "U commutes with |T|",
        operator_norm(
            &(&polar.isometry_part.matmul(&polar.modulus)
                - &polar.modulus.matmul(&polar.isometry_part)),
        ),
        1e-9,
    ));
    let s = if rotate {
        d.notes.push("computed on iT and rotated back by -i".into());
        tr.s.scale(C64::new(0.0, -1.0))
    } else {
        tr.s
    };
    let cert = d.finish(&req.t, &s, &req.x0, &tr.x1)?;
    Ok(Correction {
        operator: s,
        point: tr.x1,
        certificate: cert,
        trace: None,
    })
}

fn general_base(req: &NormCorrectionRequest) -> Result<Correction> {
    let polar = polar_decompose(&req.t)?;
    let modulus = normal_spectral_measure(&polar.modulus)?;
    let tr = truncate(Some(&polar.isometry_part), &modulus, &req.x0, req.epsilon)?;
    let mut d = draft(req, TheoremTag::NormSpectralTruncation);
    d.checks.push(range_check(&tr));
    let cert = d.finish(&req.t, &tr.s, &req.x0, &tr.x1)?;
    Ok(Correction {
        operator: tr.s,
        point: tr.x1,
        certificate: cert,
        trace: None,
    })
}

fn unitary_base(req: &NormCorrectionRequest) -> Result<Correction> {
    let mut d = draft(req, TheoremTag::NormUnitary);
    d.notes
        .push("unitary input attains its norm at every unit vector".into());
    let cert = d.finish(&req.t, &req.t, &req.x0, &req.x0)?;
    Ok(Correction {
        operator: req.t.clone(),
        point: req.x0.clone(),
        certificate: cert,
        trace: None,
    })
}

fn base_correction(req: &NormCorrectionRequest) -> Result<Correction> {
    match req.class {
        OperatorClass::Unitary => unitary_base(req),
        OperatorClass::Positive => positive_base(req),
        OperatorClass::SelfAdjoint | OperatorClass::Normal | OperatorClass::AntiSymmetric => {
            normal_base(req)
        }
        OperatorClass::General | OperatorClass::SchattenP(_) => general_base(req),
    }
}

/// Moves the attainment point of a base correction to `x₀`.
fn transfer(req: &NormCorrectionRequest, base: Correction) -> Result<Correction> {
    if base.point == req.x0 {
        return Ok(base);
    }
    let s = pointify(&base.operator, &base.point, &req.x0, Mode::Norm)?;
    let step_bound = pointify_bound(&base.point, &req.x0, Mode::Norm);
    let mut d = draft(req, TheoremTag::NormPointTransfer);
    d.theoretical_bound = 3.0 * req.epsilon;
    d.point_bound = 0.0;
    d.attainment_tolerance = NORM_TRANSFER_TOLERANCE;
    d.checks.push(BoundCheck::new(
        "base operator distance",
        base.certificate.op_distance,
        base.certificate.theoretical_bound,
    ));
    d.checks.push(BoundCheck::new(
        "base point distance",
        base.certificate.point_distance,
        base.certificate.point_bound,
    ));
    d.checks.push(BoundCheck::new(
        "transfer displacement",
        operator_norm(&(&s - &base.operator)),
        step_bound,
    ));
    d.notes.extend(base.certificate.notes);
    let cert = d.finish(&req.t, &s, &req.x0, &req.x0)?;
    Ok(Correction {
        operator: s,
        point: req.x0.clone(),
        certificate: cert,
        trace: None,
    })
}

/// Norm corrector for every class; Schatten classes go through
/// [`norm_correct_schatten`], which already attains at `x₀`.
pub fn norm_correct(req: &NormCorrectionRequest) -> Result<Correction> {
    req.validate()?;
    if matches!(req.class, OperatorClass::SchattenP(_)) {
        return schatten_after_validation(req);
    }
    let base = base_correction(req)?;
    if req.exact_point {
        transfer(req, base)
    } else {
        Ok(base)
    }
}

/// `S̃ = S∘R` with `R` the transitive isometry taking `x₀` to `x₁`, so that
/// `S̃` attains at `x₀`, with `σ_p(S̃ − T) < 2εM + (1 + 2ε)M·4√ε`.
pub fn norm_correct_schatten(req: &NormCorrectionRequest) -> Result<Correction> {
    req.validate()?;
    schatten_after_validation(req)
}

fn schatten_after_validation(req: &NormCorrectionRequest) -> Result<Correction> {
    let p = req.p().ok_or_else(|| Error::PreconditionViolated {
        what: "a Schatten exponent is required".into(),
        residual: f64::NAN,
    })?;
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidP(p));
    }
    let sigma = schatten_norm(&req.t, p)?;
    let m = req.schatten_bound.unwrap_or(sigma);
    if sigma > m * (1.0 + 1e-12) {
        return Err(Error::PreconditionViolated {
            what: format!("schatten-{p} norm of T exceeds the declared bound M = {m}"),
            residual: sigma - m,
        });
    }
    let base = base_correction(req)?;
    let r = transitive_isometry(&req.x0, &base.point)?;
    let s = base.operator.matmul(&r);
    let eps = req.epsilon;
    let bound = 2.0 * eps * m + (1.0 + 2.0 * eps) * m * 4.0 * eps.sqrt();

    let mut d = draft(req, TheoremTag::NormSchatten);
    d.theoretical_bound = bound;
    d.point_bound = 0.0;
    d.schatten = Some((p, bound));
    d.checks.push(BoundCheck::new(
        "base operator distance",
        base.certificate.op_distance,
        base.certificate.theoretical_bound,
    ));
    d.checks.push(BoundCheck::new(
        "base point distance",
        base.certificate.point_distance,
        base.certificate.point_bound,
    ));
    d.notes.push(format!("M = {m}"));
    let cert = d.finish(&req.t, &s, &req.x0, &req.x0)?;
    let schatten = cert.schatten_distance.map(|s| s.value).unwrap_or(0.0);
    let mut cert = cert;
    cert.checks.push(BoundCheck::new(
        "operator norm below schatten norm",
        cert.op_distance,
        schatten,
    ));
    Ok(Correction {
        operator: s,
        point: req.x0.clone(),
        certificate: cert,
        trace: None,
    })
}
