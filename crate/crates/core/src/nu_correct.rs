//! Numerical-radius attainment correctors.
//!
//! The general construction adds rank-one bumps `α_n(ε/4)ⁿ x_n x_n*` to `T`,
//! each aligned with the phase of `⟨T_{n−1}x_n, x_n⟩`, until the perturbed
//! operator attains its numerical radius at the last bump point; dividing by
//! that radius gives an operator with `ν = 1` attained there. Self-adjoint,
//! unitary and normal inputs have dedicated constructions that keep the class.

use serde::{Deserialize, Serialize};

use crate::certificate::{BoundCheck, CertificateDraft, Correction, TheoremTag};
use crate::error::{Error, Result};
use crate::isometry::{pointify, pointify_bound, transitive_isometry, Mode};
use crate::linalg::{
    inner, norm2, normality_defect, numerical_radius, numerical_radius_seeded, operator_norm,
    schatten_norm, ComplexMatrix, OperatorClass, UnitVector, C64, ONE,
};
use crate::norm_correct::{check_epsilon, check_membership};
use crate::spectral::{
    normal_spectral_measure, region_truncation, spectral_projection, unit_phase, SpectralRegion,
};

/// Allowed deviation of `ν(T)` from 1 on input.
pub const NU_INPUT_TOLERANCE: f64 = 1e-6;
/// Allowed deviation of `ν(S)` and `|⟨Sx, x⟩|` from 1 on output.
pub const NU_ATTAINMENT_TOLERANCE: f64 = 1e-6;
/// Accuracy requested from the numerical-radius solver inside the correctors.
pub const NU_SOLVER_TOL: f64 = 1e-12;

/// Tunables of the bump iteration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuOptions {
    /// Stop once `ν(T_n) − |⟨T_n x_n, x_n⟩|` is at most this.
    pub stop_tol: f64,
    pub max_steps: usize,
    /// `η(ε) = eta_scale·ε²` in the almost-attainment threshold `1 − min{ε, η(ε)}`.
    pub eta_scale: f64,
}

impl Default for NuOptions {
    fn default() -> Self {
        Self {
            stop_tol: 1e-9,
            max_steps: 40,
            eta_scale: 1.0 / 16.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NuCorrectionRequest {
    pub t: ComplexMatrix,
    pub x0: UnitVector,
    pub epsilon: f64,
    pub class: OperatorClass,
    /// Schatten exponent when the class does not carry one.
    pub schatten_p: Option<f64>,
    /// Upper bound `M ≥ σ_p(T)`; defaults to `σ_p(T)`.
    pub schatten_bound: Option<f64>,
    pub exact_point: bool,
    pub options: NuOptions,
}

impl NuCorrectionRequest {
    pub fn new(t: ComplexMatrix, x0: UnitVector, epsilon: f64, class: OperatorClass) -> Self {
        Self {
            t,
            x0,
            epsilon,
            class,
            schatten_p: None,
            schatten_bound: None,
            exact_point: false,
            options: NuOptions::default(),
        }
    }

    pub fn with_exact_point(mut self, exact: bool) -> Self {
        self.exact_point = exact;
        self
    }

    pub fn p(&self) -> Option<f64> {
        self.class.schatten_exponent().or(self.schatten_p)
    }

    pub fn eta(&self) -> f64 {
        self.options.eta_scale * self.epsilon * self.epsilon
    }

    /// `|⟨Tx₀, x₀⟩|` must exceed this.
    pub fn threshold(&self) -> f64 {
        match self.class {
            OperatorClass::Unitary => 1.0 - self.epsilon * self.epsilon / 2.0,
            OperatorClass::Normal => 1.0 - self.epsilon,
            _ => 1.0 - self.epsilon.min(self.eta()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let upper = if self.class == OperatorClass::Normal {
            0.5
        } else {
            1.0
        };
        check_epsilon(self.epsilon, upper)?;
        if self.t.dim() != self.x0.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.t.dim(),
                found: self.x0.dim(),
            });
        }
        if !self.t.is_finite() {
            return Err(Error::NonFinite);
        }
        let nu = numerical_radius(&self.t, NU_SOLVER_TOL)?.value;
        if (nu - 1.0).abs() > NU_INPUT_TOLERANCE {
            return Err(Error::NotNormalized {
                quantity: "ν(T)",
                measured: nu,
                tolerance: NU_INPUT_TOLERANCE,
            });
        }
        check_membership(&self.t, self.class)?;
        let attained = self.t.quadratic_form(self.x0.as_slice()).norm();
        if attained <= self.threshold() {
            return Err(Error::AlmostAttainmentViolated {
                measured: attained,
                threshold: self.threshold(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationStep {
    pub x: UnitVector,
    pub alpha: C64,
    /// `(ε/4)ⁿ`.
    pub size: f64,
    /// `ν(T_n)`.
    pub nu: f64,
    /// `ν(T_n) − |⟨T_n x_n, x_n⟩|`.
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    /// `ν(T)` before any bump.
    pub initial_nu: f64,
    pub steps: Vec<IterationStep>,
    pub converged: bool,
}

#[derive(Clone, Debug)]
pub struct IterationOutput {
    pub t_inf: ComplexMatrix,
    pub x_inf: UnitVector,
    pub trace: IterationTrace,
}

/// Rank-one bump iteration.
///
/// Step 1 bumps at `x₀`; step `n ≥ 2` bumps at the witness of `ν(T_{n−1})`
/// reached by local ascent from `x_{n−1}`. The phase `α_n` is that of
/// `⟨T_{n−1}x_n, x_n⟩` (pinned to 1 for positive `T`). Stops as soon as
/// `T_n` attains `ν(T_n)` at `x_n` within `stop_tol`.
pub fn nu_iterate(req: &NuCorrectionRequest) -> Result<IterationOutput> {
    req.validate()?;
    iterate_unchecked(
        &req.t,
        &req.x0,
        req.epsilon,
        req.class == OperatorClass::Positive,
        &req.options,
    )
}

fn iterate_unchecked(
    t: &ComplexMatrix,
    x0: &UnitVector,
    epsilon: f64,
    positive: bool,
    opts: &NuOptions,
) -> Result<IterationOutput> {
    let start = numerical_radius(t, NU_SOLVER_TOL)?;
    let mut trace = IterationTrace {
        initial_nu: start.value,
        steps: Vec::new(),
        converged: false,
    };
    if start.value - t.quadratic_form(x0.as_slice()).norm() <= opts.stop_tol {
        trace.converged = true;
        return Ok(IterationOutput {
            t_inf: t.clone(),
            x_inf: x0.clone(),
            trace,
        });
    }

    let mut current = t.clone();
    let mut previous = x0.clone();
    for n in 1..=opts.max_steps {
        let x = if n == 1 {
            x0.clone()
        } else {
            numerical_radius_seeded(&current, NU_SOLVER_TOL, &previous)?
                .witness
                .aligned_to(previous.as_slice())
        };
        let drift = x.distance(x0);
        if drift >= epsilon {
            return Err(Error::IterationStalled {
                steps: n - 1,
                reason: format!("bump point drifted {drift:.3e} from x0, budget {epsilon}"),
            });
        }
        let q = current.quadratic_form(x.as_slice());
        let alpha = if positive { ONE } else { unit_phase(q) };
        let size = (epsilon / 4.0).powi(n as i32);
        current = &current + &ComplexMatrix::outer(x.as_slice(), x.as_slice()).scale(alpha * size);
        let nu = numerical_radius_seeded(&current, NU_SOLVER_TOL, &x)?.value;
        let gap = (nu - current.quadratic_form(x.as_slice()).norm()).max(0.0);
        trace.steps.push(IterationStep {
            x: x.clone(),
            alpha,
            size,
            nu,
            gap,
        });
        if gap <= opts.stop_tol {
            trace.converged = true;
            return Ok(IterationOutput {
                t_inf: current,
                x_inf: x,
                trace,
            });
        }
        previous = x;
    }
    Err(Error::IterationStalled {
        steps: opts.max_steps,
        reason: "step budget exhausted before attainment".into(),
    })
}

fn draft(req: &NuCorrectionRequest, tag: TheoremTag, bound: f64) -> CertificateDraft {
    CertificateDraft {
        mode: Mode::Nu,
        class: req.class,
        epsilon: req.epsilon,
        theorem_tag: tag,
        theoretical_bound: bound,
        point_bound: req.epsilon,
        attainment_tolerance: NU_ATTAINMENT_TOLERANCE,
        threshold: req.threshold(),
        schatten: None,
        checks: Vec::new(),
        notes: Vec::new(),
    }
}

fn schatten_bound_m(req: &NuCorrectionRequest, p: f64) -> Result<f64> {
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
    Ok(m)
}

fn iteration_checks(
    d: &mut CertificateDraft,
    out: &IterationOutput,
    t: &ComplexMatrix,
    epsilon: f64,
) {
    let total: f64 = out.trace.steps.iter().map(|s| s.size).sum();
    d.checks.push(BoundCheck::new(
        "‖T_inf − T‖",
        operator_norm(&(&out.t_inf - t)),
        epsilon / (4.0 - epsilon),
    ));
    d.checks.push(BoundCheck::new(
        "bump total",
        total,
        epsilon / (4.0 - epsilon),
    ));
    let mut last = out.trace.initial_nu;
    let mut drop: f64 = 0.0;
    for s in &out.trace.steps {
        drop = drop.max(last - s.nu);
        last = s.nu;
    }
    d.checks.push(BoundCheck::new("ν_n decrease", drop, 1e-10));
}

/// General, positive and Schatten inputs: `S̃ = T_∞/ν(T_∞)` attaining at `x_∞`.
pub fn nu_correct(req: &NuCorrectionRequest) -> Result<Correction> {
    if !matches!(
        req.class,
        OperatorClass::General | OperatorClass::Positive | OperatorClass::SchattenP(_)
    ) {
        return Err(Error::ClassMismatch {
            class: req.class.to_string(),
        });
    }
    req.validate()?;
    let base = iteration_base(req)?;
    maybe_transfer(req, base)
}

fn iteration_base(req: &NuCorrectionRequest) -> Result<Correction> {
    let positive = req.class == OperatorClass::Positive;
    let out = iterate_unchecked(&req.t, &req.x0, req.epsilon, positive, &req.options)?;
    let nu_inf = numerical_radius(&out.t_inf, NU_SOLVER_TOL)?.value;
    let s = out.t_inf.scale_real(1.0 / nu_inf);
    let eps = req.epsilon;

    let mut d = match req.p() {
        Some(p) => {
            let m = schatten_bound_m(req, p)?;
            let bound = eps / (1.0 - eps) * (m + eps) + eps;
            let mut d = draft(req, TheoremTag::NuSchatten, bound);
            d.schatten = Some((p, bound));
            d.notes.push(format!("M = {m}"));
            d
        }
        None => draft(req, TheoremTag::NuIteration, eps),
    };
    iteration_checks(&mut d, &out, &req.t, eps);
    d.notes.push(format!(
        "eta(epsilon) = {} * epsilon^2",
        req.options.eta_scale
    ));
    let cert = d.finish(&req.t, &s, &req.x0, &out.x_inf)?;
    Ok(Correction {
        operator: s,
        point: out.x_inf,
        certificate: cert,
        trace: Some(out.trace),
    })
}

/// Self-adjoint inputs (anti-symmetric ones through `iT`): iteration, phase
/// alignment `S′ = e^{−iθ}S̃`, then `S = (S′ + S′*)/2`; `‖S − T‖ < 9ε`.
pub fn nu_correct_selfadjoint(req: &NuCorrectionRequest) -> Result<Correction> {
    if !matches!(
        req.class,
        OperatorClass::SelfAdjoint | OperatorClass::AntiSymmetric
    ) {
        return Err(Error::ClassMismatch {
            class: req.class.to_string(),
        });
    }
    req.validate()?;
    let base = selfadjoint_base(req)?;
    maybe_transfer(req, base)
}

fn selfadjoint_base(req: &NuCorrectionRequest) -> Result<Correction> {
    let eps = req.epsilon;
    let anti = req.class == OperatorClass::AntiSymmetric;
    let mut t = if anti {
        req.t.scale(C64::new(0.0, 1.0))
    } else {
        req.t.clone()
    };
    let negate = t.quadratic_form(req.x0.as_slice()).re < 0.0;
    if negate {
        t = -&t;
    }

    let out = iterate_unchecked(&t, &req.x0, eps, false, &req.options)?;
    let nu_inf = numerical_radius(&out.t_inf, NU_SOLVER_TOL)?.value;
    let s_tilde = out.t_inf.scale_real(1.0 / nu_inf);
    let phase = unit_phase(s_tilde.quadratic_form(out.x_inf.as_slice()));
    let s_prime = s_tilde.scale(phase.conj());
    let mut s = s_prime.hermitian_part();
    if negate {
        s = -&s;
    }
    if anti {
        s = s.scale(C64::new(0.0, -1.0));
    }

    let mut d = draft(req, TheoremTag::NuSelfAdjoint, 9.0 * eps);
    iteration_checks(&mut d, &out, &t, eps);
    d.checks.push(BoundCheck::new(
        "|e^{iθ} − 1|",
        (phase - ONE).norm(),
        4.0 * eps,
    ));
    d.checks.push(BoundCheck::new(
        "‖S̃ − e^{−iθ}S̃‖",
        operator_norm(&(&s_tilde - &s_prime)),
        8.0 * eps,
    ));
    if negate {
        d.notes
            .push("⟨Tx0, x0⟩ < 0: computed on -T and negated back".into());
    }
    if anti {
        d.notes.push("computed on iT and rotated back by -i".into());
    }
    let cert = d.finish(&req.t, &s, &req.x0, &out.x_inf)?;
    Ok(Correction {
        operator: s,
        point: out.x_inf,
        certificate: cert,
        trace: Some(out.trace),
    })
}

/// Unitary inputs: `S = R∘T` with `R` rotating `Tx₀` onto `e^{iθ}x₀`, where
/// `e^{iθ}` is the phase of `⟨Tx₀, x₀⟩`. Attains at `x₀` itself.
pub fn nu_correct_unitary(req: &NuCorrectionRequest) -> Result<Correction> {
    if req.class != OperatorClass::Unitary {
        return Err(Error::ClassMismatch {
            class: req.class.to_string(),
        });
    }
    req.validate()?;
    unitary_base(req)
}

fn unitary_base(req: &NuCorrectionRequest) -> Result<Correction> {
    let q = req.t.quadratic_form(req.x0.as_slice());
    if q.norm() == 0.0 {
        return Err(Error::AlmostAttainmentViolated {
            measured: 0.0,
            threshold: req.threshold(),
        });
    }
    let phase = q / q.norm();
    let tx = UnitVector::normalize(req.t.mul_vec(req.x0.as_slice()))?;
    let target = req.x0.rotate_phase(phase);
    let r = transitive_isometry(&tx, &target)?;
    let s = r.matmul(&req.t);

    let mut d = draft(req, TheoremTag::NuUnitaryRotation, req.epsilon);
    d.point_bound = 0.0;
    d.attainment_tolerance = 1e-10;
    d.checks.push(BoundCheck::new(
        "‖R − Id‖",
        operator_norm(&(&r - &ComplexMatrix::identity(r.dim()))),
        tx.distance(&target),
    ));
    d.checks.push(BoundCheck::new(
        "‖Tx0 − e^{iθ}x0‖",
        tx.distance(&target),
        req.epsilon,
    ));
    let cert = d.finish(&req.t, &s, &req.x0, &req.x0)?;
    Ok(Correction {
        operator: s,
        point: req.x0.clone(),
        certificate: cert,
        trace: None,
    })
}

/// Normal inputs: with `Δ = {|z| > 1 − √(2ε)}`, `N₁ = ∫_Δ z/|z| dE`,
/// `N₂ = ∫_{Δᶜ} z dE` and `R` the transitive isometry on `range E(Δ)` taking
/// `x_ε` to `e^{iθ}N₁x_ε`, the operator `S = R*N₁ + N₂` is normal and attains
/// `ν(S) = 1` at `x_ε = E(Δ)x₀/‖E(Δ)x₀‖`.
pub fn nu_correct_normal(req: &NuCorrectionRequest) -> Result<Correction> {
    if req.class != OperatorClass::Normal {
        return Err(Error::ClassMismatch {
            class: req.class.to_string(),
        });
    }
    req.validate()?;
    let base = normal_base(req)?;
    maybe_transfer(req, base)
}

fn normal_base(req: &NuCorrectionRequest) -> Result<Correction> {
    let eps = req.epsilon;
    let s2 = (2.0 * eps).sqrt();
    let s4 = s2.sqrt();
    let radius = 1.0 - s2;
    let e = normal_spectral_measure(&req.t)?;
    let delta = SpectralRegion::modulus_above(radius);
    let rest = delta.complement();
    let p_delta = spectral_projection(&e, &delta);
    let y = p_delta.mul_vec(req.x0.as_slice());
    let y_norm = norm2(&y);
    if y_norm == 0.0 {
        return Err(Error::AlmostAttainmentViolated {
            measured: req.t.quadratic_form(req.x0.as_slice()).norm(),
            threshold: req.threshold(),
        });
    }
    let x_eps = UnitVector::normalize(y)?;
    let n1 = region_truncation(&e, &delta, unit_phase);
    let n2 = region_truncation(&e, &rest, |z| z);

    let image = n1.mul_vec(x_eps.as_slice());
    let overlap = inner(&image, x_eps.as_slice());
    let phase = if overlap.norm() > 0.0 {
        unit_phase(overlap).conj()
    } else {
        unit_phase(req.t.quadratic_form(req.x0.as_slice())).conj()
    };
    let target = UnitVector::normalize(image.iter().map(|z| z * phase).collect())?;
    let r = transitive_isometry(&x_eps, &target)?;
    let rn1 = r.adjoint().matmul(&n1);
    let s = &rn1 + &n2;

    let bound = (s2 + 2.0 * s4) / (1.0 - s2) + 2.0 * s2;
    let (tag, schatten) = match req.p() {
        Some(p) => {
            let m = schatten_bound_m(req, p)?;
            let sb = ((s2 + 2.0 * s4) / (1.0 - s2) + s2) * m / (1.0 - s2) + m * s2 / (1.0 - s2);
            (TheoremTag::NuNormalSchatten, Some((p, sb)))
        }
        None => (TheoremTag::NuNormalSurgery, None),
    };
    let mut d = draft(req, tag, bound);
    d.schatten = schatten;
    d.point_bound = s2 + s4;
    d.attainment_tolerance = 1e-7;
    d.checks
        .push(BoundCheck::new("1 − ‖E(Δ)x0‖", 1.0 - y_norm, s2));
    d.checks
        .push(BoundCheck::new("‖S‖ − 1", operator_norm(&s) - 1.0, 1e-9));
    d.checks
        .push(BoundCheck::new("‖SS* − S*S‖", normality_defect(&s), 1e-8));
    d.checks.push(BoundCheck::new(
        "‖(R*N1)N2‖",
        operator_norm(&rn1.matmul(&n2)),
        1e-9,
    ));
    d.checks.push(BoundCheck::new(
        "‖N2(R*N1)‖",
        operator_norm(&n2.matmul(&rn1)),
        1e-9,
    ));
    d.checks.push(BoundCheck::new(
        "‖R*E(Δ)R − E(Δ)‖",
        operator_norm(&(&r.adjoint().matmul(&p_delta).matmul(&r) - &p_delta)),
        1e-9,
    ));
    d.notes
        .push("eigenvalues with |z| = 1 - sqrt(2 epsilon) are kept in N2".into());
    let cert = d.finish(&req.t, &s, &req.x0, &x_eps)?;
    Ok(Correction {
        operator: s,
        point: x_eps,
        certificate: cert,
        trace: None,
    })
}

/// Moves the attainment point to `x₀`; the bound becomes the base bound plus
/// the `4‖x₀ − x₁‖ < 4ε` transfer displacement.
fn maybe_transfer(req: &NuCorrectionRequest, base: Correction) -> Result<Correction> {
    if !req.exact_point || base.point == req.x0 {
        return Ok(base);
    }
    let s = pointify(&base.operator, &base.point, &req.x0, Mode::Nu)?;
    let step = pointify_bound(&base.point, &req.x0, Mode::Nu);
    let bc = &base.certificate;
    let mut d = draft(
        req,
        TheoremTag::NuPointTransfer,
        bc.theoretical_bound + 4.0 * bc.point_bound,
    );
    d.point_bound = 0.0;
    if let Some(sd) = bc.schatten_distance {
        let sigma = schatten_norm(&base.operator, sd.p)?;
        d.schatten = Some((sd.p, sd.bound + 2.0 * base.point.distance(&req.x0) * sigma));
    }
    d.checks.push(BoundCheck::new(
        "base operator distance",
        bc.op_distance,
        bc.theoretical_bound,
    ));
    d.checks.push(BoundCheck::new(
        "base point distance",
        bc.point_distance,
        bc.point_bound,
    ));
    d.checks.push(BoundCheck::new(
        "transfer displacement",
        operator_norm(&(&s - &base.operator)),
        step,
    ));
    d.checks.extend(bc.checks.iter().cloned());
    d.notes
        .push(format!("base construction {:?}", bc.theorem_tag));
    d.notes.extend(bc.notes.iter().cloned());
    let cert = d.finish(&req.t, &s, &req.x0, &req.x0)?;
    Ok(Correction {
        operator: s,
        point: req.x0.clone(),
        certificate: cert,
        trace: base.trace,
    })
}

/// ν corrector for every class.
pub fn nu_correct_any(req: &NuCorrectionRequest) -> Result<Correction> {
    match req.class {
        OperatorClass::General | OperatorClass::Positive | OperatorClass::SchattenP(_) => {
            nu_correct(req)
        }
        OperatorClass::SelfAdjoint | OperatorClass::AntiSymmetric => nu_correct_selfadjoint(req),
        OperatorClass::Unitary => nu_correct_unitary(req),
        OperatorClass::Normal => nu_correct_normal(req),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn valid(c: &Correction) {
        assert!(
            c.certificate.is_valid(),
            "{:#?}",
            c.certificate.failed_checks()
        );
    }

    fn diag_witness() -> UnitVector {
        UnitVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap()
    }

    #[test]
    fn iteration_is_idle_at_attainment() {
        let t = ComplexMatrix::from_real_diagonal(&[1.0, 0.2]);
        let e1 = UnitVector::basis(2, 0);
        let out = nu_iterate(&NuCorrectionRequest::new(
            t.clone(),
            e1.clone(),
            0.3,
            OperatorClass::General,
        ))
        .unwrap();
        assert!(out.trace.steps.is_empty());
        assert_eq!(out.t_inf, t);
        assert_eq!(out.x_inf, e1);
    }

    #[test]
    fn jordan_block_at_its_witness() {
        let t = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        let req = NuCorrectionRequest::new(t, diag_witness(), 0.2, OperatorClass::General);
        let out = nu_iterate(&req).unwrap();
        assert!(out.trace.steps.len() <= 1);
        assert!(out.x_inf.distance(&diag_witness()) < 0.2);

        let c = nu_correct(&req.clone().with_exact_point(true)).unwrap();
        valid(&c);
        assert!((c.operator.quadratic_form(diag_witness().as_slice()).norm() - 1.0).abs() < 1e-6);
        assert!(c.certificate.op_distance < 1.0);
    }

    #[test]
    fn iteration_trace_is_monotone() {
        let delta = 1e-3;
        let mut t = ComplexMatrix::from_real_diagonal(&[1.0, 1.0 - delta]);
        t[(0, 1)] = c64(1e-4, 2e-4);
        t[(1, 0)] = c64(-3e-4, 1e-4);
        let nu = numerical_radius(&t, 1e-13).unwrap().value;
        let t = t.scale_real(1.0 / nu);
        let x0 = UnitVector::normalize(vec![c64(1.0, 0.0), c64(0.01, 0.005)]).unwrap();
        let req = NuCorrectionRequest::new(t, x0, 0.3, OperatorClass::General);
        let out = nu_iterate(&req).unwrap();
        assert!(out.trace.converged);
        assert!(!out.trace.steps.is_empty());
        let mut last = out.trace.initial_nu;
        for s in &out.trace.steps {
            assert!(s.nu >= last - 1e-10);
            last = s.nu;
        }
        for (n, s) in out.trace.steps.iter().enumerate() {
            assert!((s.size - 0.075f64.powi(n as i32 + 1)).abs() < 1e-15);
        }
        valid(&nu_correct(&req).unwrap());
    }

    #[test]
    fn positive_fixed_point() {
        let t = ComplexMatrix::from_real_diagonal(&[1.0, 0.5]);
        let c = nu_correct(&NuCorrectionRequest::new(
            t.clone(),
            UnitVector::basis(2, 0),
            0.3,
            OperatorClass::Positive,
        ))
        .unwrap();
        valid(&c);
        assert!((&c.operator - &t).max_abs() < 1e-12);
        assert!(c.certificate.op_distance < 1e-14);
    }

    #[test]
    fn positive_stays_positive() {
        let t = ComplexMatrix::from_real_rows(&[&[1.0, 0.01], &[0.01, 0.6]]);
        let nu = numerical_radius(&t, 1e-13).unwrap().value;
        let t = t.scale_real(1.0 / nu);
        let x0 = UnitVector::normalize(vec![c64(1.0, 0.0), c64(0.02, 0.0)]).unwrap();
        let c = nu_correct(&NuCorrectionRequest::new(
            t,
            x0,
            0.3,
            OperatorClass::Positive,
        ))
        .unwrap();
        valid(&c);
        assert!(c.trace.unwrap().steps.iter().all(|s| s.alpha == ONE));
    }

    #[test]
    fn selfadjoint_examples() {
        let t = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        let c = nu_correct_selfadjoint(&NuCorrectionRequest::new(
            t.clone(),
            UnitVector::basis(2, 0),
            0.3,
            OperatorClass::SelfAdjoint,
        ))
        .unwrap();
        valid(&c);
        assert!((&c.operator - &t).max_abs() < 1e-12);

        let t = ComplexMatrix::from_real_rows(&[&[0.9, 0.1], &[0.1, 0.9]]);
        let c = nu_correct_selfadjoint(&NuCorrectionRequest::new(
            t.clone(),
            diag_witness(),
            0.3,
            OperatorClass::SelfAdjoint,
        ))
        .unwrap();
        valid(&c);
        assert!((&c.operator - &t).max_abs() < 1e-12);

        let t = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        let d: f64 = 0.02;
        let x0 = UnitVector::from_real(&[(1.0 - d * d).sqrt(), d]).unwrap();
        let c = nu_correct_selfadjoint(&NuCorrectionRequest::new(
            t,
            x0,
            0.3,
            OperatorClass::SelfAdjoint,
        ))
        .unwrap();
        valid(&c);
        assert!(c.operator.hermitian_defect() < 1e-12);
    }

    #[test]
    fn selfadjoint_negative_side() {
        let t = ComplexMatrix::from_real_diagonal(&[0.5, -1.0]);
        let x0 = UnitVector::normalize(vec![c64(0.01, 0.0), c64(1.0, 0.0)]).unwrap();
        let c = nu_correct_selfadjoint(&NuCorrectionRequest::new(
            t,
            x0,
            0.3,
            OperatorClass::SelfAdjoint,
        ))
        .unwrap();
        valid(&c);
        assert!(c.operator.quadratic_form(c.point.as_slice()).re < 0.0);
    }

    #[test]
    fn unitary_examples() {
        let phi: f64 = 0.4;
        let t = ComplexMatrix::from_diagonal(&[c64(phi.cos(), phi.sin()), ONE]);
        let c = nu_correct_unitary(&NuCorrectionRequest::new(
            t.clone(),
            UnitVector::basis(2, 0),
            0.3,
            OperatorClass::Unitary,
        ))
        .unwrap();
        valid(&c);
        assert!((&c.operator - &t).max_abs() < 1e-12);

        let a: f64 = 0.1;
        let t = ComplexMatrix::from_real_rows(&[&[a.cos(), -a.sin()], &[a.sin(), a.cos()]]);
        let c = nu_correct_unitary(&NuCorrectionRequest::new(
            t,
            UnitVector::basis(2, 0),
            0.5,
            OperatorClass::Unitary,
        ))
        .unwrap();
        valid(&c);
        let q = c
            .operator
            .quadratic_form(UnitVector::basis(2, 0).as_slice());
        assert!((q.norm() - 1.0).abs() < 1e-10);
        assert!(c.certificate.op_distance < 0.5);

        let x0 = UnitVector::normalize(vec![c64(0.3, 0.2), c64(-0.1, 1.0)]).unwrap();
        let c = nu_correct_unitary(&NuCorrectionRequest::new(
            ComplexMatrix::identity(2),
            x0,
            0.1,
            OperatorClass::Unitary,
        ))
        .unwrap();
        assert!((&c.operator - &ComplexMatrix::identity(2)).max_abs() < 1e-12);
    }

    #[test]
    fn normal_examples() {
        let t = ComplexMatrix::from_real_diagonal(&[1.0, 0.1]);
        let c = nu_correct_normal(&NuCorrectionRequest::new(
            t.clone(),
            UnitVector::basis(2, 0),
            0.3,
            OperatorClass::Normal,
        ))
        .unwrap();
        valid(&c);
        assert!((&c.operator - &t).max_abs() < 1e-12);
        assert!(c.point.distance(&UnitVector::basis(2, 0)) < 1e-14);

        let t = ComplexMatrix::from_diagonal(&[c64(0.0, 1.0), c64(0.0, 0.0)]);
        let c = nu_correct_normal(&NuCorrectionRequest::new(
            t.clone(),
            UnitVector::basis(2, 0),
            0.3,
            OperatorClass::Normal,
        ))
        .unwrap();
        valid(&c);
        assert!((&c.operator - &t).max_abs() < 1e-12);

        let (a, b): (f64, f64) = (0.7, -1.1);
        let t = ComplexMatrix::from_diagonal(&[
            c64(a.cos(), a.sin()),
            c64(0.9 * b.cos(), 0.9 * b.sin()),
        ]);
        let x0 = UnitVector::normalize(vec![c64(1.0, 0.0), c64(0.1, 0.05)]).unwrap();
        let c = nu_correct_normal(&NuCorrectionRequest::new(t, x0, 0.2, OperatorClass::Normal))
            .unwrap();
        valid(&c);
    }

    #[test]
    fn normal_requires_small_epsilon() {
        let t = ComplexMatrix::from_real_diagonal(&[1.0, 0.1]);
        let req = NuCorrectionRequest::new(t, UnitVector::basis(2, 0), 0.6, OperatorClass::Normal);
        assert!(matches!(
            nu_correct_normal(&req),
            Err(Error::InvalidEpsilon { .. })
        ));
    }

    #[test]
    fn rejects_far_starting_point() {
        let t = ComplexMatrix::from_real_diagonal(&[1.0, 0.2]);
        let req = NuCorrectionRequest::new(t, UnitVector::basis(2, 1), 0.3, OperatorClass::General);
        assert!(matches!(
            nu_correct(&req),
            Err(Error::AlmostAttainmentViolated { .. })
        ));
    }

    #[test]
    fn threshold_per_class() {
        let t = ComplexMatrix::identity(2);
        let e1 = UnitVector::basis(2, 0);
        let mk = |c| NuCorrectionRequest::new(t.clone(), e1.clone(), 0.2, c).threshold();
        assert!((mk(OperatorClass::General) - (1.0 - 0.04 / 16.0)).abs() < 1e-15);
        assert!((mk(OperatorClass::Unitary) - 0.98).abs() < 1e-15);
        assert!((mk(OperatorClass::Normal) - 0.8).abs() < 1e-15);
    }
}
