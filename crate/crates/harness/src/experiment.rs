//! Sweeps over `(class, dim, ε)` cells with independently seeded trials.

use std::time::Instant;

use bpb_core::linalg::OperatorClass;
use bpb_core::{
    norm_correct, nu_correct::nu_correct_any, Correction, Mode, NormCorrectionRequest,
    NuCorrectionRequest,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::generate::{gen_instance, trial_seed, Instance};
use crate::verify::{verify, Subject};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub classes: Vec<OperatorClass>,
    pub dims: Vec<usize>,
    pub epsilons: Vec<f64>,
    pub trials_per_cell: usize,
    pub seed: u64,
    pub mode: Mode,
    #[serde(default)]
    pub exact_point: bool,
    #[serde(default)]
    pub schatten_p: Option<f64>,
    /// Wall time is reported as 0 unless set, keeping reports reproducible.
    #[serde(default)]
    pub record_timing: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.trials_per_cell == 0 {
            return bad("trials_per_cell must be at least 1".into());
        }
        if self.classes.is_empty() || self.dims.is_empty() || self.epsilons.is_empty() {
            return bad("classes, dims and epsilons must be non-empty".into());
        }
        if let Some(d) = self.dims.iter().find(|&&d| d < 2) {
            return bad(format!("dimension {d} is below 2"));
        }
        for &eps in &self.epsilons {
            if !(eps > 0.0 && eps < 1.0) {
                return bad(format!("epsilon {eps} is outside (0, 1)"));
            }
            if self.mode == Mode::Nu && self.classes.contains(&OperatorClass::Normal) && eps >= 0.5
            {
                return bad(format!(
                    "epsilon {eps} must be below 1/2 for normal operators in nu mode"
                ));
            }
        }
        if let Some(p) = self.schatten_p {
            if p.is_nan() || p < 1.0 {
                return bad(format!("schatten_p {p} must be at least 1"));
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn cells(&self) -> Vec<(OperatorClass, usize, f64)> {
        let mut out = Vec::new();
        for &class in &self.classes {
            for &dim in &self.dims {
                for &eps in &self.epsilons {
                    out.push((class, dim, eps));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub mode: Mode,
    pub class: OperatorClass,
    pub dim: usize,
    pub epsilon: f64,
    pub trials: usize,
    pub pass: usize,
    pub fail: usize,
    pub max_residual: f64,
    pub max_bound_ratio: f64,
    pub ms: u64,
    /// Largest theoretical bound on `‖S − T‖` among the trials.
    pub theoretical_bound: f64,
    pub max_distance: f64,
    pub failures: Vec<TrialFailure>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn total_failures(&self) -> usize {
        self.rows.iter().map(|r| r.fail).sum()
    }
}

/// Outcome of one generated instance.
#[derive(Clone, Debug)]
pub struct Trial {
    pub instance: Option<Instance>,
    pub correction: Option<Correction>,
    pub failure: Option<String>,
}

pub fn correct(
    mode: Mode,
    class: OperatorClass,
    epsilon: f64,
    exact_point: bool,
    schatten_p: Option<f64>,
    inst: &Instance,
) -> bpb_core::Result<Correction> {
    match mode {
        Mode::Norm => {
            let mut req =
                NormCorrectionRequest::new(inst.t.clone(), inst.x0.clone(), epsilon, class)
                    .with_exact_point(exact_point);
            req.schatten_p = schatten_p;
            if schatten_p.is_some() && class.schatten_exponent().is_none() {
                bpb_core::norm_correct_schatten(&req)
            } else {
                norm_correct(&req)
            }
        }
        Mode::Nu => {
            let mut req = NuCorrectionRequest::new(inst.t.clone(), inst.x0.clone(), epsilon, class)
                .with_exact_point(exact_point);
            req.schatten_p = schatten_p;
            nu_correct_any(&req)
        }
    }
}

/// Generates, corrects and independently verifies one instance.
pub fn run_trial(
    cfg: &ExperimentConfig,
    class: OperatorClass,
    dim: usize,
    epsilon: f64,
    seed: u64,
) -> Trial {
    let inst = match gen_instance(class, dim, epsilon, cfg.mode, seed) {
        Ok(i) => i,
        Err(e) => {
            return Trial {
                instance: None,
                correction: None,
                failure: Some(format!("generation:{e}")),
            }
        }
    };
    let c = match correct(
        cfg.mode,
        class,
        epsilon,
        cfg.exact_point,
        cfg.schatten_p,
        &inst,
    ) {
        Ok(c) => c,
        Err(e) => {
            return Trial {
                instance: Some(inst),
                correction: None,
                failure: Some(e.code().to_string()),
            }
        }
    };
    let verdict = verify(&Subject {
        mode: cfg.mode,
        class,
        epsilon,
        t: &inst.t,
        x0: &inst.x0,
        s: &c.operator,
        x1: &c.point,
        certificate: &c.certificate,
    });
    let mut failure = match verdict {
        Ok(v) => v.reason(),
        Err(e) => Some(format!("verification:{e}")),
    };
    if failure.is_none() && !c.certificate.is_valid() {
        failure = c
            .certificate
            .failed_checks()
            .first()
            .map(|b| format!("check-failed:{}", b.name.replace(' ', "-")));
        failure.get_or_insert_with(|| "class-not-preserved".into());
    }
    if failure.is_none() && cfg.exact_point && c.point.distance(&inst.x0) > 0.0 {
        failure = Some("check-failed:exact-point".into());
    }
    Trial {
        instance: Some(inst),
        correction: Some(c),
        failure,
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for (cell, (class, dim, eps)) in cfg.cells().into_iter().enumerate() {
        let start = Instant::now();
        let trials: Vec<(u64, Trial)> = (0..cfg.trials_per_cell)
            .into_par_iter()
            .map(|k| {
                let seed = trial_seed(cfg.seed, cell as u64, k as u64);
                (seed, run_trial(cfg, class, dim, eps, seed))
            })
            .collect();
        let mut row = ReportRow {
            mode: cfg.mode,
            class,
            dim,
            epsilon: eps,
            trials: cfg.trials_per_cell,
            pass: 0,
            fail: 0,
            max_residual: 0.0,
            max_bound_ratio: 0.0,
            ms: 0,
            theoretical_bound: 0.0,
            max_distance: 0.0,
            failures: Vec::new(),
        };
        for (k, (seed, trial)) in trials.into_iter().enumerate() {
            if let Some(c) = &trial.correction {
                let cert = &c.certificate;
                row.max_residual = row.max_residual.max(cert.attainment_residual);
                if cert.bound_ratio().is_finite() {
                    row.max_bound_ratio = row.max_bound_ratio.max(cert.bound_ratio());
                }
                row.theoretical_bound = row.theoretical_bound.max(cert.theoretical_bound);
                row.max_distance = row.max_distance.max(cert.op_distance);
            }
            match trial.failure {
                None => row.pass += 1,
                Some(reason) => {
                    row.fail += 1;
                    row.failures.push(TrialFailure {
                        trial: k,
                        seed,
                        reason,
                    });
                }
            }
        }
        if cfg.record_timing {
            row.ms = start.elapsed().as_millis() as u64;
        }
        rows.push(row);
    }
    Ok(Report { rows })
}
