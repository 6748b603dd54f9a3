//! Re-checks a correction from its inputs and outputs alone, without trusting
//! the measurements recorded in the certificate.

use bpb_core::io::CorrectionRecord;
use bpb_core::linalg::{
    class_check, default_class_tolerance, norm2, numerical_radius, operator_norm, schatten_norm,
    ComplexMatrix, OperatorClass, UnitVector,
};
use bpb_core::{BoundCheck, CorrectionCertificate, Mode};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generate::threshold;

/// Recorded measurements may differ from recomputed ones by at most this.
pub const CONSISTENCY_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub checks: Vec<BoundCheck>,
    pub class_preserved: bool,
    /// Measurements in the certificate that disagree with recomputation.
    pub inconsistencies: Vec<String>,
}

impl Verification {
    pub fn failures(&self) -> Vec<&BoundCheck> {
        self.checks.iter().filter(|c| !c.holds()).collect()
    }

    pub fn passed(&self) -> bool {
        self.class_preserved && self.inconsistencies.is_empty() && self.failures().is_empty()
    }

    /// Machine-readable reason for the first failure, if any.
    pub fn reason(&self) -> Option<String> {
        if let Some(c) = self.failures().first() {
            return Some(format!("check-failed:{}", c.name.replace(' ', "-")));
        }
        if !self.class_preserved {
            return Some("class-not-preserved".into());
        }
        self.inconsistencies
            .first()
            .map(|s| format!("inconsistent:{}", s.replace(' ', "-")))
    }
}

/// The pieces of a correction that verification looks at.
pub struct Subject<'a> {
    pub mode: Mode,
    pub class: OperatorClass,
    pub epsilon: f64,
    pub t: &'a ComplexMatrix,
    pub x0: &'a UnitVector,
    pub s: &'a ComplexMatrix,
    pub x1: &'a UnitVector,
    pub certificate: &'a CorrectionCertificate,
}

fn attained(mode: Mode, t: &ComplexMatrix, x: &UnitVector) -> f64 {
    match mode {
        Mode::Norm => norm2(&t.mul_vec(x.as_slice())),
        Mode::Nu => t.quadratic_form(x.as_slice()).norm(),
    }
}

fn size(mode: Mode, t: &ComplexMatrix) -> Result<f64> {
    Ok(match mode {
        Mode::Norm => operator_norm(t),
        Mode::Nu => numerical_radius(t, 1e-12)?.value,
    })
}

pub fn verify(sub: &Subject) -> Result<Verification> {
    let cert = sub.certificate;
    let mut inconsistencies = Vec::new();
    if cert.mode != sub.mode {
        inconsistencies.push("mode".to_string());
    }
    if cert.class != sub.class {
        inconsistencies.push("class".to_string());
    }
    if cert.epsilon != sub.epsilon {
        inconsistencies.push("epsilon".to_string());
    }

    let allowed = threshold(sub.mode, sub.class, sub.epsilon);
    let input_deficit = (allowed - attained(sub.mode, sub.t, sub.x0)).max(0.0);
    let input_scale = (size(sub.mode, sub.t)? - 1.0).abs();

    let diff = sub.s - sub.t;
    let op_distance = operator_norm(&diff);
    let point_distance = sub.x1.distance(sub.x0);
    let residual = (size(sub.mode, sub.s)? - 1.0)
        .abs()
        .max((attained(sub.mode, sub.s, sub.x1) - 1.0).abs());

    let mut checks = vec![
        BoundCheck::new("input normalization", input_scale, 1e-6),
        BoundCheck::new("input almost attainment", input_deficit, 0.0),
        BoundCheck::new("operator distance", op_distance, cert.theoretical_bound),
        BoundCheck::new("point distance", point_distance, cert.point_bound),
        BoundCheck::new("attainment residual", residual, cert.attainment_tolerance),
    ];
    if let Some(sd) = cert.schatten_distance {
        let value = schatten_norm(&diff, sd.p)?;
        checks.push(BoundCheck::new(
            format!("schatten-{} distance", sd.p),
            value,
            sd.bound,
        ));
        if (value - sd.value).abs() > CONSISTENCY_TOL * (1.0 + value) {
            inconsistencies.push("schatten distance".into());
        }
        checks.push(BoundCheck::new(
            "operator norm below schatten norm",
            op_distance,
            value,
        ));
    }
    for (name, recorded, measured) in [
        ("operator distance", cert.op_distance, op_distance),
        ("point distance", cert.point_distance, point_distance),
    ] {
        if (recorded - measured).abs() > CONSISTENCY_TOL {
            inconsistencies.push(name.into());
        }
    }
    let class_preserved = class_check(sub.s, sub.class, default_class_tolerance(sub.s));
    if class_preserved != cert.class_preserved {
        inconsistencies.push("class preserved".into());
    }
    Ok(Verification {
        checks,
        class_preserved,
        inconsistencies,
    })
}

pub fn verify_record(rec: &CorrectionRecord) -> Result<Verification> {
    let mut v = verify(&Subject {
        mode: rec.mode,
        class: rec.class,
        epsilon: rec.epsilon,
        t: &rec.t,
        x0: &rec.x0,
        s: &rec.s,
        x1: &rec.x1,
        certificate: &rec.certificate,
    })?;
    if rec.exact_point {
        v.checks.push(BoundCheck::new(
            "exact point",
            rec.x1.distance(&rec.x0),
            0.0,
        ));
    }
    Ok(v)
}
