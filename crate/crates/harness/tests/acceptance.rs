//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every bound is recomputed here from its closed form and every quantity is
//! measured directly from `(T, x₀, S, x₁)`; certificates are only consulted
//! for intermediate values that are not observable from the output.

use std::process::ExitCode;
use std::time::Instant;

use bpb_core::linalg::{
    class_check, norm2, normality_defect, numerical_radius, operator_norm, schatten_norm,
    ComplexMatrix, OperatorClass, UnitVector, C64,
};
use bpb_core::nu_correct::nu_correct_any;
use bpb_core::{
    conjugate_transport, norm_correct, transitive_isometry, Correction, Mode,
    NormCorrectionRequest, NuCorrectionRequest,
};
use bpb_harness::generate::{gaussian_matrix, random_unit_vector, rng, trial_seed};
use bpb_harness::{
    brute_force_norm, brute_force_radius, gen_instance, Instance, DEFAULT_GRID_DENSITY,
};
use rayon::prelude::*;

const SEED: u64 = 0x5eed_2024;
const SLACK: f64 = 1e-9;
const NORM_EPS: [f64; 3] = [0.5, 0.2, 0.05];
const NORMAL_EPS: [f64; 3] = [0.3, 0.1, 0.03];

/// Failures and worst-case summary for one criterion.
struct Outcome {
    total: usize,
    failures: Vec<String>,
    detail: String,
}

/// Per-instance result: `Err` carries a description of the first violation.
type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn collect(results: Vec<Check>, detail: String) -> Outcome {
    let total = results.len();
    let failures = results.into_iter().filter_map(|r| r.err()).collect();
    Outcome {
        total,
        failures,
        detail,
    }
}

fn nu(t: &ComplexMatrix) -> f64 {
    numerical_radius(t, 1e-12).expect("numerical radius").value
}

fn attained_nu(s: &ComplexMatrix, x: &UnitVector) -> f64 {
    s.quadratic_form(x.as_slice()).norm()
}

fn attained_norm(s: &ComplexMatrix, x: &UnitVector) -> f64 {
    norm2(&s.mul_vec(x.as_slice()))
}

fn unitary_defect(s: &ComplexMatrix) -> f64 {
    (&s.adjoint().matmul(s) - &ComplexMatrix::identity(s.dim())).max_abs()
}

fn instance(
    class: OperatorClass,
    dim: usize,
    eps: f64,
    mode: Mode,
    seed: u64,
) -> Result<Instance, String> {
    gen_instance(class, dim, eps, mode, seed).map_err(|e| format!("generation failed: {e}"))
}

fn norm_run(
    inst: &Instance,
    class: OperatorClass,
    eps: f64,
    exact: bool,
) -> Result<Correction, String> {
    norm_correct(
        &NormCorrectionRequest::new(inst.t.clone(), inst.x0.clone(), eps, class)
            .with_exact_point(exact),
    )
    .map_err(|e| format!("corrector error {}: {e}", e.code()))
}

fn nu_run(
    inst: &Instance,
    class: OperatorClass,
    eps: f64,
    exact: bool,
    p: Option<f64>,
) -> Result<Correction, String> {
    let mut req = NuCorrectionRequest::new(inst.t.clone(), inst.x0.clone(), eps, class)
        .with_exact_point(exact);
    req.schatten_p = p;
    nu_correct_any(&req).map_err(|e| format!("corrector error {}: {e}", e.code()))
}

/// `(√(2ε), ∜(2ε))`.
fn roots(eps: f64) -> (f64, f64) {
    let s2 = (2.0 * eps).sqrt();
    (s2, s2.sqrt())
}

fn normal_op_bound(eps: f64) -> f64 {
    let (s2, s4) = roots(eps);
    (s2 + 2.0 * s4) / (1.0 - s2) + 2.0 * s2
}

fn max_of(v: impl Iterator<Item = f64>) -> f64 {
    v.fold(0.0, f64::max)
}

const NORM_CLASSES: [OperatorClass; 4] = [
    OperatorClass::Positive,
    OperatorClass::SelfAdjoint,
    OperatorClass::Normal,
    OperatorClass::General,
];

/// 500 instances per class, dims 2–30, ε cycling through {0.5, 0.2, 0.05}.
fn norm_cases() -> Vec<(OperatorClass, usize, f64, u64)> {
    let mut out = Vec::new();
    for (ci, &class) in NORM_CLASSES.iter().enumerate() {
        for k in 0..500u64 {
            out.push((
                class,
                2 + (k as usize % 29),
                NORM_EPS[k as usize % 3],
                trial_seed(SEED, 100 + ci as u64, k),
            ));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let results: Vec<(Check, f64)> = norm_cases()
        .into_par_iter()
        .map(|(class, dim, eps, seed)| {
            let run = || -> Result<f64, String> {
                let inst = instance(class, dim, eps, Mode::Norm, seed)?;
                let c = norm_run(&inst, class, eps, false)?;
                let (s, x1) = (&c.operator, &c.point);
                let dist = operator_norm(&(s - &inst.t));
                let tag = || format!("{class} dim {dim} ε {eps}");
                ensure((attained_norm(s, x1) - 1.0).abs() <= 1e-7, || {
                    format!("{}: ‖Sx₁‖ = {}", tag(), attained_norm(s, x1))
                })?;
                ensure(operator_norm(s) <= 1.0 + 1e-7, || {
                    format!("{}: ‖S‖ = {}", tag(), operator_norm(s))
                })?;
                ensure(dist < eps + SLACK, || format!("{}: ‖S−T‖ = {dist}", tag()))?;
                let pd = x1.distance(&inst.x0);
                ensure(pd < 4.0 * eps.sqrt(), || {
                    format!("{}: ‖x₀−x₁‖ = {pd}", tag())
                })?;
                ensure(class_check(s, class, 1e-8), || {
                    format!("{}: class lost", tag())
                })?;
                Ok(dist / eps)
            };
            match run() {
                Ok(r) => (Ok(()), r),
                Err(e) => (Err(e), 0.0),
            }
        })
        .collect();
    let worst = max_of(results.iter().map(|r| r.1));
    collect(
        results.into_iter().map(|r| r.0).collect(),
        format!("max ‖S−T‖/ε = {worst:.4}"),
    )
}

fn criterion_2() -> Outcome {
    let results: Vec<(Check, f64)> = norm_cases()
        .into_par_iter()
        .map(|(class, dim, eps, seed)| {
            let run = || -> Result<f64, String> {
                let inst = instance(class, dim, eps, Mode::Norm, seed)?;
                let c = norm_run(&inst, class, eps, true)?;
                let s = &c.operator;
                let dist = operator_norm(&(s - &inst.t));
                let tag = || format!("{class} dim {dim} ε {eps}");
                let at = attained_norm(s, &inst.x0);
                ensure((at - 1.0).abs() <= 1e-7, || {
                    format!("{}: ‖Sx₀‖ = {at}", tag())
                })?;
                ensure(operator_norm(s) <= 1.0 + 1e-7, || {
                    format!("{}: ‖S‖ = {}", tag(), operator_norm(s))
                })?;
                ensure(dist < 3.0 * eps + SLACK, || {
                    format!("{}: ‖S−T‖ = {dist} vs 3ε = {}", tag(), 3.0 * eps)
                })?;
                Ok(dist / eps)
            };
            match run() {
                Ok(r) => (Ok(()), r),
                Err(e) => (Err(e), 0.0),
            }
        })
        .collect();
    let worst = max_of(results.iter().map(|r| r.1));
    collect(
        results.into_iter().map(|r| r.0).collect(),
        format!("max ‖S−T‖/ε = {worst:.4}"),
    )
}

fn criterion_3() -> Outcome {
    const PS: [f64; 3] = [1.0, 2.0, 4.0];
    let results: Vec<(Check, f64)> = (0..200u64)
        .into_par_iter()
        .map(|k| {
            let p = PS[k as usize % 3];
            let eps = NORM_EPS[(k as usize / 3) % 3];
            let dim = 2 + (k as usize % 19);
            let class = OperatorClass::SchattenP(p);
            let run = || -> Result<f64, String> {
                let inst = instance(class, dim, eps, Mode::Norm, trial_seed(SEED, 300, k))?;
                let c = norm_run(&inst, class, eps, false)?;
                let s = &c.operator;
                let diff = s - &inst.t;
                let m = schatten_norm(&inst.t, p).map_err(|e| e.to_string())?;
                let bound = 2.0 * eps * m + (1.0 + 2.0 * eps) * m * 4.0 * eps.sqrt();
                let sp = schatten_norm(&diff, p).map_err(|e| e.to_string())?;
                let tag = || format!("p {p} dim {dim} ε {eps}");
                ensure(sp < bound + SLACK, || {
                    format!("{}: σ_p = {sp} vs {bound}", tag())
                })?;
                let s_inf = operator_norm(&diff);
                ensure(s_inf <= sp * (1.0 + 1e-12) + 1e-14, || {
                    format!("{}: σ_∞ = {s_inf} > σ_p = {sp}", tag())
                })?;
                let at = attained_norm(s, &inst.x0);
                ensure((at - 1.0).abs() <= 1e-7, || {
                    format!("{}: ‖Sx₀‖ = {at}", tag())
                })?;
                Ok(sp / bound)
            };
            match run() {
                Ok(r) => (Ok(()), r),
                Err(e) => (Err(e), 0.0),
            }
        })
        .collect();
    let worst = max_of(results.iter().map(|r| r.1));
    collect(
        results.into_iter().map(|r| r.0).collect(),
        format!("max σ_p/bound = {worst:.4}"),
    )
}

fn criterion_4() -> Outcome {
    let class = OperatorClass::Unitary;
    let results: Vec<(Check, f64)> = (0..500u64)
        .into_par_iter()
        .map(|k| {
            let eps = NORM_EPS[k as usize % 3];
            let dim = 2 + (k as usize % 15);
            let run = || -> Result<f64, String> {
                let inst = instance(class, dim, eps, Mode::Nu, trial_seed(SEED, 400, k))?;
                let c = nu_run(&inst, class, eps, false, None)?;
                let s = &c.operator;
                let tag = || format!("dim {dim} ε {eps}");
                let at = attained_nu(s, &inst.x0);
                ensure((at - 1.0).abs() <= 1e-10, || {
                    format!("{}: |⟨Sx₀,x₀⟩| = {at}", tag())
                })?;
                let dist = operator_norm(&(s - &inst.t));
                ensure(dist < eps + SLACK, || format!("{}: ‖S−T‖ = {dist}", tag()))?;
                let ud = unitary_defect(s);
                ensure(ud <= 1e-9, || format!("{}: ‖S*S − I‖ = {ud}", tag()))?;
                Ok(dist / eps)
            };
            match run() {
                Ok(r) => (Ok(()), r),
                Err(e) => (Err(e), 0.0),
            }
        })
        .collect();
    let worst = max_of(results.iter().map(|r| r.1));
    collect(
        results.into_iter().map(|r| r.0).collect(),
        format!("max ‖S−T‖/ε = {worst:.4}"),
    )
}

fn criterion_5() -> Outcome {
    let class = OperatorClass::SelfAdjoint;
    let results: Vec<(Check, f64)> = (0..500u64)
        .into_par_iter()
        .map(|k| {
            let eps = NORM_EPS[k as usize % 3];
            let dim = 2 + (k as usize % 15);
            let run = || -> Result<f64, String> {
                let inst = instance(class, dim, eps, Mode::Nu, trial_seed(SEED, 500, k))?;
                let c = nu_run(&inst, class, eps, false, None)?;
                let (s, x1) = (&c.operator, &c.point);
                let tag = || format!("dim {dim} ε {eps}");
                ensure(class_check(s, class, 1e-8), || {
                    format!("{}: S not self-adjoint", tag())
                })?;
                let v = nu(s);
                let at = attained_nu(s, x1);
                ensure((v - 1.0).abs() <= 2e-3 && (at - 1.0).abs() <= 2e-3, || {
                    format!("{}: ν(S) = {v}, |⟨Sx₁,x₁⟩| = {at}", tag())
                })?;
                let dist = operator_norm(&(s - &inst.t));
                ensure(dist < 9.0 * eps + SLACK, || {
                    format!("{}: ‖S−T‖ = {dist}", tag())
                })?;
                let pd = x1.distance(&inst.x0);
                ensure(pd < eps + SLACK, || format!("{}: ‖x₁−x₀‖ = {pd}", tag()))?;
                let chain = c
                    .certificate
                    .checks
                    .iter()
                    .find(|b| b.name == "|e^{iθ} − 1|")
                    .ok_or_else(|| format!("{}: phase chain not recorded", tag()))?;
                ensure(chain.measured < 4.0 * eps, || {
                    format!("{}: |e^(iθ)−1| = {}", tag(), chain.measured)
                })?;
                Ok(dist / (9.0 * eps))
            };
            match run() {
                Ok(r) => (Ok(()), r),
                Err(e) => (Err(e), 0.0),
            }
        })
        .collect();
    let worst = max_of(results.iter().map(|r| r.1));
    collect(
        results.into_iter().map(|r| r.0).collect(),
        format!("max ‖S−T‖/9ε = {worst:.4}"),
    )
}

fn criterion_6() -> Outcome {
    let class = OperatorClass::Normal;
    let results: Vec<(Check, f64)> = (0..300u64)
        .into_par_iter()
        .map(|k| {
            let eps = NORMAL_EPS[k as usize % 3];
            let dim = 2 + (k as usize % 15);
            let run = || -> Result<f64, String> {
                let inst = instance(class, dim, eps, Mode::Nu, trial_seed(SEED, 600, k))?;
                let c = nu_run(&inst, class, eps, false, None)?;
                let (s, x1) = (&c.operator, &c.point);
                let (s2, s4) = roots(eps);
                let tag = || format!("dim {dim} ε {eps}");
                let pd = x1.distance(&inst.x0);
                ensure(pd <= s2 + s4 + SLACK, || {
                    format!("{}: ‖x_ε−x₀‖ = {pd}", tag())
                })?;
                let dist = operator_norm(&(s - &inst.t));
                let bound = normal_op_bound(eps);
                ensure(dist <= bound + SLACK, || {
                    format!("{}: ‖S−T‖ = {dist} vs {bound}", tag())
                })?;
                let nd = normality_defect(s);
                ensure(nd <= 1e-8, || format!("{}: ‖SS*−S*S‖ = {nd}", tag()))?;
                let n = operator_norm(s);
                ensure(n <= 1.0 + 1e-9, || format!("{}: ‖S‖ = {n}", tag()))?;
                let v = nu(s);
                let at = attained_nu(s, x1);
                ensure((v - 1.0).abs() <= 2e-3 && (at - 1.0).abs() <= 2e-3, || {
                    format!("{}: ν(S) = {v}, |⟨Sx_ε,x_ε⟩| = {at}", tag())
                })?;
                Ok(dist / bound)
            };
            match run() {
                Ok(r) => (Ok(()), r),
                Err(e) => (Err(e), 0.0),
            }
        })
        .collect();
    let worst = max_of(results.iter().map(|r| r.1));
    collect(
        results.into_iter().map(|r| r.0).collect(),
        format!("max ‖S−T‖/bound = {worst:.4}"),
    )
}

fn criterion_7() -> Outcome {
    let class = OperatorClass::Normal;
    let results: Vec<(Check, f64)> = (0..100u64)
        .into_par_iter()
        .map(|k| {
            let p = if k % 2 == 0 { 1.0 } else { 2.0 };
            let eps = NORMAL_EPS[(k as usize / 2) % 3];
            let dim = 2 + (k as usize % 13);
            let run = || -> Result<f64, String> {
                let inst = instance(class, dim, eps, Mode::Nu, trial_seed(SEED, 700, k))?;
                let c = nu_run(&inst, class, eps, false, Some(p))?;
                let (s2, s4) = roots(eps);
                let m = schatten_norm(&inst.t, p).map_err(|e| e.to_string())?;
                let bound =
                    ((s2 + 2.0 * s4) / (1.0 - s2) + s2) * m / (1.0 - s2) + m * s2 / (1.0 - s2);
                let sp = schatten_norm(&(&c.operator - &inst.t), p).map_err(|e| e.to_string())?;
                ensure(sp <= bound + SLACK, || {
                    format!("p {p} dim {dim} ε {eps}: σ_p = {sp} vs {bound}")
                })?;
                Ok(sp / bound)
            };
            match run() {
                Ok(r) => (Ok(()), r),
                Err(e) => (Err(e), 0.0),
            }
        })
        .collect();
    let worst = max_of(results.iter().map(|r| r.1));
    collect(
        results.into_iter().map(|r| r.0).collect(),
        format!("max σ_p/bound = {worst:.4}"),
    )
}

/// Composed ν bound: the base corrector's bound plus `4‖x₀ − x₁‖` for the
/// transfer, with the base point distance at its own bound.
fn nu_transfer_bound(class: OperatorClass, eps: f64) -> f64 {
    match class {
        OperatorClass::Unitary => eps,
        OperatorClass::SelfAdjoint => 9.0 * eps + 4.0 * eps,
        OperatorClass::Normal => {
            let (s2, s4) = roots(eps);
            normal_op_bound(eps) + 4.0 * (s2 + s4)
        }
        _ => 5.0 * eps,
    }
}

fn criterion_8() -> Outcome {
    const CLASSES: [OperatorClass; 5] = [
        OperatorClass::General,
        OperatorClass::Positive,
        OperatorClass::SelfAdjoint,
        OperatorClass::Normal,
        OperatorClass::Unitary,
    ];
    let cases: Vec<(OperatorClass, u64)> = CLASSES
        .iter()
        .flat_map(|&c| (0..100u64).map(move |k| (c, k)))
        .collect();
    let results: Vec<(Check, f64)> = cases
        .into_par_iter()
        .map(|(class, k)| {
            let eps = if class == OperatorClass::Normal {
                NORMAL_EPS[k as usize % 3]
            } else {
                NORM_EPS[k as usize % 3]
            };
            let dim = 2 + (k as usize % 11);
            let run = || -> Result<f64, String> {
                let seed = trial_seed(
                    SEED,
                    800 + CLASSES.iter().position(|&c| c == class).unwrap() as u64,
                    k,
                );
                let inst = instance(class, dim, eps, Mode::Nu, seed)?;
                let c = nu_run(&inst, class, eps, true, None)?;
                let s = &c.operator;
                let tag = || format!("{class} dim {dim} ε {eps}");
                let at = attained_nu(s, &inst.x0);
                let v = nu(s);
                ensure((at - 1.0).abs() <= 1e-6 && (v - 1.0).abs() <= 1e-6, || {
                    format!("{}: ν(S) = {v}, |⟨Sx₀,x₀⟩| = {at}", tag())
                })?;
                let dist = operator_norm(&(s - &inst.t));
                let bound = nu_transfer_bound(class, eps);
                ensure(dist < bound + SLACK, || {
                    format!("{}: ‖S−T‖ = {dist} vs {bound}", tag())
                })?;
                Ok(dist / bound)
            };
            match run() {
                Ok(r) => (Ok(()), r),
                Err(e) => (Err(e), 0.0),
            }
        })
        .collect();
    let worst = max_of(results.iter().map(|r| r.1));
    collect(
        results.into_iter().map(|r| r.0).collect(),
        format!("max ‖S−T‖/bound = {worst:.4}"),
    )
}

fn criterion_9() -> Outcome {
    let results: Vec<Check> = (0..10_000u64)
        .into_par_iter()
        .map(|k| {
            let dim = 2 + (k as usize % 19);
            let mut g = rng(trial_seed(SEED, 900, k));
            let x = random_unit_vector(&mut g, dim);
            let y = match k % 50 {
                0 => x.rotate_phase(C64::from_polar(1.0, 2.0)),
                1 => x.rotate_phase(C64::new(-1.0, 0.0)),
                2 => x.clone(),
                _ => random_unit_vector(&mut g, dim),
            };
            let raw = gaussian_matrix(&mut g, dim);
            let t = raw.scale_real(1.0 / operator_norm(&raw));
            let tag = || format!("dim {dim} case {k}");
            let r = transitive_isometry(&x, &y).map_err(|e| format!("{}: {e}", tag()))?;
            let rx: Vec<C64> = r.mul_vec(x.as_slice());
            let miss = bpb_core::linalg::distance(&rx, y.as_slice());
            ensure(miss <= 1e-10, || format!("{}: ‖Rx−y‖ = {miss}", tag()))?;
            let xy = x.distance(&y);
            let gap = (operator_norm(&(&r - &ComplexMatrix::identity(dim))) - xy).abs();
            ensure(gap <= 1e-8, || format!("{}: |‖R−Id‖−‖x−y‖| = {gap}", tag()))?;
            let rt = conjugate_transport(&t, &x, &y).map_err(|e| format!("{}: {e}", tag()))?;
            let moved = operator_norm(&(&rt - &t));
            ensure(moved <= 2.0 * xy * operator_norm(&t) + 1e-8, || {
                format!("{}: ‖ℛ(T)−T‖ = {moved}", tag())
            })?;
            let dn = (operator_norm(&rt) - operator_norm(&t)).abs();
            let dnu = (nu(&rt) - nu(&t)).abs();
            ensure(dn <= 1e-10 && dnu <= 1e-9, || {
                format!("{}: norm drift {dn}, ν drift {dnu}", tag())
            })
        })
        .collect();
    collect(results, "isometry, transport and invariance checks".into())
}

fn criterion_10() -> Outcome {
    let radius_norm: Vec<Check> = (0..1000u64)
        .into_par_iter()
        .map(|k| {
            let dim = 2 + (k as usize % 19);
            let mut g = rng(trial_seed(SEED, 1000, k));
            let mut t = gaussian_matrix(&mut g, dim);
            if k % 10 == 0 {
                t = ComplexMatrix::from_fn(dim, |i, j| {
                    if j == i + 1 {
                        t[(i, j)]
                    } else {
                        C64::new(0.0, 0.0)
                    }
                });
            }
            let n = operator_norm(&t);
            let v = nu(&t);
            ensure(
                n <= 2.0 * v * (1.0 + 1e-12) && v <= n * (1.0 + 1e-12),
                || format!("dim {dim}: ‖T‖ = {n}, ν = {v}"),
            )
        })
        .collect();
    let schatten: Vec<Check> = (0..1000u64)
        .into_par_iter()
        .map(|k| {
            const PS: [f64; 4] = [1.5, 2.0, 3.0, 4.0];
            let dim = 2 + (k as usize % 11);
            let mut g = rng(trial_seed(SEED, 1001, k));
            let a = gaussian_matrix(&mut g, dim);
            let b = gaussian_matrix(&mut g, dim);
            let p = PS[k as usize % 4];
            let q = p / (p - 1.0);
            let sn = |m: &ComplexMatrix, r: f64| schatten_norm(m, r).expect("schatten norm");
            let lhs = sn(&a.matmul(&b), 1.0);
            let rhs = sn(&a, p) * sn(&b, q);
            ensure(lhs <= rhs * (1.0 + 1e-12), || {
                format!("Hölder p {p}: {lhs} > {rhs}")
            })?;
            let chain = [sn(&a, 1.0), sn(&a, 2.0), sn(&a, 4.0), operator_norm(&a)];
            ensure(
                chain.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)),
                || format!("monotonicity: {chain:?}"),
            )
        })
        .collect();
    let oracle: Vec<(Check, f64)> = (0..200u64)
        .into_par_iter()
        .map(|k| {
            let dim = 2 + (k as usize % 2);
            let mut g = rng(trial_seed(SEED, 1002, k));
            let t = gaussian_matrix(&mut g, dim);
            let bn = brute_force_norm(&t, DEFAULT_GRID_DENSITY).expect("oracle");
            let br = brute_force_radius(&t, DEFAULT_GRID_DENSITY).expect("oracle");
            let dn = (operator_norm(&t) - bn).abs();
            let dr = (nu(&t) - br).abs();
            (
                ensure(dn <= 1e-3 && dr <= 1e-3, || {
                    format!("dim {dim}: norm gap {dn}, ν gap {dr}")
                }),
                dn.max(dr),
            )
        })
        .collect();
    let worst = max_of(oracle.iter().map(|r| r.1));
    let mut all = radius_norm;
    all.extend(schatten);
    all.extend(oracle.into_iter().map(|r| r.0));
    collect(all, format!("max oracle gap = {worst:.2e}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "norm correctors (positive, self-adjoint, normal, general)",
            criterion_1,
        ),
        ("norm correction attaining at x0", criterion_2),
        ("schatten norm estimate", criterion_3),
        ("unitary nu corrector", criterion_4),
        ("self-adjoint nu corrector", criterion_5),
        ("normal nu corrector", criterion_6),
        ("normal schatten nu estimate", criterion_7),
        ("nu correction attaining at x0", criterion_8),
        ("transitive isometry and transport", criterion_9),
        (
            "norm, radius, schatten and oracle foundations",
            criterion_10,
        ),
    ];
    let filter: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let suite = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let status = if o.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {id:>2} {status}: {name}: {}/{} ok, {} [{secs:.1}s]",
            o.total - o.failures.len(),
            o.total,
            o.detail
        );
        for f in o.failures.iter().take(5) {
            println!("    {f}");
        }
        if !o.failures.is_empty() {
            failed += 1;
        }
    }
    println!(
        "acceptance: {failed} criteria failed [{:.1}s]",
        suite.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
