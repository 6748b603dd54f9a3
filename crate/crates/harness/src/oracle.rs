//! Brute-force maximization over the unit sphere, for cross-checking the
//! spectral norm and numerical-radius solvers in dimensions 2 and 3.

use std::f64::consts::{FRAC_PI_2, PI};

use bpb_core::linalg::{norm2, ComplexMatrix, C64};

use crate::error::{HarnessError, Result};

pub const DEFAULT_GRID_DENSITY: usize = 1000;
pub const MAX_ORACLE_DIM: usize = 3;

/// `max ‖Tx‖` over a sphere grid plus local refinement.
pub fn brute_force_norm(t: &ComplexMatrix, grid_density: usize) -> Result<f64> {
    brute_force(t, grid_density, |x| norm2(&t.mul_vec(x)))
}

/// `max |⟨Tx, x⟩|` over a sphere grid plus local refinement.
pub fn brute_force_radius(t: &ComplexMatrix, grid_density: usize) -> Result<f64> {
    brute_force(t, grid_density, |x| t.quadratic_form(x).norm())
}

/// Sphere point from angles; the global phase is quotiented out.
fn point(params: &[f64]) -> Vec<C64> {
    match params.len() {
        2 => {
            let (psi, phi) = (params[0], params[1]);
            vec![C64::new(psi.cos(), 0.0), C64::from_polar(psi.sin(), phi)]
        }
        4 => {
            let (a, b, p1, p2) = (params[0], params[1], params[2], params[3]);
            vec![
                C64::new(a.cos(), 0.0),
                C64::from_polar(a.sin() * b.cos(), p1),
                C64::from_polar(a.sin() * b.sin(), p2),
            ]
        }
        _ => unreachable!("sphere parametrizations exist for dimensions 2 and 3"),
    }
}

fn radical_inverse(mut i: usize, base: usize) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    while i > 0 {
        out += (i % base) as f64 * inv;
        i /= base;
        inv /= base as f64;
    }
    out
}

fn brute_force(t: &ComplexMatrix, density: usize, f: impl Fn(&[C64]) -> f64) -> Result<f64> {
    let n = t.dim();
    if n > MAX_ORACLE_DIM {
        return Err(HarnessError::DimTooLarge(n));
    }
    if n == 1 {
        return Ok(f(&[C64::new(1.0, 0.0)]));
    }
    let density = density.max(4);
    let g = |p: &[f64]| f(&point(p));
    let mut best = (f64::NEG_INFINITY, Vec::new());
    let step;
    if n == 2 {
        for k in 0..=density {
            let psi = FRAC_PI_2 * k as f64 / density as f64;
            for l in 0..density {
                let phi = 2.0 * PI * l as f64 / density as f64;
                let p = [psi, phi];
                let v = g(&p);
                if v > best.0 {
                    best = (v, p.to_vec());
                }
            }
        }
        step = 2.0 * PI / density as f64;
    } else {
        for i in 1..=density * density {
            let p = [
                FRAC_PI_2 * radical_inverse(i, 2),
                FRAC_PI_2 * radical_inverse(i, 3),
                2.0 * PI * radical_inverse(i, 5),
                2.0 * PI * radical_inverse(i, 7),
            ];
            let v = g(&p);
            if v > best.0 {
                best = (v, p.to_vec());
            }
        }
        step = 2.0 * PI / (density as f64).sqrt();
    }
    Ok(compass_search(&g, best.1, best.0, step))
}

/// Coordinate pattern search; halves the step whenever no move improves.
fn compass_search(
    g: &impl Fn(&[f64]) -> f64,
    mut p: Vec<f64>,
    mut value: f64,
    mut step: f64,
) -> f64 {
    let mut evaluations = 0;
    while step > 1e-12 && evaluations < 200_000 {
        let mut improved = false;
        for k in 0..p.len() {
            for sign in [1.0, -1.0] {
                let mut q = p.clone();
                q[k] += sign * step;
                let v = g(&q);
                evaluations += 1;
                if v > value {
                    value = v;
                    p = q;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    value
}
