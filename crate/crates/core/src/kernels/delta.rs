//! The functional `δ(C): ψ ↦ ½ ∫_C ψ dS/‖X‖`, computed on the cone chart and,
//! independently, as `lim (1/2πi) ∫ (1/(N − iε) − 1/(N + iε)) ψ dV`.
//!
//! The volume route uses `u = r1² − r2²`, `v = r1² + r2²` with
//! `r1 r2 dr1 dr2 = du dv / 8`. The `u`-profile has a kink at `u = 0`, so the
//! `ε`-expansion contains `ε ln ε` terms and the limit is fitted with a
//! log-augmented basis. The `ε ln ε` term makes the coarse ladder used for
//! the Fourier transforms too slow here; [`QuadratureSpec::delta_cone`]
//! provides a finer one.

use super::QuadratureSpec;
use crate::geometry::SplitQuaternion;
use crate::quadrature::{fit_limit, gauss_legendre, integrate, AdaptiveOptions, LimitModel};
use crate::summation::ComplexSum;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaConeOptions {
    /// `ψ` is treated as zero for `‖X‖ > radius`.
    pub radius: f64,
    /// Trapezoid nodes per angle.
    pub n_theta: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for DeltaConeOptions {
    fn default() -> Self {
        Self {
            radius: 6.0,
            n_theta: 12,
            rel_tol: 1e-5,
            abs_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaConeResult {
    pub surface: Complex64,
    pub volume: Complex64,
    pub volume_error: f64,
    pub ladder: Vec<(f64, Complex64)>,
    pub agree: bool,
}

/// `∬ ψ(r1 e(θ1), r2 e(θ2)) dθ1 dθ2` by the periodic trapezoid rule.
fn angular<F>(psi: &F, r1: f64, r2: f64, n: usize) -> Complex64
where
    F: Fn(&SplitQuaternion) -> Complex64,
{
    let h = 2.0 * PI / n as f64;
    let mut acc = ComplexSum::new();
    for i in 0..n {
        let (s1, c1) = (i as f64 * h).sin_cos();
        for j in 0..n {
            let (s2, c2) = (j as f64 * h).sin_cos();
            acc.add(psi(&SplitQuaternion::new(r1 * c1, r1 * s1, r2 * c2, r2 * s2)));
        }
    }
    acc.value() * (h * h)
}

fn gl_points(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = (f64, f64)> {
    let rule = gauss_legendre(n);
    let (m, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    (0..n).map(move |k| (m + h * rule.nodes[k], h * rule.weights[k]))
}

pub fn delta_cone_apply<F>(psi: F, opts: &DeltaConeOptions, spec: &QuadratureSpec) -> Result<DeltaConeResult>
where
    F: Fn(&SplitQuaternion) -> Complex64 + Sync,
{
    spec.validate()?;
    if !(opts.radius > 0.0) || opts.n_theta < 4 {
        return Err(Error::domain(
            "delta(C)",
            opts.radius,
            "radius > 0 and n_theta >= 4 required",
        ));
    }
    let nt = opts.n_theta;
    let rmax = opts.radius;
    let vmax = rmax * rmax;

    // Surface route: ∫ (r/2) ⟨ψ⟩(r, r) dr.
    let aopts = AdaptiveOptions::with_tol(opts.abs_tol * 1e-3, opts.rel_tol * 1e-3);
    let surface = integrate(
        |r: f64| angular(&psi, r, r, nt) * (0.5 * r),
        0.0,
        rmax / 2f64.sqrt(),
        aopts,
    )
    .value;

    // Volume route: h(u) = ∫_{|u|}^{vmax} ⟨ψ⟩ dv / 8 on a u-grid shared by
    // every ε, graded toward the kink at 0.
    let eps_min = *spec.epsilon_ladder.last().unwrap_or(&1.0);
    let mut breaks = vec![0.0, vmax];
    let mut d = 1.0;
    while d > 0.25 * eps_min {
        breaks.push(d);
        d *= 0.5;
    }
    breaks.push(d);
    let mut x = 2.0;
    while x < vmax {
        breaks.push(x);
        x += 2.0;
    }
    breaks.retain(|&b| b <= vmax);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut nodes: Vec<(f64, f64)> = Vec::new();
    for w in breaks.windows(2) {
        nodes.extend(gl_points(w[0], w[1], 16));
        nodes.extend(gl_points(-w[1], -w[0], 16));
    }
    let profile: Vec<Complex64> = nodes
        .par_iter()
        .map(|&(u, _)| {
            let lo = u.abs();
            let panels = ((vmax - lo) / 3.0).ceil().max(1.0) as usize;
            let h = (vmax - lo) / panels as f64;
            let mut acc = ComplexSum::new();
            for p in 0..panels {
                for (v, w) in gl_points(lo + p as f64 * h, lo + (p + 1) as f64 * h, 16) {
                    let r1 = (0.5 * (v + u)).max(0.0).sqrt();
                    let r2 = (0.5 * (v - u)).max(0.0).sqrt();
                    acc.add(angular(&psi, r1, r2, nt) * w);
                }
            }
            acc.value() / 8.0
        })
        .collect();
    let ladder: Vec<(f64, Complex64)> = spec
        .epsilon_ladder
        .iter()
        .map(|&eps| {
            let mut acc = ComplexSum::new();
            for (&(u, w), &h) in nodes.iter().zip(&profile) {
                acc.add(h * (w * eps / (u * u + eps * eps)));
            }
            (eps, acc.value() / PI)
        })
        .collect();
    let steps: Vec<f64> = ladder.iter().map(|p| p.0).collect();
    let vals: Vec<Complex64> = ladder.iter().map(|p| p.1).collect();
    let terms = (spec.extrapolation_order + 1).min(steps.len());
    let lim = fit_limit(&steps, &vals, LimitModel::KinkLog { terms });
    let scale = surface.norm().max(lim.value.norm());
    let agree = (surface - lim.value).norm() <= (opts.rel_tol * scale).max(opts.abs_tol);
    Ok(DeltaConeResult {
        surface,
        volume: lim.value,
        volume_error: lim.error,
        ladder,
        agree,
    })
}
