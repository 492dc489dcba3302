//! Integrals of the form `∫ a(t) trig(φ(t)) dt` over a half line on which the
//! phase `φ` is monotone and unbounded.
//!
//! The half line is cut at the successive zeros of `trig(φ(t))`, each cycle is
//! integrated with adaptive Gauss–Kronrod in the original variable, and the
//! resulting (asymptotically alternating) partial sums are accelerated with
//! the Wynn epsilon algorithm. Panels are generated sequentially, so the
//! result is independent of any outer parallelism.

use super::{integrate, wynn_epsilon, AdaptiveOptions, Estimate};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

impl Trig {
    #[inline]
    pub fn eval(self, x: f64) -> f64 {
        match self {
            Trig::Cos => x.cos(),
            Trig::Sin => x.sin(),
        }
    }

    fn zero_offset(self) -> f64 {
        match self {
            Trig::Cos => FRAC_PI_2,
            Trig::Sin => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OscOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub min_cycles: usize,
    pub max_cycles: usize,
}

impl Default for OscOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            min_cycles: 8,
            max_cycles: 600,
        }
    }
}

/// Solve `φ(t) = target` for `t > lo`, where `φ` is monotone with direction
/// `dir` beyond `lo` and `φ(lo)` lies on the near side of `target`.
fn solve_phase(phi: &impl Fn(f64) -> f64, dphi: &impl Fn(f64) -> f64, lo: f64, target: f64, dir: f64) -> Result<f64> {
    let g = |t: f64| dir * (phi(t) - target);
    let mut a = lo;
    let slope = dphi(lo).abs();
    let mut step = if slope > 1e-8 {
        ((target - phi(lo)).abs() / slope).clamp(1e-12, 1.0)
    } else {
        1.0
    };
    let mut b = a + step;
    let mut guard = 0;
    while g(b) < 0.0 {
        a = b;
        step *= 2.0;
        b = a + step;
        guard += 1;
        if guard > 200 || !b.is_finite() {
            return Err(Error::no_convergence("phase root bracket", format!("target {target}")));
        }
    }
    // Safeguarded Newton inside [a, b].
    let mut t = 0.5 * (a + b);
    for _ in 0..200 {
        let gt = g(t);
        if gt == 0.0 {
            return Ok(t);
        }
        if gt < 0.0 {
            a = t;
        } else {
            b = t;
        }
        let d = dir * dphi(t);
        let mut next = if d > 0.0 { t - gt / d } else { f64::NAN };
        if !(next > a && next < b) {
            next = 0.5 * (a + b);
        }
        if (next - t).abs() <= 4.0 * f64::EPSILON * t.abs().max(1.0) || b - a <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
            return Ok(next);
        }
        t = next;
    }
    Ok(t)
}

/// `∫_{t0}^{∞} amp(t)·trig(φ(t)) dt` with `φ` monotone on `[t0, ∞)`.
pub fn trig_half_line(
    amp: impl Fn(f64) -> f64,
    phi: impl Fn(f64) -> f64,
    dphi: impl Fn(f64) -> f64,
    t0: f64,
    trig: Trig,
    opts: OscOptions,
) -> Result<Estimate<f64>> {
    let phi0 = phi(t0);
    let probe = phi(t0 + 1.0) - phi0;
    let dir = if probe >= 0.0 { 1.0 } else { -1.0 };
    let off = trig.zero_offset();
    // Index of the first zero strictly beyond φ(t0) in the direction of growth.
    let mut m = if dir > 0.0 {
        ((phi0 - off) / PI).floor() + 1.0
    } else {
        ((phi0 - off) / PI).ceil() - 1.0
    };
    let integrand = |t: f64| amp(t) * trig.eval(phi(t));
    let panel_opts = AdaptiveOptions {
        abs_tol: opts.abs_tol * 0.01,
        rel_tol: opts.rel_tol * 0.01,
        max_subdivisions: 200,
    };
    let mut lo = t0;
    let mut partial = 0.0;
    let mut sums: Vec<Complex64> = Vec::new();
    let mut evals = 0;
    let mut panel_err = 0.0;
    let mut last_est = f64::NAN;
    let mut stable = 0;
    for cycle in 0..opts.max_cycles {
        let target = off + m * PI;
        let hi = solve_phase(&phi, &dphi, lo, target, dir)?;
        let est = integrate(integrand, lo, hi, panel_opts);
        evals += est.evaluations;
        panel_err += est.error;
        partial += est.value;
        sums.push(Complex64::new(partial, 0.0));
        lo = hi;
        m += dir;
        if cycle + 1 >= opts.min_cycles {
            let lim = wynn_epsilon(&sums);
            let value = lim.value.re;
            let tol = opts.abs_tol.max(opts.rel_tol * value.abs());
            if (value - last_est).abs() <= tol && lim.error <= 10.0 * tol {
                stable += 1;
                if stable >= 2 {
                    return Ok(Estimate::new(value, lim.error.max(panel_err), evals));
                }
            } else {
                stable = 0;
            }
            last_est = value;
        }
    }
    Err(Error::no_convergence(
        "oscillatory half-line",
        format!("no stable limit after {} cycles (last {last_est})", opts.max_cycles),
    ))
}

/// `∫_{-∞}^{∞} trig(α sinh t + β cosh t) dt` for `|α| ≠ |β|`.
///
/// The line is split at the stationary point of the phase (`|β| > |α|`) or at
/// its zero (`|α| > |β|`); each half is a monotone-phase half-line integral.
pub fn hyperbolic_trig_line(alpha: f64, beta: f64, trig: Trig, opts: OscOptions) -> Result<Estimate<f64>> {
    if (alpha.abs() - beta.abs()).abs() <= 1e-14 * (alpha.abs() + beta.abs()) {
        return Err(Error::Singular {
            what: "hyperbolic trig integral",
            reason: "|alpha| = |beta| gives a non-oscillating divergent tail",
        });
    }
    let split = if beta.abs() > alpha.abs() {
        (-alpha / beta).atanh()
    } else {
        (-beta / alpha).atanh()
    };
    let right = trig_half_line(
        |_| 1.0,
        |t| alpha * t.sinh() + beta * t.cosh(),
        |t| alpha * t.cosh() + beta * t.sinh(),
        split,
        trig,
        opts,
    )?;
    // Left half mapped by t -> -t.
    let left = trig_half_line(
        |_| 1.0,
        |u| -alpha * u.sinh() + beta * u.cosh(),
        |u| -alpha * u.cosh() + beta * u.sinh(),
        -split,
        trig,
        opts,
    )?;
    Ok(right + left)
}
