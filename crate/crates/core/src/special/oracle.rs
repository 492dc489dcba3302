//! Integral-representation oracles, algorithmically independent of the
//! production evaluators:
//!
//! `J0(u) = (2/π) ∫₀^∞ sin(u cosh t) dt`, `Y0(u) = −(2/π) ∫₀^∞ cos(u cosh t) dt`,
//! `K0(u) = ∫₀^∞ cos(u sinh t) dt = ∫₀^∞ exp(−u cosh t) dt`, and
//! `Kn(u) = ∫₀^∞ exp(−u cosh t) cosh(nt) dt`.

use crate::quadrature::{integrate, trig_half_line, AdaptiveOptions, OscOptions, Trig};
use crate::{Error, Result};
use std::f64::consts::PI;

fn osc_opts(tol: f64) -> OscOptions {
    OscOptions {
        abs_tol: tol,
        rel_tol: tol,
        min_cycles: 8,
        max_cycles: 4000,
    }
}

fn check(what: &'static str, u: f64) -> Result<()> {
    if u > 0.0 && u.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(what, u, "argument must be positive and finite"))
    }
}

pub fn j0_integral(u: f64, tol: f64) -> Result<f64> {
    check("J0 oracle", u)?;
    let est = trig_half_line(
        |_| 1.0,
        |t| u * t.cosh(),
        |t| u * t.sinh(),
        0.0,
        Trig::Sin,
        osc_opts(tol),
    )?;
    Ok(2.0 / PI * est.value)
}

pub fn y0_integral(u: f64, tol: f64) -> Result<f64> {
    check("Y0 oracle", u)?;
    let est = trig_half_line(
        |_| 1.0,
        |t| u * t.cosh(),
        |t| u * t.sinh(),
        0.0,
        Trig::Cos,
        osc_opts(tol),
    )?;
    Ok(-2.0 / PI * est.value)
}

/// `∫₀^∞ cos(u sinh t) dt`.
pub fn k0_cos_integral(u: f64, tol: f64) -> Result<f64> {
    check("K0 oracle", u)?;
    let est = trig_half_line(
        |_| 1.0,
        |t| u * t.sinh(),
        |t| u * t.cosh(),
        0.0,
        Trig::Cos,
        osc_opts(tol),
    )?;
    Ok(est.value)
}

/// Upper cut `T` beyond which `exp(−u cosh t + |n| t)` is below `e^{−u−60}`.
fn exp_cut(u: f64, n: f64) -> f64 {
    let mut t: f64 = 1.0;
    while u * (t.cosh() - 1.0) - n * t < 60.0 {
        t *= 1.25;
    }
    t
}

/// `∫₀^∞ exp(−u cosh t) dt`, evaluated as `e^{−u} ∫ exp(−u(cosh t − 1)) dt`.
pub fn k0_exp_integral(u: f64, tol: f64) -> Result<f64> {
    kn_exp_integral(0, u, tol)
}

/// `∫₀^∞ exp(−u cosh t) cosh(nt) dt`.
pub fn kn_exp_integral(n: i32, u: f64, tol: f64) -> Result<f64> {
    check("Kn oracle", u)?;
    let nf = n.unsigned_abs() as f64;
    let cut = exp_cut(u, nf);
    let opts = AdaptiveOptions {
        abs_tol: 0.0,
        rel_tol: tol.min(1e-10),
        max_subdivisions: 4000,
    };
    let f = |t: f64| (-u * (t.cosh() - 1.0) + nf * t).exp() * 0.5 * (1.0 + (-2.0 * nf * t).exp());
    let est = integrate(f, 0.0, cut, opts);
    if !est.value.is_finite() {
        return Err(Error::no_convergence("Kn oracle", format!("n = {n}, u = {u}")));
    }
    Ok((-u).exp() * est.value)
}
