//! Hyperbolic integral expressions for `Ψ0(±(R²/4)⟨ξ,ξ'⟩)` and
//! `Φ0⁺(±(R²/4)⟨ξ,ξ'⟩)`.

use super::{phi0_plus, psi0, QuadratureSpec};
use crate::geometry::{pair, ConePoint};
use crate::quadrature::{hyperbolic_trig_line, OscOptions, Trig};
use crate::{Error, Result};
use std::f64::consts::PI;

/// One identity: the numerical `t`-integral against its kernel value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaIdentity {
    pub integral: f64,
    pub error: f64,
    pub kernel: f64,
    /// Set when `r1 ≈ r2`, where the tails converge slowly; the error bar is
    /// enlarged accordingly.
    pub slow: bool,
}

impl LemmaIdentity {
    pub fn discrepancy(&self) -> f64 {
        (self.integral - self.kernel).abs()
    }
}

/// The four identities in order: `Ψ0(+)`, `Ψ0(−)`, `Φ0⁺(+)`, `Φ0⁺(−)`, where
/// `±` is the sign of the argument `±(R²/4)⟨ξ,ξ'⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaValues {
    pub r1: f64,
    pub r2: f64,
    pub pairing: f64,
    pub identities: [LemmaIdentity; 4],
}

pub fn lemma_kernel_integrals(r: f64, xi: &ConePoint, xi2: &ConePoint, spec: &QuadratureSpec) -> Result<LemmaValues> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("lemma integrals", r, "R must be positive"));
    }
    let d = xi.embed().sub(&xi2.embed());
    let (r1, r2) = d.plane_radii();
    if r1 == 0.0 && r2 == 0.0 {
        return Err(Error::domain("lemma integrals", 0.0, "r1 = r2 = 0"));
    }
    let p = pair(&xi.embed(), &xi2.embed());
    let opts = OscOptions {
        abs_tol: spec.abs_tol,
        rel_tol: spec.rel_tol,
        min_cycles: 8,
        max_cycles: 20_000,
    };
    let slow = (r1 - r2).abs() < 1e-2 * (r1 + r2);
    let inflate = if slow { 10.0 } else { 1.0 };
    let arg = 0.25 * r * r * p;
    let make = |alpha: f64, beta: f64, trig: Trig, scale: f64, kernel: f64| -> Result<LemmaIdentity> {
        let est = hyperbolic_trig_line(r * alpha, r * beta, trig, opts)?;
        Ok(LemmaIdentity {
            integral: scale * est.value,
            error: inflate * est.error.abs() / PI,
            kernel,
            slow,
        })
    };
    Ok(LemmaValues {
        r1,
        r2,
        pairing: p,
        identities: [
            make(r1, r2, Trig::Cos, -1.0 / PI, psi0(arg)?)?,
            make(r2, r1, Trig::Cos, -1.0 / PI, psi0(-arg)?)?,
            make(r1, r2, Trig::Sin, 1.0 / PI, phi0_plus(arg)?)?,
            make(r2, r1, Trig::Sin, 1.0 / PI, phi0_plus(-arg)?)?,
        ],
    })
}
