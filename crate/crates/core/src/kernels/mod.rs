//! The kernels `Ψ0`, `Φ0⁺`, the Fourier transforms of `(N(X) ± R² ± i0)⁻²`
//! and the `δ(C)` functional.

mod delta;
mod fourier;
mod lemma;

pub use delta::{delta_cone_apply, DeltaConeOptions, DeltaConeResult};
pub use fourier::{corollary_kernels, ft_regularized, CorollaryValues, FtEstimate, FtReduced};
pub use lemma::{lemma_kernel_integrals, LemmaIdentity, LemmaValues};

use crate::special::{bessel_j0, bessel_k0, bessel_y0};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `Ψ0(t) = Y0(2√(2t))` for `t > 0`, `−(2/π) K0(2√(−2t))` for `t < 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KernelPsi0;

impl KernelPsi0 {
    pub fn eval(&self, t: f64) -> Result<f64> {
        psi0(t)
    }
}

/// `Φ0⁺(t) = J0(2√(2t))` for `t > 0`, `0` for `t ≤ 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KernelPhi0Plus;

impl KernelPhi0Plus {
    pub fn eval(&self, t: f64) -> Result<f64> {
        phi0_plus(t)
    }
}

pub fn psi0(t: f64) -> Result<f64> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::domain("Psi0", t, "logarithmic singularity at 0"));
    }
    if t > 0.0 {
        bessel_y0(2.0 * (2.0 * t).sqrt())
    } else {
        Ok(-2.0 / PI * bessel_k0(2.0 * (-2.0 * t).sqrt())?)
    }
}

pub fn phi0_plus(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain("Phi0+", t, "non-finite argument"));
    }
    if t > 0.0 {
        bessel_j0(2.0 * (2.0 * t).sqrt())
    } else {
        Ok(0.0)
    }
}

/// Numerical parameters for the `ε → 0⁺` limits and the oscillatory integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Largest value of the hyperbolic radial variable `s` the oscillatory
    /// tail may reach before the computation is declared non-convergent.
    pub truncation_t: f64,
    /// Strictly decreasing positive values of `ε`.
    pub epsilon_ladder: Vec<f64>,
    pub extrapolation_order: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            rel_tol: 1e-10,
            truncation_t: 5.0e3,
            epsilon_ladder: vec![0.2, 0.1, 0.05, 0.025, 0.0125],
            extrapolation_order: 2,
        }
    }
}

impl QuadratureSpec {
    /// Ladder `0.02·2^{−k}`, `k = 0..10`, with a six-term log-augmented fit,
    /// for limits whose `ε`-expansion contains `ε ln ε`.
    pub fn delta_cone() -> Self {
        Self {
            epsilon_ladder: (0..10).map(|k| 0.02 * 0.5f64.powi(k)).collect(),
            extrapolation_order: 5,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let l = &self.epsilon_ladder;
        if l.is_empty() || l.iter().any(|&e| !(e > 0.0)) || l.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::domain(
                "epsilon ladder",
                l.first().copied().unwrap_or(f64::NAN),
                "must be positive and strictly decreasing",
            ));
        }
        if self.extrapolation_order + 1 > l.len() {
            return Err(Error::domain(
                "extrapolation order",
                self.extrapolation_order as f64,
                "needs order + 1 ladder values",
            ));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.truncation_t > 0.0) {
            return Err(Error::domain(
                "quadrature spec",
                self.abs_tol,
                "tolerances must be positive",
            ));
        }
        Ok(())
    }
}

/// Sign of `±R²` or `±iε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

/// The closed form of `lim (1/4π²) ∫ e^{iξ·X} (N(X) + σR² + iηε)⁻² dV`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtClosedForm {
    pub r: f64,
    pub q: f64,
    pub sign_r2: Sign,
    pub sign_eps: Sign,
}

impl FtClosedForm {
    pub fn value(&self) -> Result<Complex64> {
        ft_closed_form(self.r, self.q, self.sign_r2, self.sign_eps)
    }
}

pub fn ft_closed_form(r: f64, q: f64, sign_r2: Sign, sign_eps: Sign) -> Result<Complex64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("FT closed form", r, "R must be positive"));
    }
    if q == 0.0 || !q.is_finite() {
        return Err(Error::domain("FT closed form", q, "<xi,xi> = 0 is excluded"));
    }
    let a = r * q.abs().sqrt();
    // Oscillatory branch: q > 0 with −R², or q < 0 with +R².
    let oscillatory = (q > 0.0) == (sign_r2 == Sign::Minus);
    if oscillatory {
        let im_sign = sign_eps.value() * if sign_r2 == Sign::Minus { 1.0 } else { -1.0 };
        Ok(Complex64::new(
            PI / 4.0 * bessel_y0(a)?,
            im_sign * PI / 4.0 * bessel_j0(a)?,
        ))
    } else {
        Ok(Complex64::new(-0.5 * bessel_k0(a)?, 0.0))
    }
}
