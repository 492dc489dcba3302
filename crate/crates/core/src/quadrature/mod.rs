//! Quadrature machinery: fixed Gauss rules, global adaptive Gauss–Kronrod,
//! an oscillatory half-line engine driven by the zeros of the phase, and
//! limit extrapolation (Wynn epsilon, Richardson, log-augmented fits).

mod adaptive;
mod extrapolate;
mod gauss;
mod oscillatory;

pub use adaptive::{integrate, integrate_breakpoints, AdaptiveOptions};
pub use extrapolate::{fit_limit, richardson, wynn_epsilon, LimitEstimate, LimitModel};
pub use gauss::{gauss_legendre, GaussRule};
pub use oscillatory::{hyperbolic_trig_line, trig_half_line, OscOptions, Trig};

use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Sub};

/// Values the integrators can accumulate: `f64` and `Complex64`.
pub trait Scalar:
    Copy
    + Default
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<f64, Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + std::fmt::Debug
{
    fn magnitude(&self) -> f64;
    fn is_finite_value(&self) -> bool;
    fn one() -> Self;
}

impl Scalar for f64 {
    #[inline]
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
    fn one() -> Self {
        1.0
    }
}

impl Scalar for Complex64 {
    #[inline]
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
}

/// A numerical value together with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    /// Number of integrand evaluations spent.
    pub evaluations: usize,
}

impl<T: Scalar> Estimate<T> {
    pub fn new(value: T, error: f64, evaluations: usize) -> Self {
        Self {
            value,
            error,
            evaluations,
        }
    }
}

impl<T: Scalar> Add for Estimate<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Estimate::new(
            self.value + rhs.value,
            self.error + rhs.error,
            self.evaluations + rhs.evaluations,
        )
    }
}

impl Estimate<f64> {
    pub fn scale(self, c: f64) -> Self {
        Estimate::new(self.value * c, self.error * c.abs(), self.evaluations)
    }
}

impl Estimate<Complex64> {
    pub fn scale(self, c: Complex64) -> Self {
        Estimate::new(self.value * c, self.error * c.norm(), self.evaluations)
    }
}
