//! Numerical kernels and operator algebra for the Schrödinger model of the
//! minimal representation of `O(3,3)` on the light cone of the split
//! quaternions.
//!
//! The crate is organised bottom-up:
//!
//! * [`summation`], [`quadrature`]: compensated sums, Gauss rules, adaptive
//!   and oscillatory integration, limit extrapolation.
//! * [`geometry`]: split quaternions, the dual cone and its bipolar chart.
//! * [`special`]: `J0`, `Y0`, `K_n`, the renormalized `K̃_n` and complex Gamma,
//!   each paired with an integral-representation oracle.
//! * [`kernels`]: the cone kernels `Ψ0`, `Φ0⁺`, the `±i0` Fourier transforms of
//!   `(N(X) ± R² ± i0)⁻²` and the `δ(C)` functional.
//! * [`cone_ops`]: the integral operators `F_C`, `F_{C*}` and `P̂l'_R`.
//! * [`mellin`]: Mellin transforms and the coth/tanh Plancherel ratio.
//! * [`ktypes`]: exact algebra of K-finite vectors.

// `!(x > 0.0)` guards reject NaN together with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Series and rational-approximation coefficients are kept as published.
#![allow(clippy::excessive_precision)]
#![allow(clippy::needless_range_loop)]

pub mod cone_ops;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod ktypes;
pub mod mellin;
pub mod quadrature;
pub mod special;
pub mod summation;

pub use error::{Error, Result};
pub use num_complex::Complex64;
