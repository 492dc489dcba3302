//! Special functions: Bessel functions of order zero, integer-order `K`, the
//! renormalised `K̃n`, and the complex Gamma function.

mod bessel;
mod gamma;
pub mod oracle;

pub use bessel::{
    bessel_j0, bessel_k0, bessel_k1, bessel_kn, bessel_y0, ktilde, y0_log_leading, BesselEvaluator, BesselMethod,
    RenormalizedK, EULER_GAMMA, K0_ASYMPTOTIC_CONST,
};
pub use gamma::gamma_complex;
