//! Cone kernel branches and the two evaluations of `δ(C)`.

use super::{c, Ctx, Tol};
use quatrep::geometry::SplitQuaternion;
use quatrep::kernels::{delta_cone_apply, phi0_plus, psi0, DeltaConeOptions, QuadratureSpec};
use quatrep::special::{bessel_j0, bessel_k0, bessel_y0};
use quatrep::Complex64;
use rand::Rng;
use std::f64::consts::PI;

type TestFn = fn(&SplitQuaternion) -> Complex64;

fn e2(x: &SplitQuaternion) -> f64 {
    x.euclidean_norm().powi(2)
}

/// Gaussian-type test functions with non-vanishing cone integral.
const GAUSSIANS: [(&str, TestFn); 5] = [
    ("gauss", |x| c((-e2(x)).exp())),
    ("gauss_wide", |x| c((-0.5 * e2(x)).exp())),
    ("gauss_poly", |x| c((1.0 + x.x1 * x.x1 + x.x3 * x.x3) * (-e2(x)).exp())),
    ("gauss_aniso", |x| {
        c((-(x.x1 * x.x1 + 2.0 * x.x2 * x.x2 + x.x3 * x.x3 + 0.5 * x.x4 * x.x4)).exp())
    }),
    ("gauss_wave", |x| {
        Complex64::from_polar((-e2(x)).exp(), 0.7 * (x.x1 + x.x4))
    }),
];

pub(super) fn run(ctx: &mut Ctx) {
    for _ in 0..ctx.cfg.size_or(20) {
        let t: f64 = ctx.rng.gen_range(0.01..10.0);
        let p = || vec![("t", t.into())];
        let u = 2.0 * (2.0 * t).sqrt();
        ctx.record(
            "psi0_positive",
            "psi0",
            p(),
            psi0(t).and_then(|a| Ok((c(a), c(bessel_y0(u)?)))),
            Tol::mixed(1e-14, 1e-15),
        );
        ctx.record(
            "psi0_negative",
            "psi0",
            p(),
            psi0(-t).and_then(|a| Ok((c(a), c(-2.0 / PI * bessel_k0(u)?)))),
            Tol::mixed(1e-14, 1e-15),
        );
        ctx.record(
            "phi0_positive",
            "phi0_plus",
            p(),
            phi0_plus(t).and_then(|a| Ok((c(a), c(bessel_j0(u)?)))),
            Tol::mixed(1e-14, 1e-15),
        );
        ctx.record_exact(
            "phi0_negative",
            "phi0_plus",
            p(),
            phi0_plus(-t).unwrap_or(f64::NAN),
            0.0,
        );
    }

    let opts = DeltaConeOptions::default();
    let spec = QuadratureSpec::delta_cone();
    for (name, f) in GAUSSIANS {
        let v = delta_cone_apply(f, &opts, &spec).map(|r| (r.volume, r.surface));
        ctx.record(name, "delta_cone", vec![("function", name.into())], v, Tol::rel(1e-5));
    }
}
