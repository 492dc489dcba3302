//! Bessel recurrence, derivative and oracle agreement, Gamma reflection.

use super::{c, Ctx, Tol};
use quatrep::special::{bessel_j0, bessel_k0, bessel_kn, bessel_y0, gamma_complex, ktilde, oracle};
use quatrep::Complex64;
use rand::Rng;
use std::f64::consts::PI;

const ORACLE_TOL: f64 = 1e-12;

pub(super) fn run(ctx: &mut Ctx) {
    let points = ctx.cfg.size_or(20);
    let radii: Vec<f64> = (0..points).map(|_| ctx.rng.gen_range(0.1..=5.0)).collect();

    for n in -5..=5 {
        for &r in &radii {
            let params = vec![("n", n.into()), ("r", r.into())];
            // r² K̃_{n+1}(2r) = n K̃_n(2r) + K̃_{n−1}(2r)
            let v = (|| {
                let lhs = r * r * ktilde(n + 1, 2.0 * r)?;
                let rhs = n as f64 * ktilde(n, 2.0 * r)? + ktilde(n - 1, 2.0 * r)?;
                Ok((c(lhs), c(rhs)))
            })();
            ctx.record("k_rel", "ktilde_recurrence", params.clone(), v, Tol::rel(1e-10));

            // d/dr K̃_n(2r) = −2r K̃_{n+1}(2r), 4th-order central difference.
            let v = (|| {
                let h = 1e-3 * r;
                let f = |x: f64| ktilde(n, 2.0 * x);
                let fd = (f(r - 2.0 * h)? - 8.0 * f(r - h)? + 8.0 * f(r + h)? - f(r + 2.0 * h)?) / (12.0 * h);
                Ok((c(fd), c(-2.0 * r * ktilde(n + 1, 2.0 * r)?)))
            })();
            ctx.record("k_derivative", "ktilde_derivative", params, v, Tol::rel(1e-6));
        }
    }

    // Series/asymptotic evaluations against integral representations on a
    // log-spaced grid.
    let grid: Vec<f64> = (0..points)
        .map(|i| 0.1 * 200f64.powf(i as f64 / (points.max(2) - 1) as f64))
        .collect();
    for &u in &grid {
        let p = || vec![("u", u.into())];
        ctx.record(
            "j0_oracle",
            "bessel_j0",
            p(),
            bessel_j0(u).and_then(|a| Ok((c(a), c(oracle::j0_integral(u, ORACLE_TOL)?)))),
            Tol::mixed(1e-8, 1e-8),
        );
        ctx.record(
            "y0_oracle",
            "bessel_y0",
            p(),
            bessel_y0(u).and_then(|a| Ok((c(a), c(oracle::y0_integral(u, ORACLE_TOL)?)))),
            Tol::mixed(1e-8, 1e-8),
        );
        ctx.record(
            "k0_oracle",
            "bessel_k0",
            p(),
            bessel_k0(u).and_then(|a| Ok((c(a), c(oracle::k0_exp_integral(u, ORACLE_TOL)?)))),
            Tol::mixed(1e-8, 1e-14),
        );
        for n in [2, 3] {
            ctx.record(
                "kn_oracle",
                "bessel_kn",
                vec![("n", n.into()), ("u", u.into())],
                bessel_kn(n, u).and_then(|a| Ok((c(a), c(oracle::kn_exp_integral(n, u, ORACLE_TOL)?)))),
                Tol::mixed(1e-8, 1e-14),
            );
        }
    }

    // Γ(z)Γ(1−z) = π / sin(πz)
    for _ in 0..points {
        let z = Complex64::new(ctx.rng.gen_range(-2.5..2.5), ctx.rng.gen_range(-3.0..3.0));
        let v = (|| {
            let lhs = gamma_complex(z)? * gamma_complex(Complex64::new(1.0, 0.0) - z)?;
            Ok((lhs, c(PI) / (z * PI).sin()))
        })();
        ctx.record(
            "gamma_reflection",
            "gamma_complex",
            vec![("z_re", z.re.into()), ("z_im", z.im.into())],
            v,
            Tol::rel(1e-12),
        );
    }
}
