//! Cone operators applied to the structured test functions, against the
//! `θ`-integrated chain formulas.

use super::{c, Ctx, Tol};
use quatrep::cone_ops::{chain_fc_integral, chain_plhat_integral, make_f_xi_eps, op_fc, op_plhat_prime};
use quatrep::geometry::ConePoint;
use quatrep::kernels::QuadratureSpec;

const SCALES: [f64; 4] = [0.2, 0.5, 1.0, 2.0];

pub(super) fn run(ctx: &mut Ctx) {
    let spec = QuadratureSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-10,
        ..Default::default()
    };
    let base = ConePoint::new(1.0, 0.3, 1.1).expect("valid base point");
    let radii = if ctx.cfg.r_values.is_empty() {
        vec![1.0, 2.0]
    } else {
        ctx.cfg.r_values.clone()
    };
    for eps in ctx.cfg.eps_parity.parities() {
        let f = match make_f_xi_eps(&base, eps) {
            Ok(mut f) => {
                f.n_radial = 8;
                f.n_azimuth = 16;
                f
            }
            Err(e) => {
                ctx.record(
                    "test_function",
                    "make_f_xi_eps",
                    vec![("eps", eps.into())],
                    Err(e),
                    Tol::rel(1e-3),
                );
                continue;
            }
        };
        let cf = f.to_cone_function();
        let (cp, _) = f.angular_constants();
        for s in SCALES {
            let p = base.scaled(s).expect("positive scale");
            ctx.record(
                "fc_chain",
                "op_fc",
                vec![("eps", eps.into()), ("s", s.into())],
                op_fc(&cf, &p, &spec).map(|v| (v.value, c(cp * chain_fc_integral(s, eps)))),
                Tol::rel(1e-3),
            );
            for &r in &radii {
                // The chain integral vanishes identically at R²s = 1.
                ctx.record(
                    "plhat_chain",
                    "op_plhat_prime",
                    vec![("eps", eps.into()), ("s", s.into()), ("R", r.into())],
                    op_plhat_prime(&cf, r, &p, &spec).map(|v| (v.value, chain_plhat_integral(s, r, eps) * cp)),
                    Tol::mixed(1e-3, 1e-12),
                );
            }
        }
    }
}
