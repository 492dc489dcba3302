//! Plancherel ratio in closed form and end to end, plus the Gamma/trig
//! identities the closed form rests on.

use super::{Ctx, Params, Tol};
use quatrep::kernels::QuadratureSpec;
use quatrep::mellin::{
    fc_duplication_identity, fc_ray, plhat_gamma_identity, plhat_ray, ratio_from_rays, trig_reduction_identity,
    verify_ratio, EndToEndOptions, RatioMode, RatioVerdict,
};
use rand::Rng;

const DEFAULT_R: [f64; 3] = [0.5, 1.0, 2.0];

fn ratio_params(rho: f64, r: f64, eps: u8, mode: &str) -> Params {
    vec![
        ("rho", rho.into()),
        ("R", r.into()),
        ("eps", eps.into()),
        ("mode", mode.into()),
    ]
}

fn pair(v: quatrep::Result<RatioVerdict>) -> quatrep::Result<(quatrep::Complex64, quatrep::Complex64)> {
    v.map(|v| (v.computed_ratio, v.reference_ratio))
}

pub(super) fn run(ctx: &mut Ctx) {
    let spec = QuadratureSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-11,
        ..Default::default()
    };
    let radii = if ctx.cfg.r_values.is_empty() {
        DEFAULT_R.to_vec()
    } else {
        ctx.cfg.r_values.clone()
    };
    let rhos = ctx.cfg.rho.clone();
    let parities = ctx.cfg.eps_parity.parities();

    for &eps in &parities {
        for &r in &radii {
            for &rho in &rhos {
                let v = verify_ratio(rho, r, eps, RatioMode::ClosedForm, &spec);
                ctx.record(
                    "closed_form",
                    "plancherel_ratio",
                    ratio_params(rho, r, eps, "closed_form"),
                    pair(v),
                    Tol::rel(1e-8),
                );
            }
        }
    }

    if !ctx.cfg.closed_form_only {
        let opts = EndToEndOptions::default();
        for &eps in &parities {
            let fc = fc_ray(eps, &opts, &spec);
            for &r in &radii {
                let pl = fc
                    .as_ref()
                    .map_err(Clone::clone)
                    .and_then(|_| plhat_ray(r, eps, &opts, &spec));
                for &rho in &rhos {
                    let v = match (&pl, &fc) {
                        (Ok(pl), Ok(fc)) => ratio_from_rays(rho, r, eps, pl, fc),
                        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                    };
                    ctx.record(
                        "end_to_end",
                        "plancherel_ratio",
                        ratio_params(rho, r, eps, "end_to_end"),
                        pair(v),
                        Tol::rel(5e-3),
                    );
                }
            }
        }
    }

    for _ in 0..ctx.cfg.size_or(10) {
        // Uniform on (0, 3].
        let rho = 3.0 * (1.0 - ctx.rng.gen::<f64>());
        let v = plhat_gamma_identity(rho).map(|c| (c.lhs, c.rhs));
        ctx.record(
            "plhat_gamma",
            "per_theta_mellin_closed_forms",
            vec![("rho", rho.into())],
            v,
            Tol::rel(1e-10),
        );
        for eps in [0u8, 1] {
            let p = || vec![("rho", rho.into()), ("eps", eps.into())];
            let v = fc_duplication_identity(rho, eps).map(|c| (c.lhs, c.rhs));
            ctx.record(
                "fc_duplication",
                "per_theta_mellin_closed_forms",
                p(),
                v,
                Tol::rel(1e-10),
            );
            let v = trig_reduction_identity(rho, eps).map(|c| (c.lhs, c.rhs));
            ctx.record(
                "trig_reduction",
                "per_theta_mellin_closed_forms",
                p(),
                v,
                Tol::rel(1e-10),
            );
        }
    }
}
