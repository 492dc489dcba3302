//! Regularized Fourier transforms against closed forms, the corollary
//! kernel combinations and the oscillatory `t`-integral identities.

use super::{Ctx, Params, Tol};
use quatrep::geometry::{pair, ConePoint, DualVector};
use quatrep::kernels::{corollary_kernels, ft_closed_form, lemma_kernel_integrals, FtReduced, QuadratureSpec, Sign};
use quatrep::Complex64;
use rand::Rng;
use std::f64::consts::TAU;

/// `|⟨ξ,ξ⟩|` window shared by all sampled transforms.
const Q_RANGE: std::ops::RangeInclusive<f64> = 0.25..=16.0;

fn sign_name(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "plus",
        Sign::Minus => "minus",
    }
}

/// `R` for case `i`: cycles through `--R` if given, else uniform on `[1, 3]`.
fn pick_r(ctx: &mut Ctx, i: usize) -> f64 {
    if ctx.cfg.r_values.is_empty() {
        ctx.rng.gen_range(1.0..3.0)
    } else {
        ctx.cfg.r_values[i % ctx.cfg.r_values.len()]
    }
}

fn random_xi(ctx: &mut Ctx) -> DualVector {
    loop {
        let c: [f64; 4] = std::array::from_fn(|_| ctx.rng.gen_range(-3.0..3.0));
        let xi = DualVector::from_coords(c);
        if Q_RANGE.contains(&pair(&xi, &xi).abs()) {
            return xi;
        }
    }
}

fn random_cone_point(ctx: &mut Ctx) -> ConePoint {
    let r = ctx.rng.gen_range(0.5..2.0);
    let (t1, t2) = (ctx.rng.gen_range(0.0..TAU), ctx.rng.gen_range(0.0..TAU));
    ConePoint::new(r, t1, t2).expect("positive radius")
}

fn cone_params(r: f64, a: &ConePoint, b: &ConePoint) -> Params {
    vec![
        ("R", r.into()),
        ("r", a.r().into()),
        ("theta1", a.theta1().into()),
        ("theta2", a.theta2().into()),
        ("r_prime", b.r().into()),
        ("theta1_prime", b.theta1().into()),
        ("theta2_prime", b.theta2().into()),
    ]
}

pub(super) fn run_fourier(ctx: &mut Ctx) {
    let spec = QuadratureSpec::default();
    for i in 0..ctx.cfg.size_or(50) {
        let r = pick_r(ctx, i);
        let xi = random_xi(ctx);
        let q = pair(&xi, &xi);
        let red = FtReduced::new(r, q, &spec);
        for s1 in Sign::BOTH {
            for s2 in Sign::BOTH {
                let c = xi.coords();
                let params = vec![
                    ("R", r.into()),
                    ("xi1", c[0].into()),
                    ("xi2", c[1].into()),
                    ("xi3", c[2].into()),
                    ("xi4", c[3].into()),
                    ("q", q.into()),
                    ("sign_r2", sign_name(s1).into()),
                    ("sign_eps", sign_name(s2).into()),
                ];
                let v = match &red {
                    Ok(red) => ft_closed_form(r, q, s1, s2).map(|want| (red.evaluate(s1, s2).value, want)),
                    Err(e) => Err(e.clone()),
                };
                let label = format!("ft_{}_{}", sign_name(s1), sign_name(s2));
                ctx.record(&label, "ft_closed_form", params, v, Tol::mixed(1e-4, 1e-5));
            }
        }
    }
}

pub(super) fn run_corollary(ctx: &mut Ctx) {
    let spec = QuadratureSpec::default();
    for i in 0..ctx.cfg.size_or(20) {
        let r = pick_r(ctx, i);
        // Keep q = −2⟨ξ,ξ'⟩ inside the sampled transform window.
        let (a, b) = loop {
            let (a, b) = (random_cone_point(ctx), random_cone_point(ctx));
            if Q_RANGE.contains(&(2.0 * pair(&a.embed(), &b.embed())).abs()) {
                break (a, b);
            }
        };
        let params = cone_params(r, &a, &b);
        match corollary_kernels(r, &a, &b, &spec) {
            Ok(v) => {
                let mut p = params.clone();
                p.push(("pairing", v.pairing.into()));
                ctx.record(
                    "symmetric",
                    "corollary_symmetric",
                    p.clone(),
                    Ok((v.symmetric.value, v.expected_symmetric)),
                    Tol::mixed(1e-4, 1e-6),
                );
                let tol = if v.pairing > 0.0 {
                    Tol::abs(1e-6)
                } else {
                    Tol::mixed(1e-4, 1e-8)
                };
                ctx.record(
                    "antisymmetric",
                    "corollary_antisymmetric",
                    p,
                    Ok((v.antisymmetric.value, v.expected_antisymmetric)),
                    tol,
                );
            }
            Err(e) => {
                ctx.record(
                    "symmetric",
                    "corollary_symmetric",
                    params.clone(),
                    Err(e.clone()),
                    Tol::rel(1e-4),
                );
                ctx.record(
                    "antisymmetric",
                    "corollary_antisymmetric",
                    params,
                    Err(e),
                    Tol::rel(1e-4),
                );
            }
        }
    }
}

const LEMMA_LABELS: [&str; 4] = ["psi0_plus_arg", "psi0_minus_arg", "phi0_plus_arg", "phi0_minus_arg"];

pub(super) fn run_lemma(ctx: &mut Ctx) {
    let spec = QuadratureSpec::default();
    for i in 0..ctx.cfg.size_or(10) {
        let r = pick_r(ctx, i);
        let (a, b) = loop {
            let (a, b) = (random_cone_point(ctx), random_cone_point(ctx));
            let (r1, r2) = a.embed().sub(&b.embed()).plane_radii();
            if (r1 - r2).abs() > 0.2 * r1.max(r2) {
                break (a, b);
            }
        };
        let params = cone_params(r, &a, &b);
        let res = lemma_kernel_integrals(r, &a, &b, &spec);
        for (k, label) in LEMMA_LABELS.iter().enumerate() {
            let v = res.as_ref().map_err(Clone::clone).map(|v| {
                let id = v.identities[k];
                (Complex64::new(id.integral, 0.0), Complex64::new(id.kernel, 0.0))
            });
            ctx.record(
                label,
                "lemma_kernel_integrals",
                params.clone(),
                v,
                Tol::mixed(1e-3, 1e-6),
            );
        }
    }
}
