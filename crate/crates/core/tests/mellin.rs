use num_complex::Complex64;
use quatrep::cone_ops::{chain_fc_integral, chain_plhat_integral};
use quatrep::kernels::QuadratureSpec;
use quatrep::mellin::*;
use quatrep::special::gamma_complex;
use std::f64::consts::PI;

fn spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-11,
        ..Default::default()
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn mellin_of_exponential_and_rational_functions() {
    let spec = spec();
    for &(a, rho) in &[(1.0f64, 0.0f64), (2.0, 0.7), (0.5, -1.3), (1.0, 3.0)] {
        let w = MellinWindow {
            small_power: 0.0,
            large: LargeSDecay::Exponential(a),
            amplitude: 1.0,
        };
        let m = mellin(|s| Complex64::new((-a * s).exp(), 0.0), rho, &w, &spec).unwrap();
        let mu = Complex64::new(1.0, -rho);
        let want = (-mu * f64::ln(a)).exp() * gamma_complex(mu).unwrap();
        assert!(rel(m.value, want) < 1e-10, "a={a} rho={rho}: {} vs {want}", m.value);
        if rho == 0.0 && a == 1.0 {
            assert!((m.value - 1.0).norm() < 1e-11);
        }
    }
    for &(a, nu, rho) in &[(1.0f64, 3.0f64, 0.5f64), (2.0, 2.5, 1.1), (0.3, 4.0, -0.4)] {
        let w = MellinWindow {
            small_power: 0.0,
            large: LargeSDecay::Power(nu),
            amplitude: a.powf(-nu).max(1.0),
        };
        let m = mellin(|s| Complex64::new((1.0 + a * s).powf(-nu), 0.0), rho, &w, &spec).unwrap();
        let mu = Complex64::new(1.0, -rho);
        let want = (-mu * f64::ln(a)).exp() * gamma_complex(mu).unwrap() * gamma_complex(nu - mu).unwrap()
            / gamma_complex(Complex64::new(nu, 0.0)).unwrap();
        assert!(rel(m.value, want) < 1e-9, "a={a} nu={nu}: {} vs {want}", m.value);
    }
}

#[test]
fn mellin_rejects_divergent_windows() {
    let spec = spec();
    let bad = [
        MellinWindow {
            small_power: -1.0,
            large: LargeSDecay::Power(2.0),
            amplitude: 1.0,
        },
        MellinWindow {
            small_power: 0.0,
            large: LargeSDecay::Power(1.0),
            amplitude: 1.0,
        },
        MellinWindow {
            small_power: 0.0,
            large: LargeSDecay::Exponential(0.0),
            amplitude: 1.0,
        },
    ];
    for w in bad {
        assert!(mellin(|_| Complex64::new(1.0, 0.0), 1.0, &w, &spec).is_err(), "{w:?}");
    }
}

#[test]
fn t_squared_exponential_integrals() {
    let (s, c) = gr_2667_integrals(1.0, 0.0).unwrap();
    assert!(s.abs() < 1e-14 && (c - 2.0).abs() < 1e-12);
    let (s, c) = gr_2667_integrals(1.0, 1.0).unwrap();
    assert!((s - 0.5).abs() < 1e-12 && (c + 0.5).abs() < 1e-12);
    let q = gr_2667_quadrature(2.0, 1.0).unwrap();
    let k = gr_2667_closed(2.0, 1.0).unwrap();
    assert!((q.0 - k.0).abs() < 1e-10 * k.0.abs() && (q.1 - k.1).abs() < 1e-10 * k.1.abs());
    assert!(gr_2667_integrals(0.0, 1.0).is_err());
    assert!(gr_2667_integrals(-1.0, 1.0).is_err());
}

#[test]
fn intermediate_identities() {
    assert!(plhat_gamma_identity(0.7).unwrap().rel_error() < 1e-12);
    assert!(fc_duplication_identity(0.5, 0).unwrap().rel_error() < 1e-12);
    assert!(fc_duplication_identity(0.5, 1).unwrap().rel_error() < 1e-12);
    for eps in [0u8, 1] {
        let t = trig_reduction_identity(1.3, eps).unwrap();
        assert!(t.rel_error() < 1e-12, "{t:?}");
    }
    // tan(πiρ/2) = i tanh(πρ/2) and cos(πiρ) = cosh(πρ).
    let t = trig_reduction_identity(1.3, 0).unwrap();
    let h = Complex64::new(0.0, (PI * 1.3 / 2.0).tanh() / (PI * 1.3).cosh());
    assert!(rel(t.rhs, h) < 1e-12);
}

#[test]
fn per_theta_closed_forms_match_quadrature() {
    let spec = spec();
    for eps in [0u8, 1] {
        for &(rho, r, theta) in &[(0.3, 1.0, 0.0), (0.7, 2.0, 0.5), (1.0, 0.5, 1.5), (2.0, 1.0, 0.2)] {
            let (pl, fc) = per_theta_mellin_closed_forms(rho, r, theta, eps).unwrap();
            let (tpl, tfc) = per_theta_mellin_trig_forms(rho, r, theta, eps).unwrap();
            assert!(rel(tpl, pl) < 1e-12 && rel(tfc, fc) < 1e-12);
            let (npl, nfc) = per_theta_mellin_numeric(rho, r, theta, eps, &spec).unwrap();
            assert!(rel(npl.value, pl) < 1e-6, "PlHat rho={rho}: {} vs {pl}", npl.value);
            assert!(rel(nfc.value, fc) < 1e-6, "FC rho={rho}: {} vs {fc}", nfc.value);
        }
    }
    assert!(per_theta_mellin_closed_forms(0.0, 1.0, 0.0, 0).is_err());
}

#[test]
fn closed_form_verdicts() {
    let spec = spec();
    let v = verify_ratio(1.0, 1.0, 0, RatioMode::ClosedForm, &spec).unwrap();
    let want = Complex64::new(0.0, -2.0 * 2f64.ln()).exp() / (PI / 2.0).tanh();
    assert!(rel(v.computed_ratio, want) < 1e-8 && v.rel_error < 1e-8);
    let v = verify_ratio(1.0, 1.0, 1, RatioMode::ClosedForm, &spec).unwrap();
    let want = Complex64::new(0.0, -2.0 * 2f64.ln()).exp() * (PI / 2.0).tanh();
    assert!(rel(v.computed_ratio, want) < 1e-8);

    for &rho in &[0.3, 0.7, 1.0, 2.0] {
        for &r in &[0.5, 1.0, 2.0] {
            let a = verify_ratio(rho, r, 0, RatioMode::ClosedForm, &spec).unwrap();
            let b = verify_ratio(rho, r, 1, RatioMode::ClosedForm, &spec).unwrap();
            assert!(a.rel_error < 1e-8 && b.rel_error < 1e-8);
            let prod = Complex64::new(-4.0, 4.0 * rho) * r.ln() + Complex64::new(0.0, -4.0 * rho * 2f64.ln());
            assert!(rel(a.computed_ratio * b.computed_ratio, prod.exp()) < 1e-10);
            // θ-independence.
            let ratios: Vec<Complex64> = [0.0, 0.5, 1.5]
                .iter()
                .map(|&t| {
                    let (p, f) = per_theta_mellin_closed_forms(rho, r, t, 0).unwrap();
                    p / f
                })
                .collect();
            assert!(rel(ratios[1], ratios[0]) < 1e-12 && rel(ratios[2], ratios[0]) < 1e-12);
        }
    }
    // Large ρ: coth and tanh → 1, so |ratio| → R^{−2}.
    for eps in [0u8, 1] {
        for &r in &[0.5, 2.0] {
            let v = verify_ratio(8.0, r, eps, RatioMode::ClosedForm, &spec).unwrap();
            assert!((v.computed_ratio.norm() * r * r - 1.0).abs() < 1e-10);
        }
    }
    assert!(verify_ratio(0.0, 1.0, 0, RatioMode::ClosedForm, &spec).is_err());
    assert!(verify_ratio(1.0, 0.0, 0, RatioMode::ClosedForm, &spec).is_err());
    assert!(verify_ratio(1.0, 1.0, 2, RatioMode::ClosedForm, &spec).is_err());
}

#[test]
fn exponent_matches_homogeneity_degree() {
    for &rho in &[0.3, 1.0, 8.0] {
        let (four_l, power) = exponent_check(rho);
        assert_eq!(four_l, power);
        // Homogeneity degree 2l = −1 + iρ.
        assert_eq!(four_l / 2.0, Complex64::new(-1.0, rho));
        for &r in &[0.5, 2.0] {
            let reference = reference_ratio(rho, r, 0).unwrap() / reference_ratio(rho, 1.0, 0).unwrap();
            assert!(rel(reference, (four_l * f64::ln(r)).exp()) < 1e-13);
        }
    }
}

#[test]
fn sampled_mellin_on_closed_chain_rays() {
    let opts = EndToEndOptions::default();
    let grid = log_grid(opts.s_min, opts.s_max, opts.n_intervals);
    for eps in [0u8, 1] {
        let pl: Vec<Complex64> = grid.iter().map(|&s| chain_plhat_integral(s, 1.0, eps)).collect();
        let fc: Vec<Complex64> = grid
            .iter()
            .map(|&s| Complex64::new(chain_fc_integral(s, eps), 0.0))
            .collect();
        let pl = RaySamples::new(opts.s_min, opts.s_max, pl, HALF_INTEGER_TAIL.to_vec()).unwrap();
        let fc = RaySamples::new(opts.s_min, opts.s_max, fc, HALF_INTEGER_TAIL.to_vec()).unwrap();
        for &rho in &[0.3, 1.0, 2.0] {
            let v = ratio_from_rays(rho, 1.0, eps, &pl, &fc).unwrap();
            assert!(v.rel_error < 1e-3, "{v:?}");
            assert!(v.rel_error < v.error_estimate, "{v:?}");
        }
    }
    assert!(RaySamples::new(
        1e-3,
        50.0,
        vec![Complex64::new(1.0, 0.0); 48],
        HALF_INTEGER_TAIL.to_vec()
    )
    .is_err());
    assert!(RaySamples::new(1e-3, 50.0, vec![Complex64::new(1.0, 0.0); 49], vec![1.0]).is_err());
}

#[test]
fn end_to_end_ratio_at_unit_radius() {
    let spec = QuadratureSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-10,
        ..Default::default()
    };
    let opts = EndToEndOptions::default();
    for eps in [0u8, 1] {
        let pl = plhat_ray(1.0, eps, &opts, &spec).unwrap();
        let fc = fc_ray(eps, &opts, &spec).unwrap();
        for &rho in &[0.7, 1.0] {
            let v = ratio_from_rays(rho, 1.0, eps, &pl, &fc).unwrap();
            assert!(v.rel_error < 5e-3, "{v:?}");
            assert!((v.calibration() - 1.0).norm() < 5e-3);
        }
    }
}
