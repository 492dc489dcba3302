use num_complex::Complex64;
use quatrep::cone_ops::*;
use quatrep::geometry::ConePoint;
use quatrep::kernels::QuadratureSpec;
use quatrep::quadrature::{integrate, AdaptiveOptions};
use std::f64::consts::PI;

fn spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-10,
        ..Default::default()
    }
}

fn light(xi: &ConePoint, eps: u8) -> TestFunctionFxiEps {
    let mut f = make_f_xi_eps(xi, eps).unwrap();
    f.n_radial = 8;
    f.n_azimuth = 16;
    f
}

fn base() -> ConePoint {
    ConePoint::new(1.0, 0.3, 1.1).unwrap()
}

#[test]
fn images_match_theta_integrated_chains() {
    let xi = base();
    let spec = spec();
    for eps in [0u8, 1] {
        let f = light(&xi, eps);
        let cf = f.to_cone_function();
        let (cp, cm) = f.angular_constants();
        assert!(cp > 0.0);
        assert!((cm - f.sign() * cp).abs() < 1e-14 * cp);
        for &s in &[0.2, 0.5, 1.0, 2.0] {
            let p = xi.scaled(s).unwrap();
            let fc = op_fc(&cf, &p, &spec).unwrap().value;
            let want = cp * chain_fc_integral(s, eps);
            assert!(fc.im == 0.0);
            assert!(
                (fc.re - want).abs() <= 1e-3 * want.abs(),
                "FC eps={eps} s={s}: {fc} vs {want}"
            );
            for &r in &[1.0, 2.0] {
                let pl = op_plhat_prime(&cf, r, &p, &spec).unwrap().value;
                let want = chain_plhat_integral(s, r, eps) * cp;
                // At R²s = 1 the chain integral vanishes identically.
                let scale = want.norm().max(1e-9);
                assert!(
                    (pl - want).norm() <= 1e-3 * scale,
                    "PlHat eps={eps} s={s} R={r}: {pl} vs {want}"
                );
            }
        }
    }
}

#[test]
fn plhat_chain_vanishes_at_unit_scale() {
    for eps in [0u8, 1] {
        assert!(chain_plhat_integral(1.0, 1.0, eps).norm() < 1e-14);
        assert!(chain_plhat_integral(0.25, 2.0, eps).norm() < 1e-14);
    }
}

/// As `s → 0⁺` the FC chain integral concentrates at `cosh θ ~ s^{−1/2}`;
/// with `x = √s cosh θ` it behaves like `(8/π²) ∫_{√s}^∞ g(x) dx / x` where
/// `g(x) = (1 + 2√2 x)^{−3} + (−1)^ε (1 − 24x²)/(1 + 8x²)³`.
fn small_s_profile(eps: u8) -> impl Fn(f64) -> f64 {
    let sign = if eps == 0 { 1.0 } else { -1.0 };
    move |x: f64| {
        1.0 / (1.0 + 2.0 * 2f64.sqrt() * x).powi(3) + sign * (1.0 - 24.0 * x * x) / (1.0 + 8.0 * x * x).powi(3)
    }
}

#[test]
fn fc_small_s_limits() {
    // Odd parity: g(0) = 0 and ∫ g(x) dx / x = 0, so the limit is the s = 0
    // value of the θ-integrand, namely 0.
    let g = small_s_profile(1);
    let opts = AdaptiveOptions::with_tol(1e-15, 1e-13);
    let lim =
        integrate(|x: f64| g(x) / x, 0.0, 1.0, opts).value + integrate(|u: f64| g(1.0 / u) / u, 0.0, 1.0, opts).value;
    assert!(lim.abs() < 1e-12, "{lim}");
    assert!(chain_fc(0.0, 0.0, 1).abs() < 1e-15);
    let ladder: Vec<f64> = [1e-2, 1e-4, 1e-6, 1e-8]
        .iter()
        .map(|&s| chain_fc_integral(s, 1))
        .collect();
    for w in ladder.windows(2) {
        assert!(w[1].abs() < 0.2 * w[0].abs(), "{ladder:?}");
    }
    // Even parity: g(0) = 2, logarithmic growth with slope −8/π² in ln s.
    let (s1, s2) = (1e-7, 1e-9);
    let slope = (chain_fc_integral(s1, 0) - chain_fc_integral(s2, 0)) / (s1.ln() - s2.ln());
    assert!((slope + 8.0 / (PI * PI)).abs() < 1e-2 * 8.0 / (PI * PI), "{slope}");

    // The operator follows the chain into this regime.
    let xi = base();
    let spec = spec();
    for eps in [0u8, 1] {
        let f = light(&xi, eps);
        let (cp, _) = f.angular_constants();
        let s = 1e-6;
        let v = op_fc(&f.to_cone_function(), &xi.scaled(s).unwrap(), &spec)
            .unwrap()
            .value
            .re;
        let want = cp * chain_fc_integral(s, eps);
        assert!((v - want).abs() < 1e-3 * want.abs(), "eps={eps}: {v} vs {want}");
    }
}

#[test]
fn fc_output_is_odd_for_odd_test_function() {
    let xi = base();
    let f = light(&xi, 1).to_cone_function();
    let spec = spec();
    for q in [ConePoint::new(0.7, 0.2, 1.5).unwrap(), xi.scaled(0.5).unwrap()] {
        let a = op_fc(&f, &q, &spec).unwrap().value;
        let b = op_fc(&f, &q.antipode(), &spec).unwrap().value;
        assert!((a + b).norm() < 1e-10 * a.norm().max(1e-12), "{a} {b}");
    }
}

#[test]
fn test_function_parity_support_and_norm() {
    let xi = base();
    for eps in [0u8, 1] {
        let f = make_f_xi_eps(&xi, eps).unwrap();
        for &(r, t1, t2) in &[(0.5, 0.3, 4.0), (2.0, 0.1, 4.5), (1.3, 0.6, 3.9)] {
            let a = f.eval(r, t1, t2);
            let b = f.eval(r, t1 + PI, t2 + PI);
            assert!((b - f.sign() * a).abs() <= 1e-15 * a.abs().max(1.0));
        }
        // Support: |⟨ξ, e(θ')⟩| is bounded below on supp ψ, so the level set
        // ⟨ξ,ξ'⟩ = 1 meets it at radii r' ≤ 1/min_pairing.
        let m = f.min_pairing();
        assert!(m > 1.6 * xi.r());
        if let AngularRule::Nodes(nodes) = f.angular_rule() {
            for &(t1, t2, _) in nodes.iter() {
                assert!(f.angular_pairing(t1, t2).abs() >= m * (1.0 - 1e-12));
            }
        }

        // ‖f‖² = Σ w ψ² / (4 A²) from ∫ (r/2)(rA)^{−1} e^{−2√(rA)} dr = 1/(4A²).
        let spec = QuadratureSpec {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            ..Default::default()
        };
        let coarse = light(&xi, eps);
        let n_coarse = coarse.to_cone_function().l2_norm_sq(&spec).unwrap();
        let n_fine = f.to_cone_function().l2_norm_sq(&spec).unwrap();
        let exact: f64 = match f.angular_rule() {
            AngularRule::Nodes(nodes) => nodes
                .iter()
                .map(|&(t1, t2, w)| w * f.psi(t1, t2).powi(2) / (4.0 * f.angular_pairing(t1, t2).powi(2)))
                .sum(),
            _ => unreachable!(),
        };
        assert!(n_fine.is_finite() && n_fine > 0.0);
        assert!((n_fine - exact).abs() < 1e-8 * exact, "{n_fine} vs {exact}");
        let mut finer = make_f_xi_eps(&xi, eps).unwrap();
        finer.n_radial = 32;
        finer.n_azimuth = 64;
        let n_finer = finer.to_cone_function().l2_norm_sq(&spec).unwrap();
        let (d1, d2) = ((n_fine - n_coarse).abs(), (n_finer - n_fine).abs());
        assert!(d2 < 0.1 * d1 && d2 < 1e-6 * n_finer, "{n_coarse} {n_fine} {n_finer}");
    }
}

#[test]
fn plhat_support_and_r_scaling() {
    let xi = base();
    let spec = spec();
    // One bump only, where ⟨ξ,ξ'⟩ > 0.
    let half = light(&xi, 0);
    let bump = half.bump;
    let positive = ConeFunction::new(
        move |r, a, b| {
            let t = r * 2.0 * 0.85;
            Complex64::new(bump.eval(a, b) * (-t).exp(), 0.0)
        },
        DecayCertificate::Exponential { rate: 1.6, power: 0.0 },
        AngularRule::disc(bump.center, bump.width, 8, 16, false),
    );
    let out = op_plhat_prime(&positive, 1.0, &xi.scaled(0.7).unwrap(), &spec).unwrap();
    assert_eq!(out.value, Complex64::new(0.0, 0.0));

    let f = half.to_cone_function();
    for &s in &[0.3, 1.7] {
        let a = op_plhat_prime(&f, 2.0, &xi.scaled(s).unwrap(), &spec).unwrap().value;
        let b = op_plhat_prime(&f, 1.0, &xi.scaled(4.0 * s).unwrap(), &spec)
            .unwrap()
            .value;
        assert!((a - b).norm() < 1e-10 * a.norm(), "{a} vs {b}");
    }
    assert!(op_plhat_prime(&f, 0.0, &xi, &spec).is_err());
    assert!(op_plhat_prime(&f, -1.0, &xi, &spec).is_err());
}

#[test]
fn conjugation_relations() {
    let xi = base();
    let spec = spec();
    let g = light(&xi, 0);
    let f = ConeFunction::new(
        move |r, a, b| Complex64::new(1.0, 2.0 + a.sin()) * g.eval(r, a, b),
        light(&xi, 0).decay(),
        light(&xi, 0).angular_rule(),
    );
    let p = xi.scaled(0.6).unwrap();
    let a = op_fc(&f, &p, &spec).unwrap().value;
    let b = op_fc(&f.conj(), &p, &spec).unwrap().value;
    assert!((b - a.conj()).norm() < 1e-12 * a.norm());
    let a = op_plhat_prime(&f, 1.5, &p, &spec).unwrap().value;
    let b = op_plhat_prime(&f.conj(), 1.5, &p, &spec).unwrap().value;
    assert!((b + a.conj()).norm() < 1e-12 * a.norm());
    let a = op_fcstar(&f, &p, &spec).unwrap().value;
    let b = op_fcstar(&f.conj(), &p, &spec).unwrap().value;
    assert!((b - a.conj()).norm() < 1e-12 * a.norm());
}

/// Bump around `θ_ξ`, where the Euclidean pairing with `ξ` is maximal.
fn euclidean_bump(xi: &ConePoint, n_radial: usize, n_azimuth: usize) -> ConeFunction {
    let bump = AngularBump {
        center: (xi.theta1(), xi.theta2()),
        width: BUMP_WIDTH,
    };
    ConeFunction::new(
        move |r, a, b| Complex64::new(bump.eval(a, b) * (1.0 + r) * (-r).exp(), 0.0),
        DecayCertificate::Exponential { rate: 1.0, power: 1.0 },
        AngularRule::disc(bump.center, bump.width, n_radial, n_azimuth, false),
    )
}

#[test]
fn fcstar_refinement_rotation_and_scaling() {
    let xi = base();
    let spec = spec();
    let p = ConePoint::new(0.8, 0.5, 1.0).unwrap();
    let coarse = op_fcstar(&euclidean_bump(&xi, 12, 24), &p, &spec).unwrap().value;
    let fine = op_fcstar(&euclidean_bump(&xi, 24, 48), &p, &spec).unwrap().value;
    assert!((coarse - fine).norm() < 1e-5 * fine.norm(), "{coarse} vs {fine}");

    // Simultaneous rotation of f and the evaluation point.
    let c = (0.9, -2.3);
    let xi_rot = ConePoint::new(xi.r(), xi.theta1() + c.0, xi.theta2() + c.1).unwrap();
    let p_rot = ConePoint::new(p.r(), p.theta1() + c.0, p.theta2() + c.1).unwrap();
    let f = euclidean_bump(&xi, 12, 24);
    let g = euclidean_bump(&xi_rot, 12, 24);
    let a = op_fcstar(&f, &p, &spec).unwrap().value;
    let b = op_fcstar(&g, &p_rot, &spec).unwrap().value;
    assert!((a - b).norm() < 1e-9 * a.norm(), "{a} vs {b}");

    // (F f(2·))(ξ) = (F f)(ξ/2) / 4.
    let a = op_fcstar(&f.rescaled(2.0), &p, &spec).unwrap().value;
    let b = op_fcstar(&f, &p.scaled(0.5).unwrap(), &spec).unwrap().value / 4.0;
    assert!((a - b).norm() < 1e-9 * a.norm(), "{a} vs {b}");
}

#[test]
fn operators_are_block_diagonal_in_angular_modes() {
    let spec = QuadratureSpec {
        abs_tol: 1e-10,
        rel_tol: 1e-8,
        ..Default::default()
    };
    let n = 16;
    let stride = 4;
    let h = 2.0 * PI / n as f64;
    let modes: Vec<(i32, i32)> = (-1..=1).flat_map(|a| (-1..=1).map(move |b| (a, b))).collect();
    let points: Vec<(f64, f64)> = (0..n / stride)
        .flat_map(|a| (0..n / stride).map(move |b| ((a * stride) as f64 * h, (b * stride) as f64 * h)))
        .collect();
    type Op = fn(&ConeFunction, &ConePoint, &QuadratureSpec) -> quatrep::Result<OperatorValue>;
    let plhat: Op = |f, p, s| op_plhat_prime(f, 1.0, p, s);
    for (name, op) in [("FC", op_fc as Op), ("PlHat", plhat)] {
        let mut diag_min = f64::INFINITY;
        let mut off_max: f64 = 0.0;
        for &m in &modes {
            let f = ConeFunction::new(
                move |r, a, b| Complex64::from_polar((-r).exp(), m.0 as f64 * a + m.1 as f64 * b),
                DecayCertificate::Exponential { rate: 1.0, power: 0.0 },
                AngularRule::Torus { n },
            );
            let values: Vec<Complex64> = points
                .iter()
                .map(|&(a, b)| op(&f, &ConePoint::new(1.0, a, b).unwrap(), &spec).unwrap().value)
                .collect();
            for &k in &modes {
                let proj: Complex64 = points
                    .iter()
                    .zip(&values)
                    .map(|(&(a, b), v)| v * Complex64::from_polar(1.0, -(k.0 as f64 * a + k.1 as f64 * b)))
                    .sum::<Complex64>()
                    / points.len() as f64;
                if k == m {
                    diag_min = diag_min.min(proj.norm());
                } else {
                    off_max = off_max.max(proj.norm());
                }
            }
        }
        assert!(diag_min > 1e-4, "{name}: diagonal {diag_min}");
        assert!(off_max < 1e-6, "{name}: off-diagonal {off_max}");
    }
}

#[test]
fn decay_certificates() {
    let c = DecayCertificate::Exponential { rate: 2.0, power: 0.0 }
        .cutoff(1e-12)
        .unwrap();
    assert!(c * (-2.0 * c).exp() < 1e-13);
    let c = DecayCertificate::StretchedExponential { rate: 1.0, power: -0.5 }
        .cutoff(1e-12)
        .unwrap();
    assert!(c.sqrt() * (-c.sqrt()).exp() < 1e-13);
    assert_eq!(
        DecayCertificate::CompactSupport { radius: 3.0 }.cutoff(1e-12).unwrap(),
        3.0
    );
    assert!(DecayCertificate::PowerLaw { exponent: 1.5 }.cutoff(1e-12).is_err());
    assert!(DecayCertificate::Exponential { rate: 0.0, power: 0.0 }
        .cutoff(1e-12)
        .is_err());
    assert!(make_f_xi_eps(&base(), 2).is_err());
}
