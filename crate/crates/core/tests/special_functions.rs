// Reference values are frozen at full printed precision.
#![allow(clippy::excessive_precision)]

use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use quatrep::special::oracle::{j0_integral, k0_cos_integral, k0_exp_integral, kn_exp_integral, y0_integral};
use quatrep::special::*;
use std::f64::consts::PI;

// (x, J0, Y0, K0, K1), frozen from a 30-digit arbitrary-precision evaluation.
const TABLE: [(f64, f64, f64, f64, f64); 14] = [
    (
        0.1,
        0.997501562066040032,
        -1.5342386513503668083,
        2.4270690247020165578,
        9.8538447808706055744,
    ),
    (
        0.5,
        0.93846980724081290423,
        -0.44451873350670655715,
        0.92441907122766586178,
        1.6564411200033008937,
    ),
    (
        1.0,
        0.76519768655796655145,
        0.088256964215676957983,
        0.42102443824070833334,
        0.60190723019723457474,
    ),
    (
        2.0,
        0.22389077914123566805,
        0.5103756726497451196,
        0.11389387274953343565,
        0.13986588181652242728,
    ),
    (
        2.5,
        -0.048383776468197996327,
        0.49807035961523188783,
        0.062347553200366186029,
        0.073890816347747063649,
    ),
    (
        5.0,
        -0.17759677131433830435,
        -0.30851762524903378007,
        0.0036910983340425942747,
        0.0040446134454521642084,
    ),
    (
        6.0,
        0.15064525725099693166,
        -0.28819468398157915407,
        0.0012439943280131230852,
        0.0013439197177355090057,
    ),
    (
        9.0,
        -0.090333611182876134336,
        0.24993669828502467602,
        0.00005088131295645924757,
        0.000053637016379451945249,
    ),
    (
        12.0,
        0.047689310796833536624,
        -0.22523731263436143369,
        2.2008253973114914005e-6,
        2.2907574647671878159e-6,
    ),
    (
        20.0,
        0.16702466434058315473,
        0.062640596809383831162,
        5.7412378153365242927e-10,
        5.8830579695570381777e-10,
    ),
    (
        24.9,
        0.083245968353015490053,
        -0.13649918399676523538,
        3.8360965209894920567e-12,
        3.9123824362567633162e-12,
    ),
    (
        25.0,
        0.096266783275958116174,
        -0.12724943226800613783,
        3.4641615622131143554e-12,
        3.5327780731999337702e-12,
    ),
    (
        40.0,
        0.0073668905842372895535,
        0.12593641705826092925,
        8.3928611000995670337e-19,
        8.4971319548610386508e-19,
    ),
    (
        100.0,
        0.019985850304223122424,
        -0.077244313365083152254,
        4.6566282291759020189e-45,
        4.6798537356369092866e-45,
    ),
];

#[test]
fn production_evaluators_match_reference_table() {
    for &(x, j, y, k0, k1) in &TABLE {
        assert!((bessel_j0(x).unwrap() - j).abs() < 2e-15, "J0({x})");
        assert!((bessel_y0(x).unwrap() - y).abs() < 2e-15, "Y0({x})");
        assert_relative_eq!(bessel_k0(x).unwrap(), k0, max_relative = 2e-14);
        assert_relative_eq!(bessel_k1(x).unwrap(), k1, max_relative = 2e-14);
    }
}

#[test]
fn integer_order_k_matches_reference() {
    let table = [
        (2, 0.3, 21.745740283593132212),
        (2, 1.7, 0.41180512770885830509),
        (2, 4.0, 0.017401425529487240005),
        (3, 0.3, 292.99919581469909867),
        (3, 1.7, 1.1783157298719844071),
        (3, 4.0, 0.029884924416755671475),
        (5, 0.3, 157139.1233712167135),
        (5, 1.7, 22.686864093434519906),
        (5, 4.0, 0.15434254872599716591),
    ];
    for &(n, x, v) in &table {
        assert_relative_eq!(bessel_kn(n, x).unwrap(), v, max_relative = 1e-13);
        assert_relative_eq!(bessel_kn(-n, x).unwrap(), v, max_relative = 1e-13);
    }
}

#[test]
fn domain_errors() {
    assert!(bessel_j0(-1.0).is_err());
    assert_eq!(bessel_j0(0.0).unwrap(), 1.0);
    for f in [bessel_y0, bessel_k0, bessel_k1] {
        assert!(f(0.0).is_err());
        assert!(f(-2.0).is_err());
    }
    assert!(ktilde(2, 0.0).is_err());
    assert!(ktilde(-1, -1.0).is_err());
}

#[test]
fn first_zero_of_j0_is_bracketed() {
    let (mut a, mut b) = (2.0, 3.0);
    assert!(bessel_j0(a).unwrap() > 0.0 && bessel_j0(b).unwrap() < 0.0);
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if bessel_j0(m).unwrap() > 0.0 {
            a = m
        } else {
            b = m
        }
    }
    assert!((a - 2.404_825_557_695_772_8).abs() < 1e-13, "{a}");
}

#[test]
fn y0_log_divergence_rate() {
    for &u in &[1e-3, 1e-5, 1e-8] {
        let y = bessel_y0(u).unwrap();
        assert!((y - y0_log_leading(u)).abs() < u, "u={u}");
    }
    assert!(bessel_y0(1e-8).unwrap() < bessel_y0(1e-5).unwrap());
}

#[test]
fn k0_large_argument_bound() {
    for &u in &[50.0, 200.0, 600.0] {
        let scaled = bessel_k0(u).unwrap() * u.exp() * u.sqrt();
        assert!((scaled - K0_ASYMPTOTIC_CONST).abs() < 0.2 / u, "u={u}: {scaled}");
    }
}

fn log_grid(n: usize, a: f64, b: f64) -> Vec<f64> {
    (0..n).map(|i| a * (b / a).powf(i as f64 / (n - 1) as f64)).collect()
}

#[test]
fn evaluators_match_integral_oracles_on_log_grid() {
    for u in log_grid(20, 0.1, 20.0) {
        let j = j0_integral(u, 1e-11).unwrap();
        let y = y0_integral(u, 1e-11).unwrap();
        let kc = k0_cos_integral(u, 1e-11).unwrap();
        let ke = k0_exp_integral(u, 1e-12).unwrap();
        assert!((bessel_j0(u).unwrap() - j).abs() < 1e-8, "J0({u}): {j}");
        assert!((bessel_y0(u).unwrap() - y).abs() < 1e-8, "Y0({u}): {y}");
        assert!((bessel_k0(u).unwrap() - kc).abs() < 1e-8, "K0 cos form({u}): {kc}");
        assert!((bessel_k0(u).unwrap() - ke).abs() < 1e-8, "K0 exp form({u}): {ke}");
    }
}

#[test]
fn both_k0_integral_forms_agree() {
    for &u in &[0.5, 1.0, 3.0] {
        let a = k0_cos_integral(u, 1e-12).unwrap();
        let b = k0_exp_integral(u, 1e-13).unwrap();
        assert!((a - b).abs() < 1e-10, "u={u}: {a} vs {b}");
    }
}

#[test]
fn kn_matches_cosh_integral() {
    for n in -4..=6 {
        for &u in &[0.2, 1.0, 3.5, 9.0] {
            let oracle = kn_exp_integral(n, u, 1e-13).unwrap();
            assert_relative_eq!(bessel_kn(n, u).unwrap(), oracle, max_relative = 1e-10);
        }
    }
}

#[test]
fn evaluator_methods() {
    let series = BesselEvaluator::new(BesselMethod::Series);
    let asym = BesselEvaluator::with_accuracy(BesselMethod::Asymptotic, 1e-5);
    for u in log_grid(15, 6.0, 12.0) {
        assert!((series.j0(u).unwrap() - asym.j0(u).unwrap()).abs() < asym.target_accuracy);
        assert!((series.y0(u).unwrap() - asym.y0(u).unwrap()).abs() < asym.target_accuracy);
        assert!((series.k0(u).unwrap() - asym.k0(u).unwrap()).abs() < asym.target_accuracy);
    }
    let oracle = BesselEvaluator::with_accuracy(BesselMethod::IntegralOracle, 1e-11);
    let auto = BesselEvaluator::default();
    for &u in &[0.1, 1.0, 7.5, 20.0] {
        assert!((oracle.j0(u).unwrap() - auto.j0(u).unwrap()).abs() < 1e-8);
        assert!((oracle.y0(u).unwrap() - auto.y0(u).unwrap()).abs() < 1e-8);
        assert!((oracle.k0(u).unwrap() - auto.k0(u).unwrap()).abs() < 1e-8);
    }
}

#[test]
fn ktilde_basics() {
    for &r in &[0.3, 1.0, 2.0] {
        assert_eq!(ktilde(0, r).unwrap(), bessel_k0(r).unwrap());
        assert_relative_eq!(
            ktilde(1, r).unwrap(),
            2.0 / r * bessel_k1(r).unwrap(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            ktilde(-2, r).unwrap(),
            r * r / 4.0 * bessel_kn(2, r).unwrap(),
            max_relative = 1e-15
        );
        assert_eq!(
            RenormalizedK::new(3, r).unwrap().value().unwrap(),
            ktilde(3, r).unwrap()
        );
    }
}

#[test]
fn ktilde_recurrence_examples() {
    for n in -3..=3 {
        for &r in &[0.3, 1.0, 2.0] {
            let res = r * r * ktilde(n + 1, 2.0 * r).unwrap()
                - n as f64 * ktilde(n, 2.0 * r).unwrap()
                - ktilde(n - 1, 2.0 * r).unwrap();
            assert!(
                res.abs() < 1e-10 * ktilde(n, 2.0 * r).unwrap().abs(),
                "n={n} r={r}: {res}"
            );
        }
    }
}

fn central_diff(f: impl Fn(f64) -> f64, r: f64) -> f64 {
    let h = 1e-5 * r.max(1.0);
    (f(r + h) - f(r - h)) / (2.0 * h)
}

#[test]
fn ktilde_derivative_in_doubled_variable() {
    for n in -3..=4 {
        for &r in &[0.3, 0.8, 1.5, 3.0] {
            let fd = central_diff(|s| ktilde(n, 2.0 * s).unwrap(), r);
            let exact = -2.0 * r * ktilde(n + 1, 2.0 * r).unwrap();
            assert_relative_eq!(fd, exact, max_relative = 1e-6);
        }
    }
}

#[test]
fn ktilde_iterated_derivative() {
    for n in -3..=3 {
        for &r in &[0.5, 1.0, 2.5, 4.0] {
            let op = |g: &dyn Fn(f64) -> f64, s: f64| -2.0 / s * central_diff(g, s);
            let k = |s: f64| ktilde(n, s).unwrap();
            let once = op(&k, r);
            assert_relative_eq!(once, ktilde(n + 1, r).unwrap(), max_relative = 1e-6);
            let first = |s: f64| op(&k, s);
            // Outer step balances inner-difference noise against truncation.
            let h = 1e-4 * r.max(1.0);
            let twice = -2.0 / r * (first(r + h) - first(r - h)) / (2.0 * h);
            assert_relative_eq!(twice, ktilde(n + 2, r).unwrap(), max_relative = 1e-6);
        }
    }
}

#[test]
fn gamma_reference_values() {
    let table = [
        ((0.5, 0.7), (0.52741985731837142271, -0.64044947484521901802)),
        ((-2.3, 3.1), (0.00023419469705905075472, 0.00054879435705354208378)),
        ((3.9, -9.5), (-0.0011224507384369488773, 0.0014983318062748046521)),
        ((-3.7, 0.2), (0.1937597216115616782, -0.018836662733468159573)),
    ];
    for &((a, b), (re, im)) in &table {
        let g = gamma_complex(Complex64::new(a, b)).unwrap();
        let want = Complex64::new(re, im);
        assert!((g - want).norm() < 1e-12 * want.norm(), "Γ({a}+{b}i) = {g}");
    }
}

#[test]
fn gamma_reflection_on_critical_line() {
    let rho = 0.7;
    let p = gamma_complex(Complex64::new(0.5, -rho)).unwrap() * gamma_complex(Complex64::new(0.5, rho)).unwrap();
    assert!((p - PI / (PI * rho).cosh()).norm() < 1e-13);
}

proptest! {
    #[test]
    fn ktilde_recurrence_everywhere(n in -5i32..=5, r in 0.1f64..5.0) {
        let res = r * r * ktilde(n + 1, 2.0 * r).unwrap() - n as f64 * ktilde(n, 2.0 * r).unwrap()
            - ktilde(n - 1, 2.0 * r).unwrap();
        prop_assert!(res.abs() < 1e-10 * ktilde(n, 2.0 * r).unwrap().abs());
    }

    #[test]
    fn gamma_recurrence(re in -4.0f64..4.0, im in -10.0f64..10.0) {
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        let z = Complex64::new(re, im);
        let lhs = gamma_complex(z + 1.0).unwrap();
        let rhs = z * gamma_complex(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * lhs.norm());
    }

    #[test]
    fn gamma_reflection(re in -4.0f64..4.0, im in -10.0f64..10.0) {
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        let z = Complex64::new(re, im);
        let lhs = gamma_complex(z).unwrap() * gamma_complex(1.0 - z).unwrap();
        let rhs = PI / (PI * z).sin();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm());
    }

    #[test]
    fn gamma_modulus_on_vertical_lines(y in 0.05f64..10.0) {
        let a = gamma_complex(Complex64::new(0.5, y)).unwrap().norm_sqr();
        prop_assert!((a - PI / (PI * y).cosh()).abs() <= 1e-12 * a);
        let b = gamma_complex(Complex64::new(0.0, y)).unwrap().norm_sqr();
        prop_assert!((b - PI / (y * (PI * y).sinh())).abs() <= 1e-12 * b);
    }
}
