use quatrep_verify::report::{render, to_json};
use quatrep_verify::{
    emit_report, run_suite, CheckRecord, Cx, OutputFormat, Param, Suite, SuiteConfig, Summary, VerificationReport,
};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::Command;

fn verify(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("spawn verify")
}

fn one_check_report(value: f64) -> VerificationReport {
    let mut parameters = BTreeMap::new();
    parameters.insert("n".to_string(), Param::Int(3));
    parameters.insert("r".to_string(), Param::Float(0.1));
    parameters.insert("mode".to_string(), Param::Text("closed_form".into()));
    VerificationReport {
        schema_version: 1,
        suite: "bessel".into(),
        config_echo: SuiteConfig::default(),
        checks: vec![CheckRecord {
            check_id: "bessel/00000/k_rel".into(),
            anchor: "ktilde_recurrence".into(),
            parameters,
            computed: Cx::from(value),
            reference: Cx {
                re: 0.1,
                im: -1.0 / 3.0,
            },
            abs_error: value,
            rel_error: 1e-300,
            tolerance: 1e-10,
            abs_floor: 0.0,
            pass: true,
            note: None,
        }],
        summary: Summary {
            passed: 1,
            failed: 0,
            skipped: 0,
        },
        wall_ms: 12,
        non_convergence: false,
    }
}

#[test]
fn json_round_trips_with_full_precision() {
    let rep = one_check_report(0.1 + 0.2);
    let bytes = to_json(&rep).unwrap();
    let back: VerificationReport = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(back, rep);
    let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    for key in ["schema_version", "suite", "config_echo", "checks", "summary", "wall_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let check = &v["checks"][0];
    for key in [
        "check_id",
        "anchor",
        "parameters",
        "computed",
        "reference",
        "abs_error",
        "rel_error",
        "tolerance",
        "pass",
    ] {
        assert!(check.get(key).is_some(), "missing {key}");
    }
    assert!(String::from_utf8(bytes).unwrap().contains("3.0000000000000004e-1"));
}

#[test]
fn non_finite_values_serialize_as_null_and_read_back() {
    let rep = one_check_report(f64::NAN);
    let bytes = to_json(&rep).unwrap();
    let back: VerificationReport = serde_json::from_slice(&bytes).unwrap();
    assert!(back.checks[0].computed.re.is_nan() && back.checks[0].abs_error.is_nan());
    assert_eq!(to_json(&back).unwrap(), bytes);
}

#[test]
fn csv_has_one_row_per_check_plus_header() {
    let rep = run_suite(&SuiteConfig {
        suite: Suite::Bessel,
        size: Some(2),
        ..SuiteConfig::default()
    })
    .unwrap();
    let bytes = render(&rep, OutputFormat::Csv).unwrap();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(bytes.as_slice());
    let rows = reader.records().collect::<Result<Vec<_>, _>>().unwrap();
    assert_eq!(rows.len(), rep.checks.len() + 1);
    assert!(rows.iter().all(|r| r.len() == 13));
}

#[test]
fn text_lists_each_verdict_and_the_tally() {
    let mut rep = one_check_report(0.5);
    let mut failing = rep.checks[0].clone();
    failing.check_id = "bessel/00001/k_rel".into();
    failing.pass = false;
    rep.checks.push(failing);
    rep.summary = Summary {
        passed: 1,
        failed: 1,
        skipped: 0,
    };
    let text = String::from_utf8(render(&rep, OutputFormat::Text).unwrap()).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("PASS") && l.contains("bessel/00000/k_rel")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("FAIL") && l.contains("bessel/00001/k_rel")));
    assert!(text.trim_end().ends_with("passed 1  failed 1  skipped 0  wall 12 ms"));
    assert_eq!(rep.exit_code(), 1);
}

#[test]
fn emit_report_names_the_path_on_failure() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("r.json");
    emit_report(&one_check_report(1.0), OutputFormat::Json, Some(&good)).unwrap();
    assert!(std::fs::read(&good).unwrap().ends_with(b"}\n"));
    let bad = dir.path().join("missing").join("r.json");
    let err = emit_report(&one_check_report(1.0), OutputFormat::Json, Some(&bad)).unwrap_err();
    assert!(err.to_string().contains(&bad.display().to_string()), "{err}");
}

#[test]
fn mellin_report_carries_the_reference_ratio() {
    let out = verify(&[
        "mellin_ratio",
        "--rho",
        "1",
        "--R",
        "1",
        "--eps-parity",
        "0",
        "--size",
        "1",
        "--closed-form-only",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    let closed = rep.checks.iter().find(|c| c.check_id.ends_with("closed_form")).unwrap();
    // 2^{−2i} coth(π/2)
    let want = quatrep::Complex64::new(0.0, -2.0 * 2f64.ln()).exp() / (PI / 2.0).tanh();
    assert!((closed.reference.to_complex() - want).norm() < 1e-15 * want.norm());
    assert!(closed.pass);
}

#[test]
fn output_file_and_formats_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = verify(&[
        "kernels",
        "--size",
        "1",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("check_id,anchor,"));
    let bad = dir.path().join("nope").join("x.json");
    let out = verify(&["bessel", "--size", "1", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["bogus"][..],
        &["bessel", "--eps-parity", "2"],
        &["bessel", "--tol", "abc"],
        &["bessel", "--tol", "0"],
        &["bessel", "--R", "-1"],
        &["bessel", "--size", "0"],
        &["bessel", "--workers", "0"],
    ] {
        assert_eq!(verify(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn worker_count_leaves_numbers_stable() {
    let run = |w: &str| {
        let out = verify(&["operators", "--workers", w, "--fixed-clock", "--eps-parity", "1"]);
        assert_eq!(out.status.code(), Some(0));
        serde_json::from_slice::<VerificationReport>(&out.stdout).unwrap()
    };
    let (a, b) = (run("1"), run("3"));
    assert_eq!(a.checks.len(), b.checks.len());
    for (x, y) in a.checks.iter().zip(&b.checks) {
        assert_eq!(x.check_id, y.check_id);
        let (u, v) = (x.computed.to_complex(), y.computed.to_complex());
        assert!(
            (u - v).norm() <= 1e-13 * u.norm().max(1e-300),
            "{}: {u} vs {v}",
            x.check_id
        );
    }
}

#[test]
fn all_suite_concatenates_the_individual_suites() {
    let cfg = |suite| SuiteConfig {
        suite,
        size: Some(1),
        closed_form_only: true,
        fixed_clock: true,
        ..SuiteConfig::default()
    };
    let all = run_suite(&cfg(Suite::All)).unwrap();
    let mut pieces: Vec<CheckRecord> = Suite::INDIVIDUAL
        .iter()
        .flat_map(|&s| run_suite(&cfg(s)).unwrap().checks)
        .collect();
    pieces.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    assert_eq!(all.checks.len(), pieces.len());
    assert!(all
        .checks
        .iter()
        .zip(&pieces)
        .all(|(a, b)| a.check_id == b.check_id && a.computed.re.to_bits() == b.computed.re.to_bits()));
    assert_eq!(all.summary.passed + all.summary.failed, all.checks.len());
}
