use kummer::cli::{run, EXIT_CERTIFICATION, EXIT_OK, EXIT_VALIDATION};
use serde_json::Value;

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("kummer").chain(args.iter().copied()));
    let v = if out.document.is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&out.document).unwrap()
    };
    (out.code, v)
}

#[test]
fn eval_theta_reports_value() {
    let (code, v) = json(&["eval-theta", "--tau", "[[i]]", "--z", "[0]"]);
    assert_eq!(code, EXIT_OK);
    assert!((v["outputs"]["value"][0].as_f64().unwrap() - 1.0864348112133).abs() < 1e-12);
    assert!(v["truncation_radius"].as_u64().unwrap() > 0);
    assert_eq!(v["inputs"]["tau"][0][0][1].as_f64(), Some(1.0));
}

#[test]
fn eval_theta_with_characteristic_and_sigma() {
    let tau = "[[0.1+1.1i, 0.2], [0.2, -0.1+0.9i]]";
    let (code, v) = json(&[
        "eval-theta",
        "--tau",
        tau,
        "--z",
        "[0.1, 0.2i]",
        "--char",
        "11;11",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["inputs"]["index"], "[11;11]");
    let (code, _) = json(&[
        "eval-theta",
        "--tau",
        tau,
        "--z",
        "[0.1, 0.2i]",
        "--sigma",
        "10",
    ]);
    assert_eq!(code, EXIT_OK);
    let (code, _) = json(&[
        "eval-theta",
        "--tau",
        tau,
        "--z",
        "[0.1, 0.2i]",
        "--sigma",
        "102",
    ]);
    assert_eq!(code, EXIT_VALIDATION);
}

#[test]
fn verify_quartic_passes_and_verbatim_fails() {
    let (code, v) = json(&["verify-quartic", "--seed", "7", "--samples", "20"]);
    assert_eq!(code, EXIT_OK);
    assert!(v["outputs"]["max_relative_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["residuals"].as_array().unwrap().len(), 20);
    let (code, v) = json(&[
        "verify-quartic",
        "--seed",
        "7",
        "--samples",
        "5",
        "--verbatim",
    ]);
    assert_eq!(code, EXIT_CERTIFICATION);
    assert_eq!(v["certified"], false);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["kummer", "verify-quartic", "--seed", "3", "--samples", "4"];
    assert_eq!(run(args).document, run(args).document);
}

#[test]
fn certify_catalog_lists_ten_factorizations() {
    let (code, v) = json(&["certify-catalog"]);
    assert_eq!(code, EXIT_OK);
    let f = v["outputs"]["factorizations"].as_array().unwrap();
    assert_eq!(f.len(), 10);
    assert!(f
        .iter()
        .all(|e| e["p_digest"].as_str().unwrap().len() == 64));
    assert_eq!(v["outputs"]["f_terms"], 127);
}

#[test]
fn thetanull_finds_decomposable_component() {
    let (code, v) = json(&["thetanull", "--tau", "diag(0.1+1.2i, -0.3+0.9i)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["outputs"]["component"], 10);
}

#[test]
fn degenerate_and_fixed_points() {
    let (code, v) = json(&[
        "degenerate",
        "--tau-prime",
        "[[0.1+1.1i]]",
        "--b",
        "[0.23+0.11i]",
        "--z-prime",
        "[0.09-0.04i]",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["outputs"]["strictly_decreasing"], true);
    let (code, v) = json(&[
        "fixed-points",
        "--tau-prime",
        "[[0.1+1.1i]]",
        "--b",
        "[0.3]",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["outputs"]["total_with_multiplicity"], 16);
    let (code, v) = json(&["fixed-points", "--tau-prime", "diag(1.1i, 0.2+1.4i)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["outputs"]["total_with_multiplicity"], 64);
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        vec!["thetanull", "--tau", "[[i, 1], [0, i]]"],
        vec!["thetanull", "--tau", "[[-i, 0], [0, i]]"],
        vec!["thetanull", "--tau", "/no/such/file"],
        vec!["embed", "--tau", "[[i]]", "--z", "[0]"],
        vec!["eval-theta", "--tau", "[[i]]"],
        vec!["eval-theta", "--tau", "[[i]]", "--z", "[0]", "--tol", "-1"],
        vec!["no-such-command"],
    ] {
        let out = run(std::iter::once("kummer").chain(args.iter().copied()));
        assert_eq!(out.code, EXIT_VALIDATION, "{args:?}");
        assert!(out.message.is_some());
    }
    let out = run(["kummer", "thetanull", "--tau", "[[-i, 0], [0, i]]"]);
    assert!(out.message.unwrap().contains("eigenvalue"));
}

#[test]
fn csv_output_and_file_tau() {
    let dir = tempfile::tempdir().unwrap();
    let tau = dir.path().join("tau.txt");
    std::fs::write(&tau, "[[0.1+1.2i, 0.25], [0.25, 0.9i]]\n").unwrap();
    let out_path = dir.path().join("report.csv");
    let out = run([
        "kummer",
        "thetanull",
        "--tau",
        tau.to_str().unwrap(),
        "--output",
        "csv",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.document.is_empty());
    let mut rows = csv::Reader::from_path(&out_path).unwrap();
    assert_eq!(rows.records().count(), 10);
}

#[test]
fn binary_exit_codes_and_environment_tolerance() {
    let bin = env!("CARGO_BIN_EXE_kummer");
    let status = |cmd: &mut std::process::Command| cmd.output().unwrap().status.code();
    assert_eq!(
        status(std::process::Command::new(bin).args([
            "eval-theta",
            "--tau",
            "[[i]]",
            "--z",
            "[0]"
        ])),
        Some(0)
    );
    assert_eq!(
        status(std::process::Command::new(bin).args(["thetanull", "--tau", "[[i]]"])),
        Some(2)
    );
    let strict = std::process::Command::new(bin)
        .args(["verify-quartic", "--samples", "2"])
        .env("KUMMER_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(EXIT_CERTIFICATION));
    let report: Value = serde_json::from_slice(&strict.stdout).unwrap();
    assert_eq!(report["tolerance"].as_f64(), Some(1e-30));
}
