mod theta_values {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/theta_values.rs"
    ));
}
mod symplectic_action {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/symplectic_action.rs"
    ));
}
mod heisenberg_action {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/heisenberg_action.rs"
    ));
}
mod universal_quartic {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/universal_quartic.rs"
    ));
}
mod kummer_embedding {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/kummer_embedding.rs"
    ));
}
mod theta_null {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/theta_null.rs"
    ));
}
mod degeneration {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/degeneration.rs"
    ));
}
mod json_report {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/json_report.rs"
    ));
}

#[test]
fn theta_values_example_runs() {
    let s = theta_values::run().unwrap();
    assert!((s.theta_i - 1.086434811213308).abs() < 1e-13);
    assert!(s.radius >= 1);
    assert!(
        s.worst_parity < 1e-12 && s.worst_odd_constant < 1e-12 && s.worst_quasi_periodicity < 1e-9
    );
}

#[test]
fn symplectic_action_example_runs() {
    let s = symplectic_action::run().unwrap();
    assert!(s.worst_associativity < 1e-10);
    assert_eq!(s.accepted, 5);
}

#[test]
fn heisenberg_action_example_runs() {
    let s = heisenberg_action::run().unwrap();
    assert_eq!(s.elements, 32);
    assert!(s.worst_translation < 1e-9);
    assert_eq!(s.commutator, num_complex::Complex64::new(-1.0, 0.0));
}

#[test]
fn universal_quartic_example_runs() {
    let cat = universal_quartic::run().unwrap();
    assert_eq!(cat.kummer.len(), 127);
    let dir = tempfile::tempdir().unwrap();
    universal_quartic::export(&cat, dir.path()).unwrap();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 36);
}

#[test]
fn kummer_embedding_example_runs() {
    let s = kummer_embedding::run().unwrap();
    assert!(s.worst_vanishing < 1e-8);
    assert!(s.worst_node_orbit < 1e-9);
    assert!(s.worst_addition < 1e-10);
}

#[test]
fn theta_null_example_runs() {
    assert_eq!(theta_null::run().unwrap(), vec![Some(10), Some(10), None]);
}

#[test]
fn degeneration_example_runs() {
    let s = degeneration::run().unwrap();
    assert!(s.errors.windows(2).all(|w| w[1] < w[0]));
    assert!(s.errors[2] < 1e-8);
    assert_eq!((s.smooth, s.singular, s.total), (8, 4, 16));
}

#[test]
fn json_report_example_runs() {
    let v = json_report::run().unwrap();
    let re = v["outputs"]["value"][0].as_f64().unwrap();
    assert!((re - 1.0864348112133).abs() < 1e-12);
}
