use std::path::PathBuf;

use kummer::kummer::build_catalog;
use kummer::poly::SparsePoly;

fn golden(name: &str) -> SparsePoly {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("golden")
        .join(format!("{name}.poly"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    SparsePoly::parse(&text).unwrap()
}

#[test]
fn catalog_matches_golden_files() {
    let cat = build_catalog().unwrap();
    assert_eq!(cat.kummer, golden("F"));
    for (j, p) in cat.quartics.iter().enumerate() {
        assert_eq!(*p, golden(&format!("P_{j}")), "P_{j}");
    }
    for i in 1..=10 {
        assert_eq!(cat.q[i - 1], golden(&format!("q_{i}")), "q_{i}");
        assert_eq!(cat.f[i - 1], golden(&format!("f_{i}")), "f_{i}");
        assert_eq!(*cat.p(i), golden(&format!("p_{i}")), "p_{i}");
    }
}

#[test]
fn golden_text_is_canonical() {
    let cat = build_catalog().unwrap();
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden/F.poly");
    assert_eq!(std::fs::read_to_string(path).unwrap(), cat.kummer.to_text());
}
