// Builds the universal Kummer quartic F(u, x) exactly and prints its
// factorization over each quadric q_i of the theta-null divisor.
//
// `cargo run --example universal_quartic -- DIR` also writes every
// polynomial of the catalog to DIR in the text format of `SparsePoly`.

use std::path::Path;

use kummer::error::{Error, Result};
use kummer::kummer::{build_catalog, QuarticCatalog};

pub fn export(cat: &QuarticCatalog, dir: &Path) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut files = vec![("F".to_string(), &cat.kummer)];
    for (j, p) in cat.quartics.iter().enumerate() {
        files.push((format!("P_{j}"), p));
    }
    for i in 0..10 {
        files.push((format!("q_{}", i + 1), &cat.q[i]));
        files.push((format!("f_{}", i + 1), &cat.f[i]));
        files.push((format!("p_{}", i + 1), cat.p(i + 1)));
    }
    for (name, p) in files {
        std::fs::write(dir.join(format!("{name}.poly")), p.to_text()).map_err(io)?;
    }
    Ok(())
}

pub fn run() -> Result<QuarticCatalog> {
    let cat = build_catalog()?;
    let (mono, coef) = cat.kummer.leading_term().expect("F is nonzero");
    println!(
        "F: {} terms, bidegree {:?}, leading coefficient {coef} on {:?}",
        cat.kummer.len(),
        cat.kummer.bidegree(),
        mono.0
    );
    for (i, fz) in cat.factorizations.iter().enumerate() {
        println!(
            "q_{:<2} = {:<28} F = {} * p_{} * ({})^2 / {}  mod q_{}, p has {} terms",
            i + 1,
            cat.q[i].to_string(),
            fz.multiplier,
            i + 1,
            cat.f[i],
            fz.reduction.denominator,
            i + 1,
            fz.p.len()
        );
    }
    Ok(cat)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let cat = run()?;
    if let Some(dir) = std::env::args().nth(1) {
        export(&cat, Path::new(&dir))?;
        println!("wrote catalog to {dir}");
    }
    Ok(())
}
