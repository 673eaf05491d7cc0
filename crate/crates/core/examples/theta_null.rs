// Detects products of elliptic curves: for tau = diag(tau1, tau2) the
// theta constants lie on exactly one of the ten quadrics q_i.

use kummer::error::Result;
use kummer::kummer::{decomposable_component, thetanull_proximity};
use kummer::siegel::{random_siegel_point, SiegelPoint};
use kummer::theta::TruncationPolicy;
use num_complex::Complex64;

pub fn run() -> Result<Vec<Option<usize>>> {
    let policy = TruncationPolicy::default();
    let mut found = Vec::new();
    for (t1, t2) in [
        (Complex64::new(0.1, 1.2), Complex64::new(-0.3, 0.9)),
        (Complex64::new(0.45, 1.0), Complex64::new(0.0, 1.7)),
    ] {
        let tau = SiegelPoint::diagonal(&[t1, t2])?;
        let prox = thetanull_proximity(&tau, &policy)?;
        let component = decomposable_component(&prox);
        println!(
            "diag({t1}, {t2}): component {component:?}, |q_10| = {:.1e}",
            prox[9]
        );
        found.push(component);
    }
    let generic = thetanull_proximity(&random_siegel_point(2, 2), &policy)?;
    let component = decomposable_component(&generic);
    println!(
        "generic tau: component {component:?}, min |q_i| = {:.2e}",
        generic.iter().copied().fold(f64::MAX, f64::min)
    );
    found.push(component);
    Ok(found)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
