// Sends Im tau_11 to infinity: rescaled second-order thetas approach the
// semi-abelic limit, and the gluing involution has 2^{2g} fixed points.

use kummer::degeneration::{involution_fixed_points, DegenerationPath, Locus};
use kummer::error::Result;
use kummer::siegel::SiegelPoint;
use kummer::theta::TruncationPolicy;
use num_complex::Complex64;

pub struct DegenerationSummary {
    pub errors: Vec<f64>,
    pub smooth: usize,
    pub singular: usize,
    pub total: u32,
}

pub fn run() -> Result<DegenerationSummary> {
    let policy = TruncationPolicy::default();
    let tau_prime = SiegelPoint::diagonal(&[Complex64::new(0.1, 1.1)])?;
    let b = vec![Complex64::new(0.23, 0.11)];
    let path = DegenerationPath::new(
        tau_prime,
        b,
        Complex64::new(0.17, 3.75),
        vec![Complex64::new(0.09, -0.04)],
    )?;
    let mut errors = Vec::new();
    for t in [4.0, 8.0, 12.0] {
        let err = path.vector_limit_error(t, &policy)?;
        println!("t = {t:>4}: relative error {err:.3e}");
        errors.push(err);
    }
    let points = involution_fixed_points(&path.datum())?;
    let smooth = points.iter().filter(|p| p.locus == Locus::Smooth).count();
    let total = points.iter().map(|p| p.multiplicity).sum();
    println!(
        "fixed points: {smooth} smooth, {} singular, {total} with multiplicity",
        points.len() - smooth
    );
    Ok(DegenerationSummary {
        errors,
        smooth,
        singular: points.len() - smooth,
        total,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
