// The theta group of level 2 acting on second-order theta coordinates:
// translating z by a two-torsion point permutes and signs the coordinates.

use kummer::error::Result;
use kummer::heisenberg::{act_on_coordinates, group_mul, HeisenbergElement};
use kummer::kummer::projective_distance;
use kummer::siegel::random_siegel_point;
use kummer::theta::{theta_vector, TruncationPolicy};
use num_complex::Complex64;

pub struct HeisenbergSummary {
    pub elements: usize,
    pub worst_translation: f64,
    pub commutator: Complex64,
}

pub fn run() -> Result<HeisenbergSummary> {
    let policy = TruncationPolicy::default();
    let tau = random_siegel_point(2, 5);
    let z = [Complex64::new(0.11, -0.05), Complex64::new(0.02, 0.13)];
    let coords = theta_vector(&tau, &z, &policy)?;
    let elements = HeisenbergElement::signed_elements(2);
    let mut worst: f64 = 0.0;
    for w in elements.iter().take(16) {
        let shifted: Vec<Complex64> = (0..2)
            .map(|i| {
                let tx: Complex64 = (0..2).map(|j| tau.entry(i, j) * w.x()[j] as f64).sum();
                z[i] + tx * 0.5 + w.l()[i] as f64 * 0.5
            })
            .collect();
        let moved = theta_vector(&tau, &shifted, &policy)?;
        let acted = act_on_coordinates(w, &coords)?;
        worst = worst.max(projective_distance(&moved, &acted));
    }
    let a = HeisenbergElement::new(Complex64::new(1.0, 0.0), vec![1, 0], vec![0, 0])?;
    let b = HeisenbergElement::new(Complex64::new(1.0, 0.0), vec![0, 0], vec![1, 0])?;
    let ab = group_mul(&a, &b)?;
    let ba = group_mul(&b, &a)?;
    let commutator = ab.t() / ba.t();
    println!(
        "{} signed elements; translation residual {worst:.2e}; [a, b] = {commutator}",
        elements.len()
    );
    Ok(HeisenbergSummary {
        elements: elements.len(),
        worst_translation: worst,
        commutator,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
