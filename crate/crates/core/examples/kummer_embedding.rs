// Maps points of an abelian surface to P^3 x P^3 with second-order theta
// functions, checks that F vanishes on the image, and locates the sixteen
// nodes as the Heisenberg orbit of the theta constants.

use kummer::error::Result;
use kummer::heisenberg::{act_on_coordinates, HeisenbergElement};
use kummer::kummer::{
    addition_formula_residual, build_catalog, evaluate_f, kummer_embed, projective_distance,
    two_torsion_points, EvenCharacteristicTable,
};
use kummer::siegel::{random_cell_point, random_siegel_point};
use kummer::theta::TruncationPolicy;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct EmbeddingSummary {
    pub worst_vanishing: f64,
    pub worst_node_orbit: f64,
    pub worst_addition: f64,
}

pub fn run() -> Result<EmbeddingSummary> {
    let policy = TruncationPolicy::default();
    let cat = build_catalog()?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let tau = random_siegel_point(2, 9);

    let mut worst_vanishing: f64 = 0.0;
    for _ in 0..5 {
        let z: Vec<Complex64> = random_cell_point(&tau, &mut rng).iter().copied().collect();
        let p = kummer_embed(&tau, &z, &policy)?;
        worst_vanishing = worst_vanishing.max(evaluate_f(&cat, &p).relative());
    }

    let origin = kummer_embed(&tau, &[Complex64::new(0.0, 0.0); 2], &policy)?;
    let mut worst_node: f64 = 0.0;
    let elements = HeisenbergElement::signed_elements(2);
    for (w, node) in elements.iter().take(16).zip(two_torsion_points(&tau)?) {
        let image = kummer_embed(&tau, &node, &policy)?;
        let orbit = act_on_coordinates(w, &origin.u)?;
        worst_node = worst_node.max(projective_distance(&image.x, &orbit));
    }

    let mut worst_addition: f64 = 0.0;
    for m in EvenCharacteristicTable::new().entries() {
        worst_addition = worst_addition.max(addition_formula_residual(&tau, m, &policy)?);
    }
    println!("|F|/scale <= {worst_vanishing:.2e}, nodes {worst_node:.2e}, addition formula {worst_addition:.2e}");
    Ok(EmbeddingSummary {
        worst_vanishing,
        worst_node_orbit: worst_node,
        worst_addition,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
