// Random elements of Sp(2g, Z) acting on Siegel space, and Riemann's
// relations for the principal period matrix (tau, 1).

use kummer::error::Result;
use kummer::siegel::{
    check_riemann_relations, random_siegel_point, symplectic_act, PeriodMatrix, SymplecticMatrix,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct ActionSummary {
    pub worst_associativity: f64,
    pub accepted: usize,
}

pub fn run() -> Result<ActionSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let tau = random_siegel_point(2, 3);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let g1 = SymplecticMatrix::random_word(2, 8, &mut rng);
        let g2 = SymplecticMatrix::random_word(2, 8, &mut rng);
        let stepwise = symplectic_act(&g1, &symplectic_act(&g2, &tau)?)?;
        let direct = symplectic_act(&g1.compose(&g2)?, &tau)?;
        worst = worst.max((stepwise.matrix() - direct.matrix()).norm());
        println!(
            "min eig Im(gamma tau) = {:.4}",
            direct.min_imag_eigenvalue()
        );
    }
    let accepted = (0..5)
        .filter(|&s| {
            let pm =
                PeriodMatrix::principal(random_siegel_point(2, 100 + s).matrix()).expect("square");
            check_riemann_relations(&pm, 1e-10)
        })
        .count();
    println!("associativity residual {worst:.2e}; Riemann relations hold for {accepted}/5");
    Ok(ActionSummary {
        worst_associativity: worst,
        accepted,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
