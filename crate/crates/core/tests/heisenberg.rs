use kummer::heisenberg::{
    act_on_coordinates, coordinate_substitution, group_mul, HeisenbergElement,
};
use kummer::kummer::projective_distance;
use kummer::siegel::{random_cell_point, random_siegel_point_with};
use kummer::theta::{theta_vector, TruncationPolicy};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn generators() -> Vec<HeisenbergElement> {
    let one = Complex64::new(1.0, 0.0);
    [
        ([1, 0], [0, 0]),
        ([0, 1], [0, 0]),
        ([0, 0], [1, 0]),
        ([0, 0], [0, 1]),
    ]
    .iter()
    .map(|(x, l)| HeisenbergElement::new(one, x.to_vec(), l.to_vec()).unwrap())
    .collect()
}

fn substitution_key(w: &HeisenbergElement) -> Vec<(usize, i8)> {
    coordinate_substitution(w)
        .into_iter()
        .map(|(i, s)| (i, (s * w.t().re) as i8))
        .collect()
}

#[test]
fn generators_close_to_sixteen_up_to_sign() {
    let mut seen = vec![HeisenbergElement::identity(2)];
    let mut frontier = seen.clone();
    while let Some(w) = frontier.pop() {
        for g in generators() {
            let next = group_mul(&g, &w).unwrap();
            if !seen.contains(&next) {
                seen.push(next.clone());
                frontier.push(next);
            }
        }
    }
    assert_eq!(seen.len(), 32);
    let mut up_to_sign: Vec<_> = seen
        .iter()
        .map(|w| (w.x().to_vec(), w.l().to_vec()))
        .collect();
    up_to_sign.sort();
    up_to_sign.dedup();
    assert_eq!(up_to_sign.len(), 16);

    let listed: Vec<_> = HeisenbergElement::signed_elements(2)
        .iter()
        .map(substitution_key)
        .collect();
    for w in &seen {
        assert!(listed.contains(&substitution_key(w)));
    }
}

#[test]
fn coordinate_action_is_a_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let v: Vec<Complex64> = (0..4)
        .map(|k| Complex64::new(k as f64 + 1.0, 0.5 - k as f64))
        .collect();
    for _ in 0..50 {
        let a = HeisenbergElement::random_signed(2, &mut rng);
        let b = HeisenbergElement::random_signed(2, &mut rng);
        let ab = group_mul(&a, &b).unwrap();
        let lhs = act_on_coordinates(&a, &act_on_coordinates(&b, &v).unwrap()).unwrap();
        let rhs = act_on_coordinates(&ab, &v).unwrap();
        assert!(projective_distance(&lhs, &rhs) < 1e-15);
    }
}

#[test]
fn half_period_translation_matches_action() {
    let policy = TruncationPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..5 {
        let tau = random_siegel_point_with(2, &mut rng);
        let z: Vec<Complex64> = random_cell_point(&tau, &mut rng).iter().copied().collect();
        let coords = theta_vector(&tau, &z, &policy).unwrap();
        for w in HeisenbergElement::signed_elements(2).iter().take(16) {
            let shifted: Vec<Complex64> = (0..2)
                .map(|i| {
                    let tx: Complex64 = (0..2).map(|j| tau.entry(i, j) * w.x()[j] as f64).sum();
                    z[i] + tx * 0.5 + w.l()[i] as f64 * 0.5
                })
                .collect();
            let moved = theta_vector(&tau, &shifted, &policy).unwrap();
            let acted = act_on_coordinates(w, &coords).unwrap();
            assert!(projective_distance(&moved, &acted) < 1e-9);
        }
    }
}
