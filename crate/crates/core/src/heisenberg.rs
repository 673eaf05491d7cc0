//! The theta group of `2 * 1_g`, `C^* x (Z/2)^g x (Z/2)^g`, its Schrödinger
//! representation on functions `(Z/2)^g -> C`, and the induced action on
//! second-order theta coordinates.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::theta::{bits, dot_mod2, position};

/// `(t, x, l)` with `l` read as the character `y -> (-1)^{l.y}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergElement {
    t: Complex64,
    x: Vec<u8>,
    l: Vec<u8>,
}

impl HeisenbergElement {
    pub fn new(t: Complex64, x: Vec<u8>, l: Vec<u8>) -> Result<Self> {
        if t == Complex64::new(0.0, 0.0) || !t.is_finite() {
            return Err(Error::ZeroScalar);
        }
        if x.len() != l.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: l.len(),
            });
        }
        if x.is_empty() || x.iter().chain(&l).any(|&v| v > 1) {
            return Err(Error::InvalidCharacteristic);
        }
        Ok(Self { t, x, l })
    }

    pub fn identity(g: usize) -> Self {
        Self {
            t: Complex64::new(1.0, 0.0),
            x: vec![0; g],
            l: vec![0; g],
        }
    }

    /// The `4^g * 2` elements with `t = +-1`, ordered by sign, then `x`, then `l`.
    pub fn signed_elements(g: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(2 << (2 * g));
        for t in [1.0, -1.0] {
            for xi in 0..1usize << g {
                for li in 0..1usize << g {
                    out.push(Self {
                        t: Complex64::new(t, 0.0),
                        x: bits(xi, g),
                        l: bits(li, g),
                    });
                }
            }
        }
        out
    }

    /// Uniform element with `t = +-1`.
    pub fn random_signed<R: Rng + ?Sized>(g: usize, rng: &mut R) -> Self {
        let t = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        Self {
            t: Complex64::new(t, 0.0),
            x: (0..g).map(|_| rng.gen_range(0..=1)).collect(),
            l: (0..g).map(|_| rng.gen_range(0..=1)).collect(),
        }
    }

    pub fn genus(&self) -> usize {
        self.x.len()
    }

    pub fn t(&self) -> Complex64 {
        self.t
    }

    pub fn x(&self) -> &[u8] {
        &self.x
    }

    pub fn l(&self) -> &[u8] {
        &self.l
    }
}

fn check_same_genus(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

fn xor(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(p, q)| p ^ q).collect()
}

fn sign(bit: u8) -> f64 {
    if bit == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `(t, x, l) (t', x', l') = (t t' l'(x), x + x', l + l')`.
pub fn group_mul(w1: &HeisenbergElement, w2: &HeisenbergElement) -> Result<HeisenbergElement> {
    check_same_genus(w1.genus(), w2.genus())?;
    Ok(HeisenbergElement {
        t: w1.t * w2.t * sign(dot_mod2(&w2.l, &w1.x)),
        x: xor(&w1.x, &w2.x),
        l: xor(&w1.l, &w2.l),
    })
}

/// An element of `V = Functions((Z/2)^g, C)`, listed in lexicographic order of the argument.
#[derive(Debug, Clone, PartialEq)]
pub struct SchrodingerVector {
    g: usize,
    values: Vec<Complex64>,
}

impl SchrodingerVector {
    pub fn new(g: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != 1 << g {
            return Err(Error::DimensionMismatch {
                expected: 1 << g,
                found: values.len(),
            });
        }
        Ok(Self { g, values })
    }

    /// The delta function at `sigma`.
    pub fn delta(sigma: &[u8]) -> Self {
        let g = sigma.len();
        let mut values = vec![Complex64::new(0.0, 0.0); 1 << g];
        values[position(sigma)] = Complex64::new(1.0, 0.0);
        Self { g, values }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// `(U_w f)(y) = t l(y) f(x + y)`.
pub fn schrodinger_act(w: &HeisenbergElement, f: &SchrodingerVector) -> Result<SchrodingerVector> {
    check_same_genus(w.genus(), f.genus())?;
    let g = f.genus();
    let values = (0..1usize << g)
        .map(|yi| {
            let y = bits(yi, g);
            w.t * sign(dot_mod2(&w.l, &y)) * f.values[position(&xor(&w.x, &y))]
        })
        .collect();
    Ok(SchrodingerVector { g, values })
}

/// The action on coordinate vectors indexed by `sigma`:
/// `result[sigma] = t (-1)^{(sigma + x).l} coords[sigma + x]`.
pub fn act_on_coordinates(w: &HeisenbergElement, coords: &[Complex64]) -> Result<Vec<Complex64>> {
    let g = w.genus();
    if coords.len() != 1 << g {
        return Err(Error::DimensionMismatch {
            expected: 1 << g,
            found: coords.len(),
        });
    }
    Ok(coordinate_substitution(w)
        .into_iter()
        .map(|(source, s)| w.t * s * coords[source])
        .collect())
}

/// For each target coordinate `sigma`, the source index `sigma + x` and the
/// sign `(-1)^{(sigma + x).l}`, without the scalar `t`.
pub fn coordinate_substitution(w: &HeisenbergElement) -> Vec<(usize, f64)> {
    let g = w.genus();
    (0..1usize << g)
        .map(|si| {
            let shifted = xor(&bits(si, g), &w.x);
            (position(&shifted), sign(dot_mod2(&shifted, &w.l)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn el(t: f64, x: &[u8], l: &[u8]) -> HeisenbergElement {
        HeisenbergElement::new(c(t), x.to_vec(), l.to_vec()).unwrap()
    }

    #[test]
    fn group_law_examples() {
        let w = el(-1.0, &[1, 0], &[1, 1]);
        assert_eq!(group_mul(&HeisenbergElement::identity(2), &w).unwrap(), w);
        assert_eq!(
            group_mul(&el(1.0, &[1], &[0]), &el(1.0, &[0], &[1])).unwrap(),
            el(-1.0, &[1], &[1])
        );
        assert_eq!(
            group_mul(&el(1.0, &[0], &[1]), &el(1.0, &[1], &[0])).unwrap(),
            el(1.0, &[1], &[1])
        );
        for w in HeisenbergElement::signed_elements(2) {
            let sq = group_mul(&w, &w).unwrap();
            let expected = w.t * w.t * sign(dot_mod2(w.l(), w.x()));
            assert_eq!(
                sq,
                HeisenbergElement::new(expected, vec![0, 0], vec![0, 0]).unwrap()
            );
        }
    }

    #[test]
    fn schrodinger_examples() {
        let f = SchrodingerVector::new(2, vec![c(1.0), c(2.0), c(3.0), c(4.0)]).unwrap();
        assert_eq!(
            schrodinger_act(&HeisenbergElement::identity(2), &f).unwrap(),
            f
        );
        let image = schrodinger_act(
            &el(1.0, &[1, 0], &[0, 0]),
            &SchrodingerVector::delta(&[0, 0]),
        )
        .unwrap();
        assert_eq!(image, SchrodingerVector::delta(&[1, 0]));
    }

    fn check_representation(w1: &HeisenbergElement, w2: &HeisenbergElement) {
        let g = w1.genus();
        let prod = group_mul(w1, w2).unwrap();
        for si in 0..1usize << g {
            let f = SchrodingerVector::delta(&bits(si, g));
            let lhs = schrodinger_act(w1, &schrodinger_act(w2, &f).unwrap()).unwrap();
            let rhs = schrodinger_act(&prod, &f).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn representation_exhaustive_g1() {
        let all = HeisenbergElement::signed_elements(1);
        assert_eq!(all.len(), 8);
        let mut pairs = 0;
        for w1 in &all {
            for w2 in &all {
                check_representation(w1, w2);
                pairs += 1;
            }
        }
        assert_eq!(pairs, 64);
    }

    #[test]
    fn representation_sampled_g2() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let w1 = HeisenbergElement::random_signed(2, &mut rng);
            let w2 = HeisenbergElement::random_signed(2, &mut rng);
            check_representation(&w1, &w2);
        }
    }

    #[test]
    fn center_scales() {
        let t = Complex64::new(0.3, -1.7);
        let w = HeisenbergElement::new(t, vec![0, 0], vec![0, 0]).unwrap();
        let f = SchrodingerVector::new(2, vec![c(1.5), Complex64::new(0.0, 2.0), c(-3.0), c(0.25)])
            .unwrap();
        let image = schrodinger_act(&w, &f).unwrap();
        for (a, b) in image.values().iter().zip(f.values()) {
            assert_eq!(*a, t * b);
        }
    }

    #[test]
    fn listed_generator_transformations() {
        let v = [c(1.0), c(2.0), c(3.0), c(4.0)];
        let act = |x: &[u8], l: &[u8]| act_on_coordinates(&el(1.0, x, l), &v).unwrap();
        assert_eq!(act(&[1, 0], &[0, 0]), vec![v[2], v[3], v[0], v[1]]);
        assert_eq!(act(&[0, 1], &[0, 0]), vec![v[1], v[0], v[3], v[2]]);
        assert_eq!(act(&[0, 0], &[1, 0]), vec![v[0], v[1], -v[2], -v[3]]);
        assert_eq!(act(&[0, 0], &[0, 1]), vec![v[0], -v[1], v[2], -v[3]]);
        assert_eq!(act(&[0, 0], &[0, 0]), v.to_vec());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            HeisenbergElement::new(c(0.0), vec![0], vec![0]),
            Err(Error::ZeroScalar)
        );
        assert!(HeisenbergElement::new(c(1.0), vec![2], vec![0]).is_err());
        assert!(group_mul(
            &HeisenbergElement::identity(1),
            &HeisenbergElement::identity(2)
        )
        .is_err());
        assert!(act_on_coordinates(&HeisenbergElement::identity(2), &[c(1.0)]).is_err());
    }
}
