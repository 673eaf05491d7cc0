//! Points of the Siegel upper half space, the integral symplectic group acting
//! on them, and Riemann's relations for period matrices.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Smallest eigenvalue of the imaginary part accepted as positive.
pub const POSITIVITY_THRESHOLD: f64 = 1e-12;

const SYMMETRY_TOL: f64 = 1e-12;
const CONDITION_LIMIT: f64 = 1e12;

/// A symmetric complex `g x g` matrix with positive-definite imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint {
    tau: CMatrix,
}

impl SiegelPoint {
    /// Validates `tau` and stores its symmetrization, so that the stored
    /// matrix is exactly symmetric.
    pub fn new(tau: CMatrix) -> Result<Self> {
        let g = tau.nrows();
        if g == 0 || tau.ncols() != g {
            return Err(Error::DimensionMismatch {
                expected: g.max(1),
                found: tau.ncols(),
            });
        }
        let scale = tau.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let asymmetry = (0..g)
            .flat_map(|i| (0..g).map(move |j| (i, j)))
            .map(|(i, j)| (tau[(i, j)] - tau[(j, i)]).norm())
            .fold(0.0, f64::max);
        if !asymmetry.is_finite() || asymmetry > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric { asymmetry });
        }
        let tau = (&tau + tau.transpose()).map(|v| v * 0.5);
        let min_eigenvalue = min_eigenvalue(&tau.map(|v| v.im));
        if min_eigenvalue.is_nan() || min_eigenvalue <= POSITIVITY_THRESHOLD {
            return Err(Error::NotPositiveDefinite { min_eigenvalue });
        }
        Ok(Self { tau })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let g = rows.len();
        for row in rows {
            if row.len() != g {
                return Err(Error::DimensionMismatch {
                    expected: g,
                    found: row.len(),
                });
            }
        }
        Self::new(CMatrix::from_fn(g, g, |i, j| rows[i][j]))
    }

    /// Block-diagonal point `diag(tau_1, ..., tau_g)` built from elliptic parameters.
    pub fn diagonal(entries: &[Complex64]) -> Result<Self> {
        let g = entries.len();
        Self::new(CMatrix::from_fn(g, g, |i, j| {
            if i == j {
                entries[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn genus(&self) -> usize {
        self.tau.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.tau
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.tau[(i, j)]
    }

    pub fn imag(&self) -> DMatrix<f64> {
        self.tau.map(|v| v.im)
    }

    pub fn min_imag_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.imag())
    }

    /// `k * tau` for a positive real `k`.
    pub fn scaled(&self, k: f64) -> Result<Self> {
        Self::new(self.tau.map(|v| v * k))
    }

    pub fn conjugate(&self) -> CMatrix {
        self.tau.map(|v| v.conj())
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        let g = self.genus();
        (0..g)
            .map(|i| (0..g).map(|j| self.tau[(i, j)]).collect())
            .collect()
    }
}

fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.iter().any(|v| !v.is_finite()) {
        return f64::NAN;
    }
    SymmetricEigen::new(m.clone()).eigenvalues.min()
}

/// An element of `Sp(2g, Z)`, stored as the full `2g x 2g` integer matrix
/// with blocks `(a, b; c, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMatrix {
    g: usize,
    m: DMatrix<i64>,
}

fn standard_form(g: usize) -> DMatrix<i64> {
    DMatrix::from_fn(2 * g, 2 * g, |i, j| {
        if j == i + g {
            1
        } else if i == j + g {
            -1
        } else {
            0
        }
    })
}

impl SymplecticMatrix {
    pub fn new(m: DMatrix<i64>) -> Result<Self> {
        let n = m.nrows();
        if n == 0 || !n.is_multiple_of(2) || m.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n + n % 2,
                found: m.ncols(),
            });
        }
        let j = standard_form(n / 2);
        if &m * &j * m.transpose() != j {
            return Err(Error::NotSymplectic);
        }
        Ok(Self { g: n / 2, m })
    }

    pub fn from_blocks(
        a: &DMatrix<i64>,
        b: &DMatrix<i64>,
        c: &DMatrix<i64>,
        d: &DMatrix<i64>,
    ) -> Result<Self> {
        let g = a.nrows();
        for blk in [a, b, c, d] {
            if blk.nrows() != g || blk.ncols() != g {
                return Err(Error::DimensionMismatch {
                    expected: g,
                    found: blk.nrows().max(blk.ncols()),
                });
            }
        }
        let mut m = DMatrix::zeros(2 * g, 2 * g);
        m.view_mut((0, 0), (g, g)).copy_from(a);
        m.view_mut((0, g), (g, g)).copy_from(b);
        m.view_mut((g, 0), (g, g)).copy_from(c);
        m.view_mut((g, g), (g, g)).copy_from(d);
        Self::new(m)
    }

    pub fn identity(g: usize) -> Self {
        Self {
            g,
            m: DMatrix::identity(2 * g, 2 * g),
        }
    }

    /// The involution `J = (0, 1; -1, 0)`.
    pub fn involution(g: usize) -> Self {
        Self {
            g,
            m: standard_form(g),
        }
    }

    /// `(1, s; 0, 1)` for an integer symmetric `s`.
    pub fn translation(s: &DMatrix<i64>) -> Result<Self> {
        let g = s.nrows();
        Self::from_blocks(
            &DMatrix::identity(g, g),
            s,
            &DMatrix::zeros(g, g),
            &DMatrix::identity(g, g),
        )
    }

    /// `(u, 0; 0, u^-T)` for the elementary matrix `u = 1 + k e_ij`, `i != j`.
    pub fn elementary(g: usize, i: usize, j: usize, k: i64) -> Result<Self> {
        if i == j || i >= g || j >= g {
            return Err(Error::DimensionMismatch {
                expected: g,
                found: i.max(j),
            });
        }
        let mut u = DMatrix::<i64>::identity(g, g);
        u[(i, j)] = k;
        let mut u_inv_t = DMatrix::<i64>::identity(g, g);
        u_inv_t[(j, i)] = -k;
        Self::from_blocks(&u, &DMatrix::zeros(g, g), &DMatrix::zeros(g, g), &u_inv_t)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn matrix(&self) -> &DMatrix<i64> {
        &self.m
    }

    pub fn a(&self) -> DMatrix<i64> {
        self.m.view((0, 0), (self.g, self.g)).into_owned()
    }

    pub fn b(&self) -> DMatrix<i64> {
        self.m.view((0, self.g), (self.g, self.g)).into_owned()
    }

    pub fn c(&self) -> DMatrix<i64> {
        self.m.view((self.g, 0), (self.g, self.g)).into_owned()
    }

    pub fn d(&self) -> DMatrix<i64> {
        self.m.view((self.g, self.g), (self.g, self.g)).into_owned()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.g != other.g {
            return Err(Error::DimensionMismatch {
                expected: self.g,
                found: other.g,
            });
        }
        Ok(Self {
            g: self.g,
            m: &self.m * &other.m,
        })
    }

    pub fn negate(&self) -> Self {
        Self {
            g: self.g,
            m: -&self.m,
        }
    }

    /// A random word of length at most `max_len` in the standard generators:
    /// translations by symmetric matrices with entries in `{-1, 0, 1}`, the
    /// involution `J`, and elementary `GL_g(Z)` embeddings.
    pub fn random_word<R: Rng + ?Sized>(g: usize, max_len: usize, rng: &mut R) -> Self {
        let len = rng.gen_range(0..=max_len);
        let mut word = Self::identity(g);
        for _ in 0..len {
            let generator = match rng.gen_range(0..3) {
                0 => {
                    let mut s = DMatrix::<i64>::zeros(g, g);
                    for i in 0..g {
                        for j in i..g {
                            let v = rng.gen_range(-1..=1);
                            s[(i, j)] = v;
                            s[(j, i)] = v;
                        }
                    }
                    Self::translation(&s).expect("symmetric translation is symplectic")
                }
                1 => Self::involution(g),
                _ if g >= 2 => {
                    let i = rng.gen_range(0..g);
                    let j = (i + rng.gen_range(1..g)) % g;
                    let k = if rng.gen_bool(0.5) { 1 } else { -1 };
                    Self::elementary(g, i, j, k).expect("elementary embedding is symplectic")
                }
                _ => Self::involution(g).negate(),
            };
            word = word.compose(&generator).expect("same genus");
        }
        word
    }
}

fn to_complex(m: &DMatrix<i64>) -> CMatrix {
    m.map(|v| Complex64::new(v as f64, 0.0))
}

/// `gamma . tau = (a tau + b)(c tau + d)^-1`.
pub fn symplectic_act(gamma: &SymplecticMatrix, tau: &SiegelPoint) -> Result<SiegelPoint> {
    if gamma.genus() != tau.genus() {
        return Err(Error::DimensionMismatch {
            expected: gamma.genus(),
            found: tau.genus(),
        });
    }
    let t = tau.matrix();
    let numerator = to_complex(&gamma.a()) * t + to_complex(&gamma.b());
    let denominator = to_complex(&gamma.c()) * t + to_complex(&gamma.d());
    let inverse = denominator
        .clone()
        .try_inverse()
        .ok_or(Error::SingularMatrix)?;
    let condition = denominator.norm() * inverse.norm();
    if !condition.is_finite() || condition > CONDITION_LIMIT {
        return Err(Error::SingularMatrix);
    }
    let image = numerator * inverse;
    SiegelPoint::new((&image + image.transpose()).map(|v| v * 0.5))
}

/// A period matrix `(pi1, pi2)` together with its polarization type.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMatrix {
    pub pi1: CMatrix,
    pub pi2: CMatrix,
    polarization: Vec<u64>,
}

impl PeriodMatrix {
    pub fn new(pi1: CMatrix, pi2: CMatrix, polarization: Vec<u64>) -> Result<Self> {
        let g = polarization.len();
        for m in [&pi1, &pi2] {
            if m.nrows() != g || m.ncols() != g {
                return Err(Error::DimensionMismatch {
                    expected: g,
                    found: m.nrows().max(m.ncols()),
                });
            }
        }
        if polarization.contains(&0) || polarization.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidPolarization);
        }
        Ok(Self {
            pi1,
            pi2,
            polarization,
        })
    }

    /// The normalized period matrix `(tau, 1_g)` of a principal polarization.
    pub fn principal(tau: &CMatrix) -> Result<Self> {
        let g = tau.nrows();
        Self::new(tau.clone(), CMatrix::identity(g, g), vec![1; g])
    }

    pub fn genus(&self) -> usize {
        self.polarization.len()
    }

    pub fn polarization(&self) -> &[u64] {
        &self.polarization
    }
}

/// Checks `pi2 D^-1 pi1^T - pi1 D^-1 pi2^T = 0` entrywise within `tol` and
/// that `i (pi2 D^-1 conj(pi1)^T - pi1 D^-1 conj(pi2)^T)` is positive
/// definite with smallest eigenvalue above `tol`.
pub fn check_riemann_relations(pm: &PeriodMatrix, tol: f64) -> bool {
    let g = pm.genus();
    let d_inv = CMatrix::from_fn(g, g, |i, j| {
        if i == j {
            Complex64::new(1.0 / pm.polarization[i] as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let first = &pm.pi2 * &d_inv * pm.pi1.transpose() - &pm.pi1 * &d_inv * pm.pi2.transpose();
    if first.iter().any(|v| v.norm().is_nan() || v.norm() > tol) {
        return false;
    }
    let second = (&pm.pi2 * &d_inv * pm.pi1.adjoint() - &pm.pi1 * &d_inv * pm.pi2.adjoint())
        .map(|v| v * Complex64::i());
    let hermitian = (&second + second.adjoint()).map(|v| v * 0.5);
    if hermitian.iter().any(|v| !v.is_finite()) {
        return false;
    }
    let eigenvalues = SymmetricEigen::new(hermitian).eigenvalues;
    eigenvalues.min() > tol
}

/// `S + i T` with `S` symmetric, entries uniform in `[-1/2, 1/2]`, and
/// `T = 1 + R R^T / g` for `R` uniform in `[-1/2, 1/2]`.
pub fn random_siegel_point(g: usize, seed: u64) -> SiegelPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_siegel_point_with(g, &mut rng)
}

pub fn random_siegel_point_with<R: Rng + ?Sized>(g: usize, rng: &mut R) -> SiegelPoint {
    let g = g.max(1);
    let mut s = DMatrix::<f64>::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            let v = rng.gen_range(-0.5..=0.5);
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
    }
    let r = DMatrix::<f64>::from_fn(g, g, |_, _| rng.gen_range(-0.5..=0.5));
    let t = DMatrix::<f64>::identity(g, g) + &r * r.transpose() / g as f64;
    let t = (&t + t.transpose()) * 0.5;
    SiegelPoint::new(CMatrix::from_fn(g, g, |i, j| {
        Complex64::new(s[(i, j)], t[(i, j)])
    }))
    .expect("random construction is positive definite")
}

/// A point `tau a + b` of the fundamental cell with `a, b` uniform in `[-1/2, 1/2]^g`.
pub fn random_cell_point<R: Rng + ?Sized>(tau: &SiegelPoint, rng: &mut R) -> CVector {
    let g = tau.genus();
    let a = CVector::from_fn(g, |_, _| Complex64::new(rng.gen_range(-0.5..=0.5), 0.0));
    let b = CVector::from_fn(g, |_, _| Complex64::new(rng.gen_range(-0.5..=0.5), 0.0));
    tau.matrix() * a + b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gl1(a: i64, b: i64, cc: i64, d: i64) -> SymplecticMatrix {
        SymplecticMatrix::new(DMatrix::from_row_slice(2, 2, &[a, b, cc, d])).unwrap()
    }

    #[test]
    fn identity_action_is_trivial() {
        let tau = random_siegel_point(2, 3);
        let image = symplectic_act(&SymplecticMatrix::identity(2), &tau).unwrap();
        assert_eq!(image, tau);
    }

    #[test]
    fn translation_generator_g1() {
        let tau = SiegelPoint::diagonal(&[c(0.0, 1.0)]).unwrap();
        let image = symplectic_act(&gl1(1, 1, 0, 1), &tau).unwrap();
        assert!((image.entry(0, 0) - c(1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn involution_g1() {
        let tau = SiegelPoint::diagonal(&[c(0.0, 2.0)]).unwrap();
        let image = symplectic_act(&gl1(0, 1, -1, 0), &tau).unwrap();
        assert!((image.entry(0, 0) - c(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn negated_matrix_gives_identical_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..20 {
            let tau = random_siegel_point(2, seed);
            let gamma = SymplecticMatrix::random_word(2, 8, &mut rng);
            let lhs = symplectic_act(&gamma, &tau).unwrap();
            let rhs = symplectic_act(&gamma.negate(), &tau).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rejects_non_symplectic() {
        let m = DMatrix::from_row_slice(2, 2, &[1, 1, 1, 1]);
        assert_eq!(SymplecticMatrix::new(m), Err(Error::NotSymplectic));
        let m = DMatrix::from_row_slice(2, 2, &[2, 0, 0, 1]);
        assert_eq!(SymplecticMatrix::new(m), Err(Error::NotSymplectic));
    }

    #[test]
    fn random_words_are_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in 1..=3 {
            for _ in 0..20 {
                let w = SymplecticMatrix::random_word(g, 8, &mut rng);
                assert!(SymplecticMatrix::new(w.matrix().clone()).is_ok());
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let tau = random_siegel_point(1, 0);
        assert!(matches!(
            symplectic_act(&SymplecticMatrix::identity(2), &tau),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn siegel_point_validation() {
        let bad =
            CMatrix::from_row_slice(2, 2, &[c(0.0, 1.0), c(0.1, 0.0), c(0.2, 0.0), c(0.0, 1.0)]);
        assert!(matches!(
            SiegelPoint::new(bad),
            Err(Error::NotSymmetric { .. })
        ));
        let bad = CMatrix::from_row_slice(1, 1, &[c(0.3, -1.0)]);
        match SiegelPoint::new(bad) {
            Err(Error::NotPositiveDefinite { min_eigenvalue }) => {
                assert!((min_eigenvalue + 1.0).abs() < 1e-15)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn random_point_is_deterministic_and_valid() {
        assert_eq!(random_siegel_point(2, 42), random_siegel_point(2, 42));
        assert_ne!(random_siegel_point(2, 42), random_siegel_point(2, 43));
        for seed in 0..50 {
            let tau = random_siegel_point(1, seed);
            assert!(tau.entry(0, 0).im >= 1.0);
            assert!(tau.entry(0, 0).re.abs() <= 0.5);
            let tau = random_siegel_point(3, seed);
            assert!(SiegelPoint::new(tau.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn riemann_relations_examples() {
        for seed in 0..10 {
            let tau = random_siegel_point(2, seed);
            let pm = PeriodMatrix::principal(tau.matrix()).unwrap();
            assert!(check_riemann_relations(&pm, 1e-10));

            let mut skew = tau.matrix().clone();
            skew[(0, 1)] += c(0.05, 0.0);
            let pm = PeriodMatrix::principal(&skew).unwrap();
            assert!(!check_riemann_relations(&pm, 1e-10));

            let pm = PeriodMatrix::principal(&tau.conjugate()).unwrap();
            assert!(!check_riemann_relations(&pm, 1e-10));
        }
    }

    #[test]
    fn polarization_type_divisibility() {
        let z = CMatrix::identity(2, 2);
        assert!(PeriodMatrix::new(z.clone(), z.clone(), vec![1, 2]).is_ok());
        assert_eq!(
            PeriodMatrix::new(z.clone(), z.clone(), vec![2, 3]),
            Err(Error::InvalidPolarization)
        );
        assert_eq!(
            PeriodMatrix::new(z.clone(), z, vec![0, 2]),
            Err(Error::InvalidPolarization)
        );
    }

    #[test]
    fn non_principal_polarization() {
        // (tau, D) for D = diag(1, 2) satisfies the relations of type D.
        let tau = random_siegel_point(2, 9);
        let d =
            CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
        let pm = PeriodMatrix::new(tau.matrix().clone(), d, vec![1, 2]).unwrap();
        assert!(check_riemann_relations(&pm, 1e-10));
    }
}
