//! Torus-rank-1 degenerations: the semi-abelic theta function, limits of
//! second-order theta coordinates as `Im tau_11 -> infinity`, and the fixed
//! points of the gluing involution `j(z, x) = (-(z + b), 1/x)`.
//!
//! Coordinates on the smooth part are `(z, x)` with `z` on the universal cover
//! of `B = C^{g-1} / (tau' Z^{g-1} + Z^{g-1})` and `x` in `C^*`; the lattice
//! acts by `(n, m) . (z, x) = (z + tau' n + m, e(-n^T b) x)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::siegel::{CMatrix, SiegelPoint};
use crate::theta::{bits, riemann_theta, theta_second_order, SecondOrderIndex, TruncationPolicy};

/// Tolerance used to certify fixed points of the involution.
pub const FIXED_POINT_TOL: f64 = 1e-10;

/// `e(t) = exp(2 pi i t)`.
pub fn e(t: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * t).exp()
}

/// A semi-abelic variety `X(B, b)` with a fiber coordinate `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiAbelicDatum {
    tau_prime: SiegelPoint,
    b: Vec<Complex64>,
    q: Complex64,
}

impl SemiAbelicDatum {
    pub fn new(tau_prime: SiegelPoint, b: Vec<Complex64>, q: Complex64) -> Result<Self> {
        if b.len() != tau_prime.genus() {
            return Err(Error::DimensionMismatch {
                expected: tau_prime.genus(),
                found: b.len(),
            });
        }
        Ok(Self { tau_prime, b, q })
    }

    /// Dimension `g` of the degenerate variety.
    pub fn genus(&self) -> usize {
        self.tau_prime.genus() + 1
    }

    pub fn tau_prime(&self) -> &SiegelPoint {
        &self.tau_prime
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn with_q(&self, q: Complex64) -> Self {
        Self { q, ..self.clone() }
    }

    fn check(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.b.len() {
            return Err(Error::DimensionMismatch {
                expected: self.b.len(),
                found: z.len(),
            });
        }
        Ok(())
    }
}

fn add(a: &[Complex64], b: &[Complex64], k: f64) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x + y * k).collect()
}

/// `theta(tau', z') + q theta(tau', z' + b)`.
pub fn semiabelic_theta(
    d: &SemiAbelicDatum,
    z_prime: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    d.check(z_prime)?;
    let base = riemann_theta(&d.tau_prime, z_prime, policy)?;
    if d.q == Complex64::new(0.0, 0.0) {
        return Ok(base);
    }
    let shifted = riemann_theta(&d.tau_prime, &add(z_prime, &d.b, 1.0), policy)?;
    Ok(base + d.q * shifted)
}

/// Limits of `Theta[sigma]`: entry `(0, eps)` is
/// `Theta[eps](tau', z') + q^2 Theta[eps](tau', z' + b)` and entry `(1, eps)` is
/// `q Theta[eps](tau', z' + b/2)`, in the lexicographic order of `theta_vector`.
pub fn degenerate_theta_vector(
    d: &SemiAbelicDatum,
    z_prime: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<Vec<Complex64>> {
    d.check(z_prime)?;
    let h = d.tau_prime.genus();
    let shift_full = add(z_prime, &d.b, 1.0);
    let shift_half = add(z_prime, &d.b, 0.5);
    let mut lower = Vec::with_capacity(1 << h);
    let mut upper = Vec::with_capacity(1 << h);
    for eps in SecondOrderIndex::all(h) {
        let at = |z: &[Complex64]| theta_second_order(&eps, &d.tau_prime, z, policy);
        lower.push(at(z_prime)? + d.q * d.q * at(&shift_full)?);
        upper.push(d.q * at(&shift_half)?);
    }
    lower.extend(upper);
    Ok(lower)
}

/// `j(z, x) = (-(z + b), 1/x)`.
pub fn involution_apply(
    d: &SemiAbelicDatum,
    z: &[Complex64],
    x: Complex64,
) -> Result<(Vec<Complex64>, Complex64)> {
    d.check(z)?;
    if x == Complex64::new(0.0, 0.0) || !x.is_finite() {
        return Err(Error::ZeroFiberCoordinate);
    }
    let image = z.iter().zip(&d.b).map(|(zi, bi)| -(zi + bi)).collect();
    Ok((image, x.inv()))
}

/// Real coordinates `(n, m)` with `w = tau' n + m`.
fn lattice_coordinates(tau: &SiegelPoint, w: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
    let g = w.len();
    let im = tau.imag();
    let re = tau.matrix().map(|v| v.re);
    let rhs = DMatrix::from_fn(g, 1, |i, _| w[i].im);
    let n = im
        .clone()
        .lu()
        .solve(&rhs)
        .map(|s| s.iter().copied().collect::<Vec<_>>())
        .unwrap_or_else(|| vec![f64::NAN; g]);
    let m = (0..g)
        .map(|i| w[i].re - (0..g).map(|j| re[(i, j)] * n[j]).sum::<f64>())
        .collect();
    (n, m)
}

fn distance_to_integers(v: &[f64]) -> f64 {
    v.iter().map(|x| (x - x.round()).abs()).fold(0.0, f64::max)
}

/// How far `(z, x)` is from being fixed by `j` modulo the lattice action:
/// the distance of `z_j - z` from `tau' Z + Z`, combined with the mismatch
/// of the fiber coordinate under the matching lattice element.
pub fn smooth_fixedness_residual(
    d: &SemiAbelicDatum,
    z: &[Complex64],
    x: Complex64,
) -> Result<f64> {
    let (zj, xj) = involution_apply(d, z, x)?;
    let diff: Vec<Complex64> = zj.iter().zip(z).map(|(a, b)| a - b).collect();
    let (n, m) = lattice_coordinates(&d.tau_prime, &diff);
    let lattice = distance_to_integers(&n).max(distance_to_integers(&m));
    let phase: Complex64 = n.iter().zip(&d.b).map(|(ni, bi)| bi * ni.round()).sum();
    let fiber = (xj - e(-phase) * x).norm() / x.norm();
    Ok(lattice.max(fiber))
}

/// On the singular locus the zero and infinity sections are glued by
/// `(z', 0) ~ (z' - b, infinity)`, so `j` descends to `z -> -z`.
pub fn singular_involution(z: &[Complex64]) -> Vec<Complex64> {
    z.iter().map(|v| -v).collect()
}

pub fn singular_fixedness_residual(d: &SemiAbelicDatum, z: &[Complex64]) -> Result<f64> {
    d.check(z)?;
    let diff: Vec<Complex64> = singular_involution(z)
        .iter()
        .zip(z)
        .map(|(a, b)| a - b)
        .collect();
    let (n, m) = lattice_coordinates(&d.tau_prime, &diff);
    Ok(distance_to_integers(&n).max(distance_to_integers(&m)))
}

/// The fiber point `x` on the zero set of `theta(tau', z) + x theta(tau', z + b)` over `z`.
pub fn zero_set_fiber(
    d: &SemiAbelicDatum,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    d.check(z)?;
    let top = riemann_theta(&d.tau_prime, z, policy)?;
    let bottom = riemann_theta(&d.tau_prime, &add(z, &d.b, 1.0), policy)?;
    if bottom.norm() == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok(-top / bottom)
}

/// Relative value of the zero-set equation at `j(z, x)`, where `x` solves it over `z`.
pub fn zero_set_image_residual(
    d: &SemiAbelicDatum,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<f64> {
    let x = zero_set_fiber(d, z, policy)?;
    let (zj, xj) = involution_apply(d, z, x)?;
    let a = riemann_theta(&d.tau_prime, &zj, policy)?;
    let b = xj * riemann_theta(&d.tau_prime, &add(&zj, &d.b, 1.0), policy)?;
    Ok((a + b).norm() / (a.norm() + b.norm()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locus {
    Smooth,
    Singular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvolutionFixedPoint {
    pub locus: Locus,
    pub z: Vec<Complex64>,
    /// Fiber coordinate; `None` on the singular locus.
    pub x: Option<Complex64>,
    pub multiplicity: u32,
    /// Certification residual, below [`FIXED_POINT_TOL`].
    pub residual: f64,
}

/// Fixed points of `j`, each certified.
///
/// Smooth locus: `2z = -(tau' eps + delta + b)` and `x^2 = e(eps^T b)`, giving
/// `2^{2g-1}` points. Singular locus: `2z = -(tau' eps + delta)`, giving
/// `2^{2(g-1)}` points of multiplicity 2.
pub fn involution_fixed_points(d: &SemiAbelicDatum) -> Result<Vec<InvolutionFixedPoint>> {
    let h = d.tau_prime.genus();
    let tau = d.tau_prime.matrix();
    let mut out = Vec::with_capacity(3 << (2 * h));
    let half_period = |eps: &[u8], delta: &[u8], b: Option<&[Complex64]>| -> Vec<Complex64> {
        (0..h)
            .map(|i| {
                let te: Complex64 = (0..h).map(|j| tau[(i, j)] * eps[j] as f64).sum();
                let shift = b.map(|b| b[i]).unwrap_or_default();
                -(te + delta[i] as f64 + shift) * 0.5
            })
            .collect()
    };
    for ei in 0..1usize << h {
        let eps = bits(ei, h);
        let phase: Complex64 = eps.iter().zip(&d.b).map(|(&a, bi)| bi * a as f64).sum();
        let root = e(phase * 0.5);
        for di in 0..1usize << h {
            let delta = bits(di, h);
            let z = half_period(&eps, &delta, Some(&d.b));
            for x in [root, -root] {
                let residual = smooth_fixedness_residual(d, &z, x)?;
                certify_fixed(residual)?;
                out.push(InvolutionFixedPoint {
                    locus: Locus::Smooth,
                    z: z.clone(),
                    x: Some(x),
                    multiplicity: 1,
                    residual,
                });
            }
        }
    }
    for ei in 0..1usize << h {
        let eps = bits(ei, h);
        for di in 0..1usize << h {
            let z = half_period(&eps, &bits(di, h), None);
            let residual = singular_fixedness_residual(d, &z)?;
            certify_fixed(residual)?;
            out.push(InvolutionFixedPoint {
                locus: Locus::Singular,
                z,
                x: None,
                multiplicity: 2,
                residual,
            });
        }
    }
    Ok(out)
}

fn certify_fixed(residual: f64) -> Result<()> {
    if residual < FIXED_POINT_TOL {
        Ok(())
    } else {
        Err(Error::Certification(format!(
            "fixed point residual {residual:e} exceeds {FIXED_POINT_TOL:e}"
        )))
    }
}

/// A path `tau(t) = ((i t, b^T); (b, tau'))`, `z(t) = (z_1 - i t / 2, z')`
/// along which theta functions degenerate. `q = e(z_1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerationPath {
    pub tau_prime: SiegelPoint,
    pub b: Vec<Complex64>,
    pub z1: Complex64,
    pub z_prime: Vec<Complex64>,
}

impl DegenerationPath {
    pub fn new(
        tau_prime: SiegelPoint,
        b: Vec<Complex64>,
        z1: Complex64,
        z_prime: Vec<Complex64>,
    ) -> Result<Self> {
        let h = tau_prime.genus();
        for len in [b.len(), z_prime.len()] {
            if len != h {
                return Err(Error::DimensionMismatch {
                    expected: h,
                    found: len,
                });
            }
        }
        Ok(Self {
            tau_prime,
            b,
            z1,
            z_prime,
        })
    }

    pub fn datum(&self) -> SemiAbelicDatum {
        SemiAbelicDatum {
            tau_prime: self.tau_prime.clone(),
            b: self.b.clone(),
            q: e(self.z1),
        }
    }

    pub fn period(&self, t: f64) -> Result<SiegelPoint> {
        let h = self.tau_prime.genus();
        let tau = CMatrix::from_fn(h + 1, h + 1, |i, j| match (i, j) {
            (0, 0) => Complex64::new(0.0, t),
            (0, j) => self.b[j - 1],
            (i, 0) => self.b[i - 1],
            (i, j) => self.tau_prime.entry(i - 1, j - 1),
        });
        SiegelPoint::new(tau)
    }

    pub fn argument(&self, t: f64) -> Vec<Complex64> {
        std::iter::once(self.z1 - Complex64::new(0.0, 0.5 * t))
            .chain(self.z_prime.iter().copied())
            .collect()
    }

    /// `theta(tau(t), z(t))`.
    pub fn rescaled_theta(&self, t: f64, policy: &TruncationPolicy) -> Result<Complex64> {
        riemann_theta(&self.period(t)?, &self.argument(t), policy)
    }

    /// `Theta[sigma](tau(t), z(t))`, with the entries `sigma_1 = 1` multiplied by `e(tau_11 / 4)`.
    pub fn rescaled_theta_vector(
        &self,
        t: f64,
        policy: &TruncationPolicy,
    ) -> Result<Vec<Complex64>> {
        let tau = self.period(t)?;
        let z = self.argument(t);
        let g = tau.genus();
        let factor = e(Complex64::new(0.0, t) * 0.25);
        SecondOrderIndex::all(g)
            .iter()
            .map(|s| {
                let v = theta_second_order(s, &tau, &z, policy)?;
                Ok(if s.sigma()[0] == 1 { v * factor } else { v })
            })
            .collect()
    }

    /// `|theta(tau(t), z(t)) - limit| / |limit|`.
    pub fn theta_limit_error(&self, t: f64, policy: &TruncationPolicy) -> Result<f64> {
        let limit = semiabelic_theta(&self.datum(), &self.z_prime, policy)?;
        Ok((self.rescaled_theta(t, policy)? - limit).norm() / limit.norm())
    }

    /// Largest componentwise relative error of the rescaled vector against
    /// [`degenerate_theta_vector`].
    pub fn vector_limit_error(&self, t: f64, policy: &TruncationPolicy) -> Result<f64> {
        let limit = degenerate_theta_vector(&self.datum(), &self.z_prime, policy)?;
        let value = self.rescaled_theta_vector(t, policy)?;
        Ok(value
            .iter()
            .zip(&limit)
            .map(|(v, l)| (v - l).norm() / l.norm())
            .fold(0.0, f64::max))
    }
}
