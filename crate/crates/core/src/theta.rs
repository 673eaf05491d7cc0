//! Lattice-sum evaluation of Riemann theta functions, theta functions with
//! characteristics and second-order theta functions.
//!
//! Every series here has the shape
//!
//! ```text
//! sum over k in Z^g + c of  e(1/2 k^T Q k + k^T L),   e(t) = exp(2 pi i t)
//! ```
//!
//! and is truncated to the ball `|k| <= R`. The radius comes from the bound
//! `|term| <= exp(-pi lambda r^2 + 2 pi |Im L| r)` with `lambda` the smallest
//! eigenvalue of `Im Q`, summed over shells `[r, r + 1)` holding at most
//! `(2r + 3)^g` lattice points.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::siegel::{CMatrix, CVector, SiegelPoint};

/// Truncation target for lattice sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    tol: f64,
    max_radius: u32,
}

impl TruncationPolicy {
    pub const DEFAULT_TOL: f64 = 1e-12;
    pub const DEFAULT_MAX_RADIUS: u32 = 60;

    pub fn new(tol: f64, max_radius: u32) -> Result<Self> {
        if tol <= 0.0 || !tol.is_finite() {
            return Err(Error::InvalidPolicy(format!(
                "tol must be positive, got {tol}"
            )));
        }
        if max_radius < 1 {
            return Err(Error::InvalidPolicy("max_radius must be at least 1".into()));
        }
        Ok(Self { tol, max_radius })
    }

    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(tol, Self::DEFAULT_MAX_RADIUS)
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_radius(&self) -> u32 {
        self.max_radius
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tol: Self::DEFAULT_TOL,
            max_radius: Self::DEFAULT_MAX_RADIUS,
        }
    }
}

/// A characteristic `m = (a; b)` with `a, b` in `{0,1}^g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaCharacteristic {
    a: Vec<u8>,
    b: Vec<u8>,
}

impl ThetaCharacteristic {
    pub fn new(a: Vec<u8>, b: Vec<u8>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        if a.is_empty() || a.iter().chain(&b).any(|&v| v > 1) {
            return Err(Error::InvalidCharacteristic);
        }
        Ok(Self { a, b })
    }

    pub fn zero(g: usize) -> Self {
        Self {
            a: vec![0; g],
            b: vec![0; g],
        }
    }

    /// All `4^g` characteristics; `a` is the high half of the index bits.
    pub fn all(g: usize) -> Vec<Self> {
        (0..1usize << (2 * g))
            .map(|idx| Self {
                a: bits(idx >> g, g),
                b: bits(idx, g),
            })
            .collect()
    }

    pub fn genus(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[u8] {
        &self.a
    }

    pub fn b(&self) -> &[u8] {
        &self.b
    }

    /// `a^T b mod 2`: 0 for even, 1 for odd.
    pub fn parity(&self) -> u8 {
        dot_mod2(&self.a, &self.b)
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 0
    }
}

impl std::fmt::Display for ThetaCharacteristic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let row = |v: &[u8]| v.iter().map(|x| x.to_string()).collect::<String>();
        write!(f, "[{};{}]", row(&self.a), row(&self.b))
    }
}

/// Index `sigma` in `{0,1}^g` of a second-order theta function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SecondOrderIndex {
    sigma: Vec<u8>,
}

impl SecondOrderIndex {
    pub fn new(sigma: Vec<u8>) -> Result<Self> {
        if sigma.is_empty() || sigma.iter().any(|&v| v > 1) {
            return Err(Error::InvalidCharacteristic);
        }
        Ok(Self { sigma })
    }

    /// The index at position `idx` of the lexicographic order (first entry most significant).
    pub fn from_position(g: usize, idx: usize) -> Self {
        Self {
            sigma: bits(idx, g),
        }
    }

    pub fn all(g: usize) -> Vec<Self> {
        (0..1usize << g)
            .map(|i| Self::from_position(g, i))
            .collect()
    }

    pub fn genus(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[u8] {
        &self.sigma
    }

    pub fn position(&self) -> usize {
        position(&self.sigma)
    }
}

/// Binary digits of `idx`, most significant first.
pub fn bits(idx: usize, g: usize) -> Vec<u8> {
    (0..g).map(|i| ((idx >> (g - 1 - i)) & 1) as u8).collect()
}

pub fn position(v: &[u8]) -> usize {
    v.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

pub fn dot_mod2(x: &[u8], y: &[u8]) -> u8 {
    x.iter()
        .zip(y)
        .map(|(a, b)| a & b)
        .fold(0, |acc, v| acc ^ v)
}

/// A value of a truncated series with the radius that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEval {
    pub value: Complex64,
    pub radius: u32,
}

/// The series `sum_{k in Z^g + c} e(1/2 k^T Q k + k^T L)`.
#[derive(Debug, Clone)]
pub struct ThetaSeries {
    quad: CMatrix,
    linear: CVector,
    offset: Vec<f64>,
    lambda: f64,
}

impl ThetaSeries {
    fn new(quad: CMatrix, linear: CVector, offset: Vec<f64>) -> Self {
        let lambda = SiegelPoint::new(quad.clone())
            .map(|p| p.min_imag_eigenvalue())
            .unwrap_or(f64::NAN);
        Self {
            quad,
            linear,
            offset,
            lambda,
        }
    }

    /// The series of `theta_m(tau, z)`: `Q = tau`, `L = z + b/2`, `c = a/2`.
    pub fn characteristic(
        m: &ThetaCharacteristic,
        tau: &SiegelPoint,
        z: &[Complex64],
    ) -> Result<Self> {
        check_dims(tau, z)?;
        check_genus(tau, m.genus())?;
        let linear = CVector::from_fn(z.len(), |i, _| {
            z[i] + Complex64::new(0.5 * m.b[i] as f64, 0.0)
        });
        let offset = m.a.iter().map(|&v| 0.5 * v as f64).collect();
        Ok(Self::new(tau.matrix().clone(), linear, offset))
    }

    /// The series of `Theta[sigma](tau, z) = theta_[sigma;0](2 tau, 2 z)`.
    pub fn second_order(s: &SecondOrderIndex, tau: &SiegelPoint, z: &[Complex64]) -> Result<Self> {
        check_dims(tau, z)?;
        check_genus(tau, s.genus())?;
        let linear = CVector::from_fn(z.len(), |i, _| z[i] * 2.0);
        let offset = s.sigma.iter().map(|&v| 0.5 * v as f64).collect();
        Ok(Self::new(tau.matrix().map(|v| v * 2.0), linear, offset))
    }

    pub fn genus(&self) -> usize {
        self.offset.len()
    }

    /// Smallest radius whose tail bound falls below `policy.tol()`.
    pub fn radius(&self, policy: &TruncationPolicy) -> Result<u32> {
        let g = self.genus() as i32;
        let lambda = self.lambda;
        let y = self.linear.iter().map(|v| v.im * v.im).sum::<f64>().sqrt();
        let exponent = |r: f64| -PI * lambda * r * r + 2.0 * PI * y * r;
        let peak = (y / lambda).ceil().max(1.0);
        if !peak.is_finite() || peak > 1e6 {
            return Err(Error::RadiusOverflow {
                required: u32::MAX,
                max_radius: policy.max_radius,
            });
        }
        let tail = |start: u32| {
            let mut total = 0.0;
            let mut r = start as f64;
            loop {
                let term = (2.0 * r + 3.0).powi(g) * exponent(r).exp();
                total += term;
                if term <= total * 1e-17 || term == 0.0 {
                    break total;
                }
                r += 1.0;
            }
        };
        let mut radius = peak as u32;
        loop {
            if tail(radius) < policy.tol {
                break;
            }
            radius += 1;
            if radius > policy.max_radius.saturating_mul(4).max(10_000) {
                break;
            }
        }
        if radius > policy.max_radius {
            return Err(Error::RadiusOverflow {
                required: radius,
                max_radius: policy.max_radius,
            });
        }
        Ok(radius)
    }

    /// The sum over `|k| <= radius`, accumulated shell by shell outward.
    pub fn sum_to_radius(&self, radius: u32) -> Complex64 {
        let g = self.genus();
        let r = radius as f64;
        let bound = radius as i64 + 1;
        let mut shells = vec![Complex64::new(0.0, 0.0); radius as usize + 1];
        let mut n = vec![-bound; g];
        let mut k = vec![0.0; g];
        loop {
            for i in 0..g {
                k[i] = n[i] as f64 + self.offset[i];
            }
            let norm = k.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm <= r {
                shells[(norm.floor() as usize).min(radius as usize)] += self.term(&k);
            }
            // odometer over the box [-bound, bound]^g
            let mut i = 0;
            loop {
                if i == g {
                    return shells
                        .iter()
                        .fold(Complex64::new(0.0, 0.0), |acc, s| acc + s);
                }
                n[i] += 1;
                if n[i] <= bound {
                    break;
                }
                n[i] = -bound;
                i += 1;
            }
        }
    }

    fn term(&self, k: &[f64]) -> Complex64 {
        let g = k.len();
        let mut phase = Complex64::new(0.0, 0.0);
        for i in 0..g {
            let row: Complex64 = k
                .iter()
                .enumerate()
                .map(|(j, kj)| self.quad[(i, j)] * *kj)
                .sum();
            phase += k[i] * (row * 0.5 + self.linear[i]);
        }
        (phase * Complex64::new(0.0, 2.0 * PI)).exp()
    }

    pub fn evaluate(&self, policy: &TruncationPolicy) -> Result<ThetaEval> {
        let radius = self.radius(policy)?;
        Ok(ThetaEval {
            value: self.sum_to_radius(radius),
            radius,
        })
    }
}

fn check_dims(tau: &SiegelPoint, z: &[Complex64]) -> Result<()> {
    if tau.genus() != z.len() {
        return Err(Error::DimensionMismatch {
            expected: tau.genus(),
            found: z.len(),
        });
    }
    Ok(())
}

fn check_genus(tau: &SiegelPoint, g: usize) -> Result<()> {
    if tau.genus() != g {
        return Err(Error::DimensionMismatch {
            expected: tau.genus(),
            found: g,
        });
    }
    Ok(())
}

/// `theta(tau, z) = sum_m e(1/2 m^T tau m + m^T z)`.
pub fn riemann_theta(
    tau: &SiegelPoint,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    Ok(eval_riemann_theta(tau, z, policy)?.value)
}

pub fn eval_riemann_theta(
    tau: &SiegelPoint,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<ThetaEval> {
    let m = ThetaCharacteristic::zero(tau.genus());
    ThetaSeries::characteristic(&m, tau, z)?.evaluate(policy)
}

/// `theta_m(tau, z) = sum_n e(1/2 (n + a/2)^T tau (n + a/2) + (n + a/2)^T (z + b/2))`.
pub fn theta_char(
    m: &ThetaCharacteristic,
    tau: &SiegelPoint,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    Ok(eval_theta_char(m, tau, z, policy)?.value)
}

pub fn eval_theta_char(
    m: &ThetaCharacteristic,
    tau: &SiegelPoint,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<ThetaEval> {
    ThetaSeries::characteristic(m, tau, z)?.evaluate(policy)
}

/// `Theta[sigma](tau, z) = theta_[sigma;0](2 tau, 2 z)`.
pub fn theta_second_order(
    s: &SecondOrderIndex,
    tau: &SiegelPoint,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    Ok(eval_theta_second_order(s, tau, z, policy)?.value)
}

pub fn eval_theta_second_order(
    s: &SecondOrderIndex,
    tau: &SiegelPoint,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<ThetaEval> {
    ThetaSeries::second_order(s, tau, z)?.evaluate(policy)
}

/// The vector `(Theta[sigma](tau, z))_sigma`, sigma in lexicographic order.
pub fn theta_vector(
    tau: &SiegelPoint,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<Vec<Complex64>> {
    Ok(eval_theta_vector(tau, z, policy)?.0)
}

/// Like [`theta_vector`], also returning the largest truncation radius used.
pub fn eval_theta_vector(
    tau: &SiegelPoint,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<(Vec<Complex64>, u32)> {
    let mut radius = 0;
    let values = SecondOrderIndex::all(tau.genus())
        .iter()
        .map(|s| {
            let eval = eval_theta_second_order(s, tau, z, policy)?;
            radius = radius.max(eval.radius);
            Ok(eval.value)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((values, radius))
}

/// `e(tau m + n, z) = exp(-pi i (m^T tau m + 2 m^T z))`.
pub fn automorphy_factor(tau: &SiegelPoint, z: &[Complex64], m: &[i64]) -> Complex64 {
    let g = tau.genus();
    let mut quad = Complex64::new(0.0, 0.0);
    let mut lin = Complex64::new(0.0, 0.0);
    for i in 0..g {
        for j in 0..g {
            quad += tau.entry(i, j) * (m[i] * m[j]) as f64;
        }
        lin += z[i] * m[i] as f64;
    }
    (Complex64::new(0.0, -PI) * (quad + lin * 2.0)).exp()
}

/// Residual of `theta(tau, z + tau m + n) = e(tau m + n, z) theta(tau, z)`,
/// measured after dividing the shifted value by the automorphy factor:
/// `|theta(tau, z + tau m + n) / e(tau m + n, z) - theta(tau, z)| / (1 + |theta(tau, z)|)`.
pub fn quasi_periodicity_residual(
    tau: &SiegelPoint,
    z: &[Complex64],
    m: &[i64],
    n: &[i64],
    policy: &TruncationPolicy,
) -> Result<f64> {
    let g = tau.genus();
    check_dims(tau, z)?;
    for v in [m.len(), n.len()] {
        if v != g {
            return Err(Error::DimensionMismatch {
                expected: g,
                found: v,
            });
        }
    }
    let base = riemann_theta(tau, z, policy)?;
    if m.iter().chain(n).all(|&v| v == 0) {
        return Ok(0.0);
    }
    let shifted: Vec<Complex64> = (0..g)
        .map(|i| {
            let lattice: Complex64 = (0..g).map(|j| tau.entry(i, j) * m[j] as f64).sum();
            z[i] + lattice + n[i] as f64
        })
        .collect();
    let moved = riemann_theta(tau, &shifted, policy)?;
    let factor = automorphy_factor(tau, z, m);
    Ok((moved / factor - base).norm() / (1.0 + base.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::siegel::random_siegel_point;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn i_tau() -> SiegelPoint {
        SiegelPoint::diagonal(&[c(0.0, 1.0)]).unwrap()
    }

    // Independent 1-d oracles: plain real series, no lattice machinery.
    fn oracle_theta_i(sign: f64, scale: f64) -> f64 {
        (-30..=30)
            .map(|n: i32| sign.powi(n.abs()) * (-PI * scale * (n * n) as f64).exp())
            .sum()
    }

    #[test]
    fn theta_at_i_matches_closed_form() {
        let v = riemann_theta(&i_tau(), &[c(0.0, 0.0)], &TruncationPolicy::default()).unwrap();
        // pi^(1/4) / Gamma(3/4)
        let closed = PI.powf(0.25) / 1.225_416_702_465_177_6;
        assert!((oracle_theta_i(1.0, 1.0) - closed).abs() < 1e-14);
        assert!((v - c(1.086_434_811_213_308, 0.0)).norm() < 1e-13);
        assert!((v.re - closed).abs() < 1e-13);
    }

    #[test]
    fn zero_characteristic_is_riemann_theta() {
        let tau = random_siegel_point(2, 1);
        let z = [c(0.1, 0.2), c(-0.3, 0.05)];
        let p = TruncationPolicy::default();
        let lhs = theta_char(&ThetaCharacteristic::zero(2), &tau, &z, &p).unwrap();
        let rhs = riemann_theta(&tau, &z, &p).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn odd_characteristic_vanishes_at_origin() {
        let m = ThetaCharacteristic::new(vec![1], vec![1]).unwrap();
        assert_eq!(m.parity(), 1);
        let v = theta_char(&m, &i_tau(), &[c(0.0, 0.0)], &TruncationPolicy::default()).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn characteristic_zero_one_at_i() {
        let m = ThetaCharacteristic::new(vec![0], vec![1]).unwrap();
        let v = theta_char(&m, &i_tau(), &[c(0.0, 0.0)], &TruncationPolicy::default()).unwrap();
        let oracle = oracle_theta_i(-1.0, 1.0);
        assert!((oracle - 0.913_579_138_156_1).abs() < 1e-12);
        assert!((v - c(oracle, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn second_order_at_i() {
        let s = SecondOrderIndex::new(vec![0]).unwrap();
        let v =
            theta_second_order(&s, &i_tau(), &[c(0.0, 0.0)], &TruncationPolicy::default()).unwrap();
        let oracle = oracle_theta_i(1.0, 2.0);
        assert!((oracle - 1.003_734_885_487_739).abs() < 1e-14);
        assert!((v - c(oracle, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn second_order_matches_characteristic_composition() {
        let tau = random_siegel_point(2, 7);
        let z = [c(0.2, -0.1), c(0.05, 0.15)];
        let p = TruncationPolicy::default();
        let tau2 = tau.scaled(2.0).unwrap();
        let z2: Vec<_> = z.iter().map(|v| v * 2.0).collect();
        for s in SecondOrderIndex::all(2) {
            let m = ThetaCharacteristic::new(s.sigma().to_vec(), vec![0, 0]).unwrap();
            let lhs = theta_second_order(&s, &tau, &z, &p).unwrap();
            let rhs = theta_char(&m, &tau2, &z2, &p).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn block_diagonal_factorizes() {
        let (t1, t2) = (c(0.2, 1.1), c(-0.3, 0.9));
        let tau = SiegelPoint::diagonal(&[t1, t2]).unwrap();
        let e1 = SiegelPoint::diagonal(&[t1]).unwrap();
        let e2 = SiegelPoint::diagonal(&[t2]).unwrap();
        let z = [c(0.1, 0.1), c(0.3, -0.2)];
        let p = TruncationPolicy::default();
        let full = riemann_theta(&tau, &z, &p).unwrap();
        let prod =
            riemann_theta(&e1, &z[..1], &p).unwrap() * riemann_theta(&e2, &z[1..], &p).unwrap();
        assert!((full - prod).norm() < 1e-10);
        for s in SecondOrderIndex::all(2) {
            let s1 = SecondOrderIndex::new(vec![s.sigma()[0]]).unwrap();
            let s2 = SecondOrderIndex::new(vec![s.sigma()[1]]).unwrap();
            let full = theta_second_order(&s, &tau, &z, &p).unwrap();
            let prod = theta_second_order(&s1, &e1, &z[..1], &p).unwrap()
                * theta_second_order(&s2, &e2, &z[1..], &p).unwrap();
            assert!((full - prod).norm() < 1e-10);
        }
    }

    #[test]
    fn integer_shift_invariance() {
        let p = TruncationPolicy::default();
        let z = c(0.37, 0.21);
        let a = riemann_theta(&i_tau(), &[z], &p).unwrap();
        let b = riemann_theta(&i_tau(), &[z + 1.0], &p).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn theta_vector_shape_and_parity() {
        let tau = SiegelPoint::from_rows(&[
            vec![c(0.01, 1.0), c(0.03, 0.02)],
            vec![c(0.03, 0.02), c(-0.02, 1.05)],
        ])
        .unwrap();
        let p = TruncationPolicy::default();
        let u = theta_vector(&tau, &[c(0.0, 0.0); 2], &p).unwrap();
        assert_eq!(u.len(), 4);
        assert!(u.iter().all(|v| v.norm() > 1e-3));
        let z = [c(0.2, 0.1), c(-0.1, 0.3)];
        let mz = [-z[0], -z[1]];
        let x = theta_vector(&tau, &z, &p).unwrap();
        let y = theta_vector(&tau, &mz, &p).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn quasi_periodicity() {
        let p = TruncationPolicy::default();
        let z = [c(0.3, 0.2)];
        assert_eq!(
            quasi_periodicity_residual(&i_tau(), &z, &[0], &[0], &p).unwrap(),
            0.0
        );
        assert!(quasi_periodicity_residual(&i_tau(), &z, &[1], &[0], &p).unwrap() < 1e-10);
        let tau = random_siegel_point(2, 3);
        let z = [c(0.1, -0.05), c(0.2, 0.1)];
        assert!(quasi_periodicity_residual(&tau, &z, &[1, 0], &[0, 1], &p).unwrap() < 1e-9);
    }

    #[test]
    fn radius_overflow_is_reported() {
        let tau = SiegelPoint::diagonal(&[c(0.0, 0.05)]).unwrap();
        let policy = TruncationPolicy::new(1e-12, 5).unwrap();
        assert!(matches!(
            riemann_theta(&tau, &[c(0.0, 0.0)], &policy),
            Err(Error::RadiusOverflow { max_radius: 5, .. })
        ));
    }

    #[test]
    fn doubling_radius_changes_less_than_tol() {
        let p = TruncationPolicy::default();
        for seed in 0..5 {
            let tau = random_siegel_point(2, seed);
            let z = [c(0.2, 0.3), c(-0.4, 0.1)];
            for m in ThetaCharacteristic::all(2) {
                let series = ThetaSeries::characteristic(&m, &tau, &z).unwrap();
                let r = series.radius(&p).unwrap();
                let diff = (series.sum_to_radius(r) - series.sum_to_radius(2 * r)).norm();
                assert!(diff < p.tol(), "diff {diff} at radius {r}");
            }
        }
    }

    #[test]
    fn characteristic_enumeration() {
        let all = ThetaCharacteristic::all(2);
        assert_eq!(all.len(), 16);
        assert_eq!(all.iter().filter(|m| m.is_even()).count(), 10);
        assert!(ThetaCharacteristic::new(vec![2], vec![0]).is_err());
        assert_eq!(SecondOrderIndex::new(vec![1, 0]).unwrap().position(), 2);
    }

    #[test]
    fn invalid_policy() {
        assert!(TruncationPolicy::new(0.0, 10).is_err());
        assert!(TruncationPolicy::new(1e-10, 0).is_err());
    }
}
