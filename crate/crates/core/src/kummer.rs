//! The universal Kummer quartic of principally polarized abelian surfaces.
//!
//! `F(u, x)` is the determinant of a `5 x 5` matrix whose first row holds the
//! Heisenberg-invariant quartics `P_0..P_4` in `x` and whose other rows hold
//! cubic monomials in `u`. On each of the ten components `{q_i(u) = 0}` of the
//! theta-null divisor, `F` restricts to `p_i(u) f_i(x)^2`; [`build_catalog`]
//! recomputes every `p_i` and certifies each factorization exactly.

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::heisenberg::{coordinate_substitution, HeisenbergElement};
use crate::poly::{
    det5, divide_exact, reduce_mod_quadric, u_var, x_var, Reduction, SparsePoly, TermOrder, NVARS,
};
use crate::siegel::SiegelPoint;
use crate::theta::{
    eval_theta_vector, theta_char, theta_vector, ThetaCharacteristic, TruncationPolicy,
};

/// Normalized quadric values below this flag a decomposable surface.
pub const DECOMPOSABLE_THRESHOLD: f64 = 1e-8;

/// Which version of the `(4, 4)` entry of the matrix to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixVariant {
    /// `u01^2 u10`, cubic like the rest of its row.
    Corrected,
    /// `u01^2 u10^2`, a quintic entry; F built from it does not vanish on Kummer surfaces.
    Verbatim,
}

/// The ten even characteristics at genus 2 in the order `m_1..m_10`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenCharacteristicTable {
    entries: Vec<ThetaCharacteristic>,
}

impl EvenCharacteristicTable {
    pub fn new() -> Self {
        const TABLE: [([u8; 2], [u8; 2]); 10] = [
            ([0, 0], [0, 0]),
            ([0, 0], [0, 1]),
            ([0, 0], [1, 0]),
            ([0, 0], [1, 1]),
            ([0, 1], [0, 0]),
            ([0, 1], [1, 0]),
            ([1, 0], [0, 0]),
            ([1, 0], [0, 1]),
            ([1, 1], [0, 0]),
            ([1, 1], [1, 1]),
        ];
        let entries = TABLE
            .iter()
            .map(|(a, b)| ThetaCharacteristic::new(a.to_vec(), b.to_vec()).expect("valid entries"))
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[ThetaCharacteristic] {
        &self.entries
    }

    /// `m_i` for `i` in `1..=10`.
    pub fn get(&self, i: usize) -> &ThetaCharacteristic {
        &self.entries[i - 1]
    }
}

impl Default for EvenCharacteristicTable {
    fn default() -> Self {
        Self::new()
    }
}

fn u(i: usize) -> SparsePoly {
    SparsePoly::var(u_var(i))
}

fn x(i: usize) -> SparsePoly {
    SparsePoly::var(x_var(i))
}

fn sum(items: impl IntoIterator<Item = SparsePoly>) -> SparsePoly {
    items.into_iter().fold(SparsePoly::zero(), |a, b| a + b)
}

fn k(c: i64) -> BigInt {
    BigInt::from(c)
}

/// `prod vars[i]^e[i]` over the `u` variables.
fn u_mono(e: [u16; 4]) -> SparsePoly {
    let powers: Vec<(usize, u16)> = (0..4).map(|i| (u_var(i), e[i])).collect();
    SparsePoly::monomial(1, &powers)
}

/// `P_0..P_4`.
pub fn heisenberg_quartics() -> [SparsePoly; 5] {
    let sq = |i: usize| x(i).pow(2);
    [
        sum((0..4).map(|i| x(i).pow(4))),
        (&sq(0) * &sq(1) + &sq(2) * &sq(3)).scale(&k(2)),
        (&sq(0) * &sq(2) + &sq(1) * &sq(3)).scale(&k(2)),
        (&sq(0) * &sq(3) + &sq(1) * &sq(2)).scale(&k(2)),
        (&(&x(0) * &x(1)) * &(&x(2) * &x(3))).scale(&k(4)),
    ]
}

/// Quadrics in the variables produced by `var`, in the shared order of
/// `q_1..q_10` and `f_1..f_10`, without the factor 2 on entries 5..10.
fn quadric_family(var: fn(usize) -> SparsePoly) -> [SparsePoly; 10] {
    let sq = |i: usize| var(i).pow(2);
    let pr = |i: usize, j: usize| &var(i) * &var(j);
    [
        sq(0) + sq(1) + sq(2) + sq(3),
        sq(0) - sq(1) + sq(2) - sq(3),
        sq(0) + sq(1) - sq(2) - sq(3),
        sq(0) - sq(1) - sq(2) + sq(3),
        pr(0, 1) + pr(2, 3),
        pr(0, 1) - pr(2, 3),
        pr(0, 2) + pr(1, 3),
        pr(0, 2) - pr(1, 3),
        pr(1, 2) + pr(0, 3),
        pr(0, 3) - pr(1, 2),
    ]
}

/// `q_1..q_10`: the theta-null components written in second-order theta constants.
pub fn theta_null_quadrics() -> [SparsePoly; 10] {
    let mut q = quadric_family(u);
    for p in q.iter_mut().skip(4) {
        *p = p.scale(&k(2));
    }
    q
}

/// `f_1..f_10`.
pub fn companion_quadrics() -> [SparsePoly; 10] {
    quadric_family(x)
}

/// The `5 x 5` matrix whose determinant is the universal Kummer quartic.
pub fn kummer_matrix(variant: MatrixVariant) -> [[SparsePoly; 5]; 5] {
    let entry_44 = match variant {
        MatrixVariant::Corrected => [0, 2, 1, 0],
        MatrixVariant::Verbatim => [0, 2, 2, 0],
    };
    let rows: [[[u16; 4]; 5]; 4] = [
        [
            [3, 0, 0, 0],
            [1, 2, 0, 0],
            [1, 0, 2, 0],
            [1, 0, 0, 2],
            [0, 1, 1, 1],
        ],
        [
            [0, 3, 0, 0],
            [2, 1, 0, 0],
            [0, 1, 0, 2],
            [0, 1, 2, 0],
            [1, 0, 1, 1],
        ],
        [
            [0, 0, 3, 0],
            [0, 0, 1, 2],
            [2, 0, 1, 0],
            entry_44,
            [1, 1, 0, 1],
        ],
        [
            [0, 0, 0, 3],
            [0, 0, 2, 1],
            [0, 2, 0, 1],
            [2, 0, 0, 1],
            [1, 1, 1, 0],
        ],
    ];
    let first = heisenberg_quartics();
    std::array::from_fn(|i| {
        if i == 0 {
            first.clone()
        } else {
            std::array::from_fn(|j| u_mono(rows[i - 1][j]))
        }
    })
}

/// The determinant divided by its content, with positive leading coefficient.
pub fn universal_quartic(variant: MatrixVariant) -> SparsePoly {
    det5(&kummer_matrix(variant)).primitive_part().1
}

/// Certified restriction of `F` to `{q_i = 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    /// `denominator * F = cofactor * q_i + remainder`.
    pub reduction: Reduction,
    /// `p_i`: primitive, positive leading coefficient, only `u` variables.
    pub p: SparsePoly,
    /// Integer `c` with `remainder = c * p_i * f_i^2`.
    pub multiplier: BigInt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuarticCatalog {
    pub quartics: [SparsePoly; 5],
    pub q: [SparsePoly; 10],
    pub f: [SparsePoly; 10],
    /// The universal quartic `F`.
    pub kummer: SparsePoly,
    /// Signed minors with `F_det = sum_j P_j cofactors[j]`.
    pub cofactors: [SparsePoly; 5],
    /// The content removed from the raw determinant (signed).
    pub determinant_scale: BigInt,
    pub factorizations: Vec<Factorization>,
}

impl QuarticCatalog {
    /// `p_i` for `i` in `1..=10`.
    pub fn p(&self, i: usize) -> &SparsePoly {
        &self.factorizations[i - 1].p
    }
}

fn certify(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Certification(what()))
    }
}

const U_VARS: [usize; 4] = [0, 1, 2, 3];
const X_VARS: [usize; 4] = [4, 5, 6, 7];

/// Builds `P_j`, `q_i`, `f_i`, `F` and each `p_i`, certifying every structural
/// claim on the way. Fails if any certification does not hold.
pub fn build_catalog() -> Result<QuarticCatalog> {
    build_catalog_variant(MatrixVariant::Corrected)
}

pub fn build_catalog_variant(variant: MatrixVariant) -> Result<QuarticCatalog> {
    let quartics = heisenberg_quartics();
    let q = theta_null_quadrics();
    let f = companion_quadrics();

    for (j, p) in quartics.iter().enumerate() {
        certify(p.uses_only(&X_VARS) && p.bidegree() == Some((0, 4)), || {
            format!("P_{j} is not a quartic in x")
        })?;
        for w in HeisenbergElement::signed_elements(2).iter().take(16) {
            certify(&substitute(p, w, false, true) == p, || {
                format!("P_{j} is not invariant under {w:?}")
            })?;
        }
    }
    for i in 0..10 {
        certify(
            q[i].uses_only(&U_VARS) && q[i].bidegree() == Some((2, 0)),
            || format!("q_{} is not a quadric in u", i + 1),
        )?;
        certify(
            f[i].uses_only(&X_VARS) && f[i].bidegree() == Some((0, 2)),
            || format!("f_{} is not a quadric in x", i + 1),
        )?;
        let swapped = swap_u_x(&f[i]).scale(&k(if i < 4 { 1 } else { 2 }));
        certify(swapped == q[i], || {
            format!("q_{0} and f_{0} patterns differ", i + 1)
        })?;
    }

    let matrix = kummer_matrix(variant);
    let raw = det5(&matrix);
    let cofactors: [SparsePoly; 5] = std::array::from_fn(|j| {
        let minor: Vec<Vec<SparsePoly>> = (1..5)
            .map(|r| {
                (0..5)
                    .filter(|&c| c != j)
                    .map(|c| matrix[r][c].clone())
                    .collect()
            })
            .collect();
        let m = crate::poly::determinant(&minor).expect("square minor");
        if j % 2 == 0 {
            m
        } else {
            -m
        }
    });
    let expansion = sum((0..5).map(|j| &quartics[j] * &cofactors[j]));
    certify(expansion == raw, || {
        "first-row expansion disagrees with the determinant".into()
    })?;
    certify(cofactors.iter().all(|c| c.uses_only(&U_VARS)), || {
        "cofactors involve x".into()
    })?;

    let (determinant_scale, kummer) = raw.primitive_part();
    certify(kummer.len() > 1, || "F is degenerate".into())?;
    certify(kummer.bidegree() == Some((12, 4)), || {
        format!("F has bidegree {:?}, expected (12, 4)", kummer.bidegree())
    })?;

    let mut factorizations = Vec::with_capacity(10);
    for i in 0..10 {
        let reduction = reduce_mod_quadric(&kummer, &q[i], TermOrder::GradedLex)?;
        certify(reduction.verify(&kummer, &q[i]), || {
            format!("cofactor identity fails modulo q_{}", i + 1)
        })?;
        let square = f[i].pow(2);
        let quotient = divide_exact(&reduction.remainder, &square).map_err(|_| {
            Error::Certification(format!("F mod q_{0} is not divisible by f_{0}^2", i + 1))
        })?;
        certify(!quotient.is_zero() && quotient.uses_only(&U_VARS), || {
            format!("p_{} depends on x or vanishes", i + 1)
        })?;
        let (multiplier, p) = quotient.primitive_part();
        certify(
            (&p * &square).scale(&multiplier) == reduction.remainder,
            || format!("remainder mod q_{} is not p f^2", i + 1),
        )?;
        factorizations.push(Factorization {
            reduction,
            p,
            multiplier,
        });
    }

    let catalog = QuarticCatalog {
        quartics,
        q,
        f,
        kummer,
        cofactors,
        determinant_scale,
        factorizations,
    };
    for w in HeisenbergElement::signed_elements(2) {
        heisenberg_character(&catalog, &w)?;
    }
    Ok(catalog)
}

fn swap_u_x(p: &SparsePoly) -> SparsePoly {
    let targets = [4, 5, 6, 7, 0, 1, 2, 3];
    p.substitute_signed(&targets, &[1; NVARS])
}

/// Applies the coordinate action of `w` to the chosen variable groups as a substitution.
fn substitute(p: &SparsePoly, w: &HeisenbergElement, on_u: bool, on_x: bool) -> SparsePoly {
    let mut targets: [usize; NVARS] = std::array::from_fn(|v| v);
    let mut signs = [1i8; NVARS];
    let t_sign: i8 = if w.t().re < 0.0 { -1 } else { 1 };
    for (sigma, (source, s)) in coordinate_substitution(w).into_iter().enumerate() {
        let sign = t_sign * if s < 0.0 { -1 } else { 1 };
        if on_u {
            targets[u_var(sigma)] = u_var(source);
            signs[u_var(sigma)] = sign;
        }
        if on_x {
            targets[x_var(sigma)] = x_var(source);
            signs[x_var(sigma)] = sign;
        }
    }
    p.substitute_signed(&targets, &signs)
}

/// `P∘w` for the action of `w` on the `x` variables alone.
pub fn act_on_x(p: &SparsePoly, w: &HeisenbergElement) -> SparsePoly {
    substitute(p, w, false, true)
}

/// The sign `e` with `F(w.u, w.x) = e F(u, x)`.
pub fn heisenberg_character(cat: &QuarticCatalog, w: &HeisenbergElement) -> Result<i8> {
    let t = w.t();
    if w.genus() != 2 || t.im != 0.0 || t.re.abs() != 1.0 {
        return Err(Error::Parse(
            "heisenberg_character needs a genus-2 element with t = +-1".into(),
        ));
    }
    let image = substitute(&cat.kummer, w, true, true);
    if image == cat.kummer {
        Ok(1)
    } else if image == -&cat.kummer {
        Ok(-1)
    } else {
        Err(Error::Certification(format!(
            "F is not an eigenvector of {w:?}"
        )))
    }
}

/// A point `([u], [x])` of `P^3 x P^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct KummerPoint {
    pub u: [Complex64; 4],
    pub x: [Complex64; 4],
}

/// Divides by the component of largest modulus, so that component becomes 1.
pub fn normalize(v: &[Complex64; 4]) -> Result<[Complex64; 4]> {
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("four entries");
    if pivot.norm() == 0.0 || !pivot.is_finite() {
        return Err(Error::ZeroVector);
    }
    Ok(v.map(|c| c / pivot))
}

/// `max |a_i b_j - a_j b_i| / (|a| |b|)`: zero iff `a` and `b` are proportional.
pub fn projective_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let na = a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let mut worst: f64 = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            worst = worst.max((a[i] * b[j] - a[j] * b[i]).norm());
        }
    }
    worst / (na * nb)
}

impl KummerPoint {
    pub fn new(u: [Complex64; 4], x: [Complex64; 4]) -> Result<Self> {
        Ok(Self {
            u: normalize(&u)?,
            x: normalize(&x)?,
        })
    }

    /// The eight values in variable order `u00..u11, x00..x11`.
    pub fn coordinates(&self) -> [Complex64; NVARS] {
        std::array::from_fn(|v| if v < 4 { self.u[v] } else { self.x[v - 4] })
    }
}

fn to_array(v: Vec<Complex64>) -> [Complex64; 4] {
    v.try_into().expect("genus 2 gives four coordinates")
}

fn require_genus_two(tau: &SiegelPoint) -> Result<()> {
    if tau.genus() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: tau.genus(),
        });
    }
    Ok(())
}

/// `(tau, z) -> [Theta_tau(0), Theta_tau(z)]`.
pub fn kummer_embed(
    tau: &SiegelPoint,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<KummerPoint> {
    Ok(kummer_embed_with_radius(tau, z, policy)?.0)
}

/// Like [`kummer_embed`], also returning the largest truncation radius used.
pub fn kummer_embed_with_radius(
    tau: &SiegelPoint,
    z: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<(KummerPoint, u32)> {
    require_genus_two(tau)?;
    let zero = [Complex64::new(0.0, 0.0); 2];
    let (u, r0) = eval_theta_vector(tau, &zero, policy)?;
    let (x, r1) = eval_theta_vector(tau, z, policy)?;
    Ok((KummerPoint::new(to_array(u), to_array(x))?, r0.max(r1)))
}

/// `F` at a point, with the largest single-term magnitude for relative residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticValue {
    pub value: Complex64,
    pub scale: f64,
}

impl QuarticValue {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.norm()
        } else {
            self.value.norm() / self.scale
        }
    }
}

pub fn evaluate_f(cat: &QuarticCatalog, point: &KummerPoint) -> QuarticValue {
    evaluate_poly(&cat.kummer, point)
}

pub fn evaluate_poly(p: &SparsePoly, point: &KummerPoint) -> QuarticValue {
    let (value, scale) = p.evaluate(&point.coordinates());
    QuarticValue { value, scale }
}

/// The 16 points `tau a / 2 + b / 2`, one per characteristic `(a; b)`.
pub fn two_torsion_points(tau: &SiegelPoint) -> Result<Vec<[Complex64; 2]>> {
    require_genus_two(tau)?;
    Ok(ThetaCharacteristic::all(2)
        .iter()
        .map(|m| {
            std::array::from_fn(|i| {
                let ta: Complex64 = (0..2).map(|j| tau.entry(i, j) * m.a()[j] as f64).sum();
                (ta + m.b()[i] as f64) * 0.5
            })
        })
        .collect())
}

/// Relative residual of
/// `theta_[e;d](tau)^2 = sum_sigma (-1)^{d.sigma} Theta[sigma](tau, 0) Theta[sigma + e](tau, 0)`.
pub fn addition_formula_residual(
    tau: &SiegelPoint,
    m: &ThetaCharacteristic,
    policy: &TruncationPolicy,
) -> Result<f64> {
    require_genus_two(tau)?;
    let zero = [Complex64::new(0.0, 0.0); 2];
    let lhs = theta_char(m, tau, &zero, policy)?.powi(2);
    let u = theta_vector(tau, &zero, policy)?;
    let e = crate::theta::position(m.a());
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut magnitude = lhs.norm();
    for (s, us) in u.iter().enumerate() {
        let sign = if crate::theta::dot_mod2(m.b(), &crate::theta::bits(s, 2)) == 0 {
            1.0
        } else {
            -1.0
        };
        let term = us * u[s ^ e] * sign;
        magnitude += term.norm();
        rhs += term;
    }
    Ok((lhs - rhs).norm() / magnitude.max(f64::MIN_POSITIVE))
}

/// `|q_i(Theta_tau(0))| / |Theta_tau(0)|^2` for `i = 1..10`.
pub fn thetanull_proximity(tau: &SiegelPoint, policy: &TruncationPolicy) -> Result<[f64; 10]> {
    require_genus_two(tau)?;
    let u = theta_vector(tau, &[Complex64::new(0.0, 0.0); 2], policy)?;
    Ok(quadric_proximity(&to_array(u)))
}

/// Normalized `|q_i(u)|` for a vector of theta constants.
pub fn quadric_proximity(u: &[Complex64; 4]) -> [f64; 10] {
    let norm_sq: f64 = u.iter().map(|v| v.norm_sqr()).sum();
    let point = KummerPoint {
        u: *u,
        x: [Complex64::new(0.0, 0.0); 4],
    };
    let q = theta_null_quadrics();
    std::array::from_fn(|i| evaluate_poly(&q[i], &point).value.norm() / norm_sq)
}

/// Index `i` in `1..=10` of the component `{q_i = 0}` containing the point, if any.
pub fn decomposable_component(proximity: &[f64; 10]) -> Option<usize> {
    proximity
        .iter()
        .enumerate()
        .filter(|(_, v)| **v < DECOMPOSABLE_THRESHOLD)
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i + 1)
}

/// `true` when `F = sum_j P_j cofactors[j]` up to the stored scale.
pub fn spans_heisenberg_quartics(cat: &QuarticCatalog) -> bool {
    let expansion = sum((0..5).map(|j| &cat.quartics[j] * &cat.cofactors[j]));
    expansion == cat.kummer.scale(&cat.determinant_scale)
}
