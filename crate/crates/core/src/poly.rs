//! Exact sparse polynomials over the integers in the eight variables
//! `u00, u01, u10, u11, x00, x01, x10, x11`.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded lexicographic order with `u00 > u01 > ... > x11`, so the last
//! entry of the map is always the leading term.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const NVARS: usize = 8;

pub const VAR_NAMES: [&str; NVARS] = ["u00", "u01", "u10", "u11", "x00", "x01", "x10", "x11"];

/// Index of `u_sigma` for `sigma` at lexicographic position `i`.
pub const fn u_var(i: usize) -> usize {
    i
}

/// Index of `x_sigma` for `sigma` at lexicographic position `i`.
pub const fn x_var(i: usize) -> usize {
    4 + i
}

/// An exponent vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Self([0; NVARS])
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; NVARS];
        e[v] = 1;
        Self(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn u_degree(&self) -> u32 {
        self.0[..4].iter().map(|&e| e as u32).sum()
    }

    pub fn x_degree(&self) -> u32 {
        self.0[4..].iter().map(|&e| e as u32).sum()
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(&other.0) {
            *a += b;
        }
        Self(e)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(&other.0) {
            *a -= b;
        }
        Self(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial order used for leading terms and reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TermOrder {
    /// Total degree first, ties broken lexicographically with `u00 > u01 > ... > x11`.
    #[default]
    GradedLex,
}

impl TermOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        match self {
            TermOrder::GradedLex => a.cmp(b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::term(BigInt::from(c), Monomial::one())
    }

    pub fn var(v: usize) -> Self {
        Self::term(BigInt::one(), Monomial::var(v))
    }

    pub fn term(coef: BigInt, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(mono, coef);
        }
        Self { terms }
    }

    /// `coef * prod vars[i]^exps[i]` from a short exponent list like `[(0, 2), (5, 1)]`.
    pub fn monomial(coef: i64, powers: &[(usize, u16)]) -> Self {
        let mut e = [0; NVARS];
        for &(v, p) in powers {
            e[v] += p;
        }
        Self::term(BigInt::from(coef), Monomial(e))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, mono: Monomial, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `(u-degree, x-degree)` when every term has the same pair.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|m| (m.u_degree(), m.x_degree()));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn uses_only(&self, vars: &[usize]) -> bool {
        self.terms
            .keys()
            .all(|m| (0..NVARS).all(|v| m.0[v] == 0 || vars.contains(&v)))
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides by the content and fixes the sign so the leading coefficient is positive.
    /// Returns the signed factor `s` with `self = s * primitive`.
    pub fn primitive_part(&self) -> (BigInt, SparsePoly) {
        if self.is_zero() {
            return (BigInt::one(), Self::zero());
        }
        let mut content = self.content();
        if self
            .leading_term()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            content = -content;
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c / &content)).collect();
        (content, Self { terms })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn mul_term(&self, coef: &BigInt, mono: &Monomial) -> Self {
        if coef.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * coef))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Replaces each variable `v` by `signs[v] * var(targets[v])`.
    pub fn substitute_signed(&self, targets: &[usize; NVARS], signs: &[i8; NVARS]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut e = [0u16; NVARS];
            let mut negative = false;
            for v in 0..NVARS {
                e[targets[v]] += m.0[v];
                if signs[v] < 0 && m.0[v] % 2 == 1 {
                    negative = !negative;
                }
            }
            out.add_term(Monomial(e), if negative { -c } else { c.clone() });
        }
        out
    }

    /// Evaluates at complex values, returning the value and the largest
    /// absolute contribution of a single term.
    pub fn evaluate(&self, values: &[Complex64; NVARS]) -> (Complex64, f64) {
        let max_exp = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<Complex64>> = values
            .iter()
            .map(|v| {
                let mut p = Vec::with_capacity(max_exp + 1);
                p.push(Complex64::new(1.0, 0.0));
                for k in 1..=max_exp {
                    p.push(p[k - 1] * v);
                }
                p
            })
            .collect();
        let mut value = Complex64::new(0.0, 0.0);
        let mut scale: f64 = 0.0;
        for (m, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for v in 0..NVARS {
                t *= powers[v][m.0[v] as usize];
            }
            scale = scale.max(t.norm());
            value += t;
        }
        (value, scale)
    }

    /// Exact evaluation at integer values.
    pub fn evaluate_integer(&self, values: &[BigInt; NVARS]) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| {
                (0..NVARS).fold(c.clone(), |acc, v| {
                    acc * num_traits::pow(values[v].clone(), m.0[v] as usize)
                })
            })
            .sum()
    }

    /// One `coef e0 e1 ... e7` line per term, leading term first.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            out.push_str(&c.to_string());
            for e in m.0 {
                out.push(' ');
                out.push_str(&e.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Parses the format written by [`SparsePoly::to_text`]; blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::zero();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: &str| Error::PolyParse {
                line: idx + 1,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != NVARS + 1 {
                return Err(err("expected a coefficient and 8 exponents"));
            }
            let coef: BigInt = fields[0].parse().map_err(|_| err("bad coefficient"))?;
            if coef.is_zero() {
                return Err(err("zero coefficient"));
            }
            let mut e = [0u16; NVARS];
            for (slot, f) in e.iter_mut().zip(&fields[1..]) {
                *slot = f.parse().map_err(|_| err("bad exponent"))?;
            }
            if out.terms.contains_key(&Monomial(e)) {
                return Err(err("repeated monomial"));
            }
            out.terms.insert(Monomial(e), coef);
        }
        Ok(out)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = (0..NVARS)
                .filter(|&v| m.0[v] > 0)
                .map(|v| match m.0[v] {
                    1 => VAR_NAMES[v].to_string(),
                    e => format!("{}^{}", VAR_NAMES[v], e),
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<SparsePoly>]) -> Result<SparsePoly> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: row.len(),
        });
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor_expand(m, 0, &cols))
}

fn cofactor_expand(m: &[Vec<SparsePoly>], row: usize, cols: &[usize]) -> SparsePoly {
    if cols.is_empty() {
        return SparsePoly::one();
    }
    let mut out = SparsePoly::zero();
    for (k, &col) in cols.iter().enumerate() {
        if m[row][col].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != col).collect();
        let minor = cofactor_expand(m, row + 1, &rest);
        let product = &m[row][col] * &minor;
        out = if k % 2 == 0 {
            &out + &product
        } else {
            &out - &product
        };
    }
    out
}

pub fn det5(m: &[[SparsePoly; 5]; 5]) -> SparsePoly {
    let rows: Vec<Vec<SparsePoly>> = m.iter().map(|r| r.to_vec()).collect();
    determinant(&rows).expect("square matrix")
}

/// Returns `q` with `p = q * d`, or [`Error::NotDivisible`].
pub fn divide_exact(p: &SparsePoly, d: &SparsePoly) -> Result<SparsePoly> {
    let (lead_mono, lead_coef) = d.leading_term().ok_or(Error::DivisionByZero)?;
    let mut rest = p.clone();
    let mut quotient = SparsePoly::zero();
    while let Some((mono, coef)) = rest.leading_term() {
        if !lead_mono.divides(mono) {
            return Err(Error::NotDivisible);
        }
        let (q, r) = coef.div_rem(lead_coef);
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        let shift = mono.div(lead_mono);
        rest = &rest - &d.mul_term(&q, &shift);
        quotient.add_term(shift, q);
    }
    Ok(quotient)
}

/// Outcome of reducing `p` modulo a single polynomial `q`:
/// `denominator * p = cofactor * q + remainder`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub remainder: SparsePoly,
    pub cofactor: SparsePoly,
    /// Smallest positive integer clearing every fraction that arose.
    pub denominator: BigInt,
}

impl Reduction {
    /// Re-multiplies and compares the identity exactly.
    pub fn verify(&self, p: &SparsePoly, q: &SparsePoly) -> bool {
        p.scale(&self.denominator) == &(&self.cofactor * q) + &self.remainder
    }
}

/// Normal form of `p` modulo the principal ideal `(q)`: leading terms divisible
/// by the leading monomial of `q` are cancelled over the rationals until none remain.
pub fn reduce_mod_quadric(p: &SparsePoly, q: &SparsePoly, order: TermOrder) -> Result<Reduction> {
    let TermOrder::GradedLex = order;
    let (lead_mono, lead_coef) = q.leading_term().ok_or(Error::DivisionByZero)?;
    let lead_coef = BigRational::from_integer(lead_coef.clone());
    let tail: Vec<(Monomial, BigRational)> = q
        .terms()
        .rev()
        .skip(1)
        .map(|(m, c)| (*m, BigRational::from_integer(c.clone())))
        .collect();

    let mut work: BTreeMap<Monomial, BigRational> = p
        .terms()
        .map(|(m, c)| (*m, BigRational::from_integer(c.clone())))
        .collect();
    let mut remainder: BTreeMap<Monomial, BigRational> = BTreeMap::new();
    let mut cofactor: BTreeMap<Monomial, BigRational> = BTreeMap::new();

    while let Some((mono, coef)) = work.pop_last() {
        if !lead_mono.divides(&mono) {
            remainder.insert(mono, coef);
            continue;
        }
        let shift = mono.div(lead_mono);
        let factor = coef / &lead_coef;
        for (m, c) in &tail {
            let target = m.mul(&shift);
            let entry = work.entry(target).or_insert_with(BigRational::zero);
            *entry -= &factor * c;
            if entry.is_zero() {
                work.remove(&target);
            }
        }
        cofactor.insert(shift, factor);
    }

    let denominator = remainder
        .values()
        .chain(cofactor.values())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let clear = |terms: BTreeMap<Monomial, BigRational>| {
        SparsePoly::from_terms(terms.into_iter().map(|(m, c)| {
            let scaled = c * BigRational::from_integer(denominator.clone());
            (m, scaled.to_integer())
        }))
    };
    Ok(Reduction {
        remainder: clear(remainder),
        cofactor: clear(cofactor),
        denominator: denominator.clone(),
    })
}
