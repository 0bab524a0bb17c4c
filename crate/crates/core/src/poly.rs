//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are keyed by exponent vectors in graded-lex order (total degree
//! first, then lexicographic with `x0` most significant). Iteration and
//! serialization list terms from the leading monomial downward.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank_of, rat, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables. Homogeneous polynomials (adjoints of
/// cones) and affine ones (adjoints of polytopes in a chart) share this type;
/// see [`Polynomial::is_homogeneous`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, rat(1))
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, rat(1))])
    }

    /// Sums like terms and drops zero coefficients.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must equal nvars");
            p.add_term(Exponent(e), c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms from the graded-lex leading monomial downward.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms
            .get(&Exponent(e.to_vec()))
            .cloned()
            .unwrap_or_else(|| rat(0))
    }

    pub fn leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Maximum total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.leading().map_or(0, |(e, _)| e.total() as usize)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree() as u32;
        self.terms.keys().all(|e| e.total() == d)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: x.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.0.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| {
                    acc * num::pow(xi.clone(), k as usize)
                })
            })
            .sum())
    }

    /// Positive rational multiple with coprime integer coefficients and a
    /// positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c * &l).to_integer()));
        let mut s = Rational::new(l, g);
        if self.leading().expect("nonzero").1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// `Some(λ)` with `self = λ·other`, or `None` if not proportional. Two
    /// zero polynomials are proportional with `λ = 1`.
    pub fn equal_up_to_scalar(&self, other: &Self) -> Option<Rational> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some(rat(1)),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        if self.nvars != other.nvars || self.terms.len() != other.terms.len() {
            return None;
        }
        let lambda = self.leading()?.1 / other.leading()?.1;
        let same = self
            .terms
            .iter()
            .zip(&other.terms)
            .all(|((e1, c1), (e2, c2))| e1 == e2 && *c1 == &lambda * c2);
        same.then_some(lambda)
    }

    /// Substitutes `x = Σ t_i b_i`; the result has `basis.len()` variables.
    pub fn restrict_to_subspace(&self, basis: &[Vector]) -> Result<Self> {
        if let Some(b) = basis.iter().find(|b| b.len() != self.nvars) {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: b.len(),
            });
        }
        if rank_of(basis, self.nvars) != basis.len() {
            return Err(Error::DependentBasis);
        }
        let k = basis.len();
        let subs: Vec<Polynomial> = (0..self.nvars)
            .map(|j| {
                LinForm::homogeneous(basis.iter().map(|b| b[j].clone()).collect()).to_polynomial()
            })
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = subs
            .iter()
            .map(|s| vec![Polynomial::one(k), s.clone()])
            .collect();
        let mut out = Polynomial::zero(k);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(k, c.clone());
            for (j, &ej) in e.0.iter().enumerate() {
                while powers[j].len() <= ej as usize {
                    let next = powers[j].last().expect("nonempty") * &subs[j];
                    powers[j].push(next);
                }
                term = &term * &powers[j][ej as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Homogenizes to this polynomial's own degree with a new `x0` in front.
    pub fn homogenize(&self) -> Self {
        self.homogenize_to(self.degree())
    }

    /// Homogenizes to degree `d >= self.degree()`.
    pub fn homogenize_to(&self, d: usize) -> Self {
        assert!(d >= self.degree(), "target degree below polynomial degree");
        Self::from_terms(
            self.nvars + 1,
            self.terms.iter().map(|(e, c)| {
                let mut ex = vec![d as u32 - e.total()];
                ex.extend_from_slice(&e.0);
                (ex, c.clone())
            }),
        )
    }

    /// Sets `x0 = 1` and drops that variable.
    pub fn dehomogenize(&self) -> Self {
        assert!(self.nvars > 0, "no variable to dehomogenize");
        Self::from_terms(
            self.nvars - 1,
            self.terms
                .iter()
                .map(|(e, c)| (e.0[1..].to_vec(), c.clone())),
        )
    }

    /// Substitutes `x_i -> s_i x_i`.
    pub fn scale_variables(&self, s: &[Rational]) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| {
                let f = e.0.iter().zip(s).fold(c.clone(), |acc, (&k, si)| {
                    acc * num::pow(si.clone(), k as usize)
                });
                (e.0.clone(), f)
            }),
        )
    }

    /// Human-readable rendering with variables named `x{offset}`, `x{offset+1}`, ...
    pub fn display_with_offset(&self, offset: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(j, &k)| {
                        if k == 1 {
                            format!("x{}", j + offset)
                        } else {
                            format!("x{}^{}", j + offset, k)
                        }
                    })
                    .collect();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", a, mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with_offset(0))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&rat(-1))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.0.iter().zip(&e2.0).map(|(a, b)| a + b).collect();
                out.add_term(Exponent(e), c1 * c2);
            }
        }
        out
    }
}

/// The affine form `constant + coeffs·x`; homogeneous when the constant is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinForm {
    pub constant: Rational,
    pub coeffs: Vector,
}

impl LinForm {
    pub fn homogeneous(coeffs: Vector) -> Self {
        Self {
            constant: rat(0),
            coeffs,
        }
    }

    pub fn affine(constant: Rational, coeffs: Vector) -> Self {
        Self { constant, coeffs }
    }

    /// `1 - v·x`, the facet factor of a polytope written in the `x0 = 1` chart.
    pub fn one_minus(v: &[Rational]) -> Self {
        Self::affine(rat(1), v.iter().map(|x| -x).collect())
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: x.len(),
            });
        }
        Ok(&self.constant + crate::linalg::dot(&self.coeffs, x))
    }

    /// The constant absorbed as the coefficient of a new leading `x0`.
    pub fn homogenized(&self) -> Self {
        let mut c = vec![self.constant.clone()];
        c.extend(self.coeffs.iter().cloned());
        Self::homogeneous(c)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.nvars();
        let mut p = Polynomial::constant(n, self.constant.clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(
                Exponent((0..n).map(|j| (j == i) as u32).collect()),
                c.clone(),
            );
        }
        p
    }
}

/// Expanded product; the empty product is the constant 1.
pub fn product_of_linforms(nvars: usize, forms: &[LinForm]) -> Result<Polynomial> {
    let mut p = Polynomial::one(nvars);
    for f in forms {
        if f.nvars() != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: f.nvars(),
            });
        }
        p = &p * &f.to_polynomial();
    }
    Ok(p)
}

/// Maximum coefficient distance between two float coefficient maps.
pub fn max_coefficient_distance(a: &BTreeMap<Exponent, f64>, b: &BTreeMap<Exponent, f64>) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|e| (a.get(e).copied().unwrap_or(0.0) - b.get(e).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

/// Scales float coefficients so the largest in absolute value is `+1`
/// (the first such term in graded-lex order wins ties).
pub fn normalize_max_abs(coeffs: &BTreeMap<Exponent, f64>) -> BTreeMap<Exponent, f64> {
    let mut pivot = 0.0f64;
    for c in coeffs.values().rev() {
        if c.abs() > pivot.abs() * (1.0 + 1e-12) {
            pivot = *c;
        }
    }
    if pivot == 0.0 {
        return coeffs.clone();
    }
    coeffs.iter().map(|(e, c)| (e.clone(), c / pivot)).collect()
}

impl Polynomial {
    pub fn to_f64_coeffs(&self) -> BTreeMap<Exponent, f64> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), crate::linalg::to_f64(c)))
            .collect()
    }
}
