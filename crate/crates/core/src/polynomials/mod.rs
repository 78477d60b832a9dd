//! Homogeneous multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a sorted map keyed by exponent vectors under the graded
//! lexicographic order (ascending). That order is global: it fixes the sign
//! convention of [`HomoPoly::normalize_primitive`] and the canonical
//! serialization used for hashing maps and group elements.

mod gcd;
mod parse;
mod subst;

pub use gcd::{gcd_homogeneous, gcd_many};
pub use parse::{parse_homogeneous, VarNames};
pub use subst::substitute;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise minimum (the gcd of two monomials).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Homogeneous polynomial over Q in a fixed number of variables.
///
/// The zero polynomial keeps an explicit degree so that addition stays total
/// inside composition pipelines.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomoPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

impl HomoPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomoPoly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(c, Monomial::one(nvars))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero(m.0.len(), m.degree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Rational::one(), Monomial::var(nvars, i))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents. `degree` is only consulted when every coefficient
    /// cancels.
    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        let mut deg: Option<u32> = None;
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableMismatch(nvars, e.len()));
            }
            let m = Monomial(e);
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => return Err(Error::NotHomogeneous),
                _ => {}
            }
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let degree = if map.is_empty() {
            degree
        } else {
            deg.unwrap_or(degree)
        };
        Ok(HomoPoly {
            nvars,
            degree,
            terms: map,
        })
    }

    pub(crate) fn from_map_unchecked(
        nvars: usize,
        degree: u32,
        terms: BTreeMap<Monomial, Rational>,
    ) -> Self {
        HomoPoly {
            nvars,
            degree,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// First term in the canonical (ascending graded-lex) order.
    pub fn first_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn check_vars(&self, other: &HomoPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomoPoly) -> Result<HomoPoly> {
        self.check_vars(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Ok(HomoPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        })
    }

    pub fn sub(&self, other: &HomoPoly) -> Result<HomoPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomoPoly {
        HomoPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, a: &Rational) -> HomoPoly {
        if a.is_zero() {
            return HomoPoly::zero(self.nvars, self.degree);
        }
        HomoPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * a)).collect(),
        }
    }

    pub fn mul(&self, other: &HomoPoly) -> Result<HomoPoly> {
        self.check_vars(other)?;
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(HomoPoly {
            nvars: self.nvars,
            degree: self.degree + other.degree,
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> HomoPoly {
        let mut result = HomoPoly::constant(self.nvars, Rational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same variable count");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same variable count");
            }
        }
        result
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<HomoPoly> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            if !m.divides(t) {
                return None;
            }
            terms.insert(t.div(m), c.clone());
        }
        Some(HomoPoly {
            nvars: self.nvars,
            degree: self.degree - m.degree(),
            terms,
        })
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn div_exact(&self, g: &HomoPoly) -> Result<Option<HomoPoly>> {
        self.check_vars(g)?;
        let (lg_m, lg_c) = g.terms.iter().next_back().ok_or(Error::ZeroPolynomial)?;
        if g.terms.len() == 1 {
            return Ok(self.div_monomial(lg_m).map(|q| q.scale(&lg_c.recip())));
        }
        if self.is_zero() {
            return Ok((self.degree >= g.degree)
                .then(|| HomoPoly::zero(self.nvars, self.degree - g.degree)));
        }
        if self.degree < g.degree {
            return Ok(None);
        }
        let mut r = self.terms.clone();
        let mut q = BTreeMap::new();
        while let Some((lm, lc)) = r.iter().next_back() {
            if !lg_m.divides(lm) {
                return Ok(None);
            }
            let qm = lm.div(lg_m);
            let qc = lc / lg_c;
            for (m, c) in &g.terms {
                let key = m.mul(&qm);
                let e = r.entry(key.clone()).or_insert_with(Rational::zero);
                *e -= &qc * c;
                if e.is_zero() {
                    r.remove(&key);
                }
            }
            q.insert(qm, qc);
        }
        Ok(Some(HomoPoly {
            nvars: self.nvars,
            degree: self.degree - g.degree,
            terms: q,
        }))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |g, m| g.gcd(m)))
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. `None` for the zero polynomial.
    pub fn content(&self) -> Option<Rational> {
        rational_content(self.terms.values())
    }

    /// Splits `f = scale * F` with `F` primitive over Z and the first
    /// graded-lex term of `F` positive.
    pub fn normalize_primitive(&self) -> Result<(Rational, HomoPoly)> {
        let mut scale = self.content().ok_or(Error::ZeroPolynomial)?;
        let (_, lead) = self.first_term().expect("nonzero");
        if lead.is_negative() {
            scale = -scale;
        }
        Ok((scale.clone(), self.scale(&scale.recip())))
    }

    /// Largest exponent of `x_i` occurring in a term.
    pub fn partial_degree(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Sum of the partial degrees in each variable.
    pub fn delta_degree_sum(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok((0..self.nvars).map(|i| self.partial_degree(i)).sum())
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(point).fold(c.clone(), |acc, (&e, x)| {
                    acc * num_traits::pow(x.clone(), e as usize)
                })
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Integer coefficients, assuming `is_integral`.
    pub(crate) fn integer_terms(&self) -> impl Iterator<Item = (&Monomial, BigInt)> {
        self.terms.iter().map(|(m, c)| (m, c.to_integer()))
    }

    pub fn to_string_with(&self, names: &VarNames) -> String {
        parse::format_poly(self, names)
    }
}

pub fn poly_arith(f: &HomoPoly, g: &HomoPoly, op: ArithOp) -> Result<HomoPoly> {
    match op {
        ArithOp::Add => f.add(g),
        ArithOp::Mul => f.mul(g),
    }
}

/// Positive gcd-of-numerators over lcm-of-denominators.
pub fn rational_content<'a, I>(coeffs: I) -> Option<Rational>
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    let mut any = false;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        any = true;
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    any.then(|| Rational::new(num, den))
}

impl fmt::Display for HomoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::format_poly(
            self,
            &VarNames::default_for(self.nvars),
        ))
    }
}
