//! Weil heights over Q.
//!
//! Every place is handled exactly: a finite place `p` is represented by the
//! valuation `v_p`, and `log|x|_p = -v_p(x) log p`. Only the reported
//! `logval` fields are floating point.

mod factor;
mod linear;
mod words;

pub use factor::{factorize, is_probable_prime};
pub use linear::{distortion_class_of_linear, LinearClass, LinearClassReport};
pub use words::{
    fixture_generator_sets, verify_word_height, word_height_bound, GeneratorSet, WordHeightReport,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::maps::BirMap;
use crate::polynomials::{rational_content, HomoPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Prime(BigUint),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaceValue {
    pub p: Place,
    /// `v_p` of the quantity at a finite place; absent at infinity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<i64>,
    pub logval: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightReport {
    #[serde(rename = "H", serialize_with = "as_decimal")]
    pub big_h: BigInt,
    pub h: f64,
    pub places: Vec<PlaceValue>,
}

fn as_decimal<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Natural logarithm of a positive big integer, accurate to f64 precision.
pub fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return big_to_f64(x).ln();
    }
    let shift = bits - 64;
    let top = big_to_f64(&(x >> shift));
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn big_to_f64(x: &BigUint) -> f64 {
    x.to_u64_digits()
        .iter()
        .rev()
        .fold(0.0, |acc, &d| acc * 18446744073709551616.0 + d as f64)
}

pub fn rational_ln_abs(x: &Rational) -> f64 {
    big_ln(x.numer().magnitude()) - big_ln(x.denom().magnitude())
}

/// `v_p(n)` for a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigUint) -> i64 {
    let mut m = n.magnitude().clone();
    let mut v = 0;
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

pub fn rational_valuation(x: &Rational, p: &BigUint) -> i64 {
    valuation(x.numer(), p) - valuation(x.denom(), p)
}

/// `log|x|_v` for every place where it is nonzero, written exactly as an
/// integer combination of `log p`: one entry per place, mapping each prime to
/// its coefficient.
pub fn symbolic_place_logs(x: &Rational) -> Vec<(Place, BTreeMap<BigUint, i64>)> {
    assert!(!x.is_zero(), "nonzero rational");
    let mut arch: BTreeMap<BigUint, i64> = BTreeMap::new();
    let mut out = Vec::new();
    let mut finite: Vec<(BigUint, i64)> = Vec::new();
    for (p, e) in factorize(x.numer().magnitude()) {
        *arch.entry(p.clone()).or_default() += i64::from(e);
        finite.push((p, i64::from(e)));
    }
    for (p, e) in factorize(x.denom().magnitude()) {
        *arch.entry(p.clone()).or_default() -= i64::from(e);
        finite.push((p, -i64::from(e)));
    }
    out.push((Place::Infinite, arch));
    for (p, v) in finite {
        let mut m = BTreeMap::new();
        m.insert(p.clone(), -v);
        out.push((Place::Prime(p), m));
    }
    out
}

/// Exact product-formula check: the symbolic place logs sum to zero.
pub fn product_formula_holds(x: &Rational) -> bool {
    let mut total: BTreeMap<BigUint, i64> = BTreeMap::new();
    for (_, m) in symbolic_place_logs(x) {
        for (p, c) in m {
            *total.entry(p).or_default() += c;
        }
    }
    total.values().all(|&c| c == 0)
}

/// Height of a projective coefficient vector, with its place breakdown as
/// given (not rescaled): at `∞` the log of the largest absolute value, and at
/// each prime dividing the content `-min v_p · log p`. The breakdown sums to
/// `h = log H`, `H` the largest entry of the primitive integer vector.
pub fn height_of_coefficients(coeffs: &[&Rational]) -> Result<HeightReport> {
    let content = rational_content(coeffs.iter().copied()).ok_or(Error::ZeroPolynomial)?;
    let max_abs = coeffs
        .iter()
        .map(|c| c.abs())
        .max()
        .expect("nonzero vector");
    let big_h = (&max_abs / &content).to_integer();
    let mut places = vec![PlaceValue {
        p: Place::Infinite,
        valuation: None,
        logval: rational_ln_abs(&max_abs),
    }];
    let mut primes: Vec<BigUint> = factorize(content.numer().magnitude())
        .into_iter()
        .chain(factorize(content.denom().magnitude()))
        .map(|(p, _)| p)
        .collect();
    primes.sort();
    for p in primes {
        let v = rational_valuation(&content, &p);
        places.push(PlaceValue {
            logval: -(v as f64) * big_ln(&p),
            p: Place::Prime(p),
            valuation: Some(v),
        });
    }
    Ok(HeightReport {
        h: big_ln(big_h.magnitude()),
        big_h,
        places,
    })
}

pub fn poly_height(f: &HomoPoly) -> Result<HeightReport> {
    height_of_coefficients(&f.terms().map(|(_, c)| c).collect::<Vec<_>>())
}

/// Joint height of the full coefficient vector of a normalized map.
pub fn map_height(f: &BirMap) -> HeightReport {
    height_of_coefficients(&f.coefficients().collect::<Vec<_>>())
        .expect("maps have a nonzero component")
}

/// `v_p` of the rational content of `f`.
pub fn content_valuation(f: &HomoPoly, p: &BigUint) -> Result<i64> {
    let c = f.content().ok_or(Error::ZeroPolynomial)?;
    Ok(rational_valuation(&c, p))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GelfondReport {
    pub gap: f64,
    pub delta: u32,
    pub bound: f64,
    pub holds: bool,
}

/// Compares `h(Π f_i)` with `Σ h(f_i)` against `Δ(Π f_i) log 2`.
pub fn gelfond_check(factors: &[HomoPoly]) -> Result<GelfondReport> {
    if factors.len() < 2 {
        return Err(Error::InvalidParameter("need at least two factors".into()));
    }
    if factors.iter().any(|f| f.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let mut prod = factors[0].clone();
    for f in &factors[1..] {
        prod = prod.mul(f)?;
    }
    let hsum: f64 = factors
        .iter()
        .map(|f| poly_height(f).map(|r| r.h))
        .sum::<Result<f64>>()?;
    let gap = poly_height(&prod)?.h - hsum;
    let delta = prod.delta_degree_sum()?;
    let bound = f64::from(delta) * std::f64::consts::LN_2;
    Ok(GelfondReport {
        gap,
        delta,
        bound,
        holds: gap.abs() <= bound + 1e-12,
    })
}

/// Whether some coefficient is not a unit at the place.
pub fn is_active(coeffs: &[Rational], place: &Place) -> bool {
    match place {
        Place::Infinite => coeffs.iter().any(|c| c.abs() > Rational::one()),
        Place::Prime(p) => coeffs
            .iter()
            .any(|c| !c.is_zero() && rational_valuation(c, p) < 0),
    }
}
