//! Rational self-maps of P^m in homogeneous coordinates.
//!
//! A [`BirMap`] is always stored in canonical form: components of equal
//! degree, no common factor of positive degree, the concatenated coefficient
//! vector primitive over Z, and its first nonzero entry (components in order,
//! terms in ascending graded-lex order) positive. Two maps are equal as
//! projective maps iff their canonical forms are equal, so the derived
//! `Eq`/`Hash` are the right ones for deduplication.
//!
//! Birationality is not checked; results are meaningful for birational input.

mod families;
mod growth;

pub use families::{diagonal, henon, jonquieres, linear, monomial_map, sigma};
pub use growth::{
    classify_growth, dynamical_degree_estimate, iterate_degrees, DegreeSequence,
    DistortionConsequence, DynamicalDegree, GrowthClass, GrowthVerdict, IterCaps,
};

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::polynomials::{
    gcd_many, parse_homogeneous, rational_content, substitute, HomoPoly, Rational, VarNames,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BirMap {
    comps: Vec<HomoPoly>,
}

impl BirMap {
    /// Normalizes `m+1` homogeneous components in `m+1` variables.
    pub fn new(comps: Vec<HomoPoly>) -> Result<Self> {
        let n = comps.len();
        if n < 2 {
            return Err(Error::InvalidParameter(
                "a map of P^m needs m+1 >= 2 components".into(),
            ));
        }
        if let Some(p) = comps.iter().find(|p| p.nvars() != n) {
            return Err(Error::VariableMismatch(n, p.nvars()));
        }
        let nonzero: Vec<&HomoPoly> = comps.iter().filter(|p| !p.is_zero()).collect();
        let d = nonzero.first().ok_or(Error::DegenerateMap)?.degree();
        if let Some(p) = nonzero.iter().find(|p| p.degree() != d) {
            return Err(Error::DegreeMismatch(d, p.degree()));
        }
        let g = gcd_many(&comps)?;
        let comps: Vec<HomoPoly> = if g.degree() == 0 {
            comps
        } else {
            comps
                .iter()
                .map(|p| {
                    if p.is_zero() {
                        Ok(HomoPoly::zero(n, d - g.degree()))
                    } else {
                        p.div_exact(&g)?
                            .ok_or_else(|| Error::VerificationFailed("gcd does not divide".into()))
                    }
                })
                .collect::<Result<_>>()?
        };
        Ok(Self::scale_canonical(comps))
    }

    fn scale_canonical(comps: Vec<HomoPoly>) -> Self {
        let content = rational_content(comps.iter().flat_map(|p| p.terms().map(|(_, c)| c)))
            .expect("some component is nonzero");
        let first_negative = comps
            .iter()
            .find_map(|p| p.first_term())
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        let s = if first_negative {
            -content.recip()
        } else {
            content.recip()
        };
        BirMap {
            comps: comps.iter().map(|p| p.scale(&s)).collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let n = dim + 1;
        BirMap {
            comps: (0..n).map(|i| HomoPoly::var(n, i)).collect(),
        }
    }

    /// Parses `[y*z : x*z : x*y]`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse("map must be written as [f0 : f1 : ...]".into()))?;
        let parts: Vec<&str> = inner.split(':').collect();
        let n = parts.len();
        let mut comps = parts
            .iter()
            .map(|s| parse_homogeneous(s, n, None))
            .collect::<Result<Vec<_>>>()?;
        if let Some(d) = comps.iter().find(|p| !p.is_zero()).map(|p| p.degree()) {
            for p in comps.iter_mut().filter(|p| p.is_zero()) {
                *p = HomoPoly::zero(n, d);
            }
        }
        Self::new(comps)
    }

    /// Dimension `m` of the projective space.
    pub fn dim(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn degree(&self) -> u32 {
        self.comps
            .iter()
            .find(|p| !p.is_zero())
            .map(|p| p.degree())
            .unwrap_or(0)
    }

    pub fn components(&self) -> &[HomoPoly] {
        &self.comps
    }

    pub fn num_terms(&self) -> usize {
        self.comps.iter().map(|p| p.num_terms()).sum()
    }

    /// All coefficients, components in order, terms in ascending order.
    pub fn coefficients(&self) -> impl Iterator<Item = &Rational> {
        self.comps.iter().flat_map(|p| p.terms().map(|(_, c)| c))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BirMap) -> Result<BirMap> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        let raw: Vec<HomoPoly> = self
            .comps
            .iter()
            .map(|f| substitute(f, &other.comps))
            .collect();
        if raw.iter().all(|p| p.is_zero()) {
            return Err(Error::DegenerateMap);
        }
        BirMap::new(raw)
    }

    /// `self^k` by repeated right composition, `k >= 0`.
    pub fn pow(&self, k: u32) -> Result<BirMap> {
        let mut acc = BirMap::identity(self.dim());
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Largest bit length among coefficient numerators.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coefficients()
            .map(|c| c.numer().bits())
            .max()
            .unwrap_or(0)
    }

    pub fn to_string_with(&self, names: &VarNames) -> String {
        let parts: Vec<String> = self.comps.iter().map(|p| p.to_string_with(names)).collect();
        format!("[{}]", parts.join(" : "))
    }
}

impl fmt::Display for BirMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&VarNames::default_for(self.comps.len())))
    }
}

impl std::str::FromStr for BirMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BirMap::parse(s)
    }
}

/// Whether every coefficient is `±1` (no active place).
pub fn has_unit_coefficients(f: &BirMap) -> bool {
    f.coefficients().all(|c| c.abs().is_one())
}
