//! Named families of maps.

use num_traits::{One, ToPrimitive, Zero};

use super::BirMap;
use crate::error::{Error, Result};
use crate::linalg::{is_unimodular, RatMatrix};
use crate::polynomials::{HomoPoly, Monomial, Rational};

/// The projective linear map `x ↦ A x`.
pub fn linear(a: &RatMatrix) -> Result<BirMap> {
    if a.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let n = a.n();
    let comps = (0..n)
        .map(|i| {
            HomoPoly::from_terms(
                n,
                1,
                (0..n).map(|j| (Monomial::var(n, j).0, a.get(i, j).clone())),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    BirMap::new(comps)
}

pub fn diagonal(entries: &[Rational]) -> Result<BirMap> {
    linear(&RatMatrix::diagonal(entries))
}

/// Standard Cremona involution `x_i ↦ Π_{j≠i} x_j` of P^dim.
pub fn sigma(dim: usize) -> Result<BirMap> {
    if dim < 1 {
        return Err(Error::InvalidParameter(
            "dimension must be at least 1".into(),
        ));
    }
    let n = dim + 1;
    let comps = (0..n)
        .map(|i| {
            let e: Vec<u32> = (0..n).map(|j| u32::from(j != i)).collect();
            HomoPoly::monomial(Rational::one(), Monomial(e))
        })
        .collect();
    BirMap::new(comps)
}

/// `Σ c_k X^k Z^{q-k}` for `q(x) = Σ c_k x^k`, in P² variables.
fn homogenize_univariate(coeffs: &[Rational], var: usize, q: u32) -> Result<HomoPoly> {
    HomoPoly::from_terms(
        3,
        q,
        coeffs.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0u32; 3];
            e[var] = k as u32;
            e[2] = q - k as u32;
            (e, c.clone())
        }),
    )
}

fn trim(coeffs: &[Rational]) -> Result<&[Rational]> {
    let len = coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .map(|i| i + 1)
        .ok_or_else(|| Error::InvalidParameter("polynomial parameter is zero".into()))?;
    Ok(&coeffs[..len])
}

/// The Jonquières map `(x, y) ↦ (x, Q(x) y)` with `Q` given by its
/// coefficients (constant term first).
pub fn jonquieres(q: &[Rational]) -> Result<BirMap> {
    let q = trim(q)?;
    let deg = (q.len() - 1) as u32;
    let qt = homogenize_univariate(q, 0, deg)?;
    let y = HomoPoly::var(3, 1);
    let z = HomoPoly::var(3, 2);
    let x = HomoPoly::var(3, 0);
    BirMap::new(vec![x.mul(&z.pow(deg))?, qt.mul(&y)?, z.pow(deg + 1)])
}

/// Hénon-type map `(x, y) ↦ (y, p(y) - delta·x)`, `deg p >= 2`, `delta != 0`.
pub fn henon(p: &[Rational], delta: &Rational) -> Result<BirMap> {
    let p = trim(p)?;
    if p.len() < 3 {
        return Err(Error::InvalidParameter(
            "Hénon polynomial needs degree >= 2".into(),
        ));
    }
    if delta.is_zero() {
        return Err(Error::InvalidParameter("delta must be nonzero".into()));
    }
    let d = (p.len() - 1) as u32;
    let y = HomoPoly::var(3, 1);
    let z = HomoPoly::var(3, 2);
    let x = HomoPoly::var(3, 0);
    let pt = homogenize_univariate(p, 1, d)?;
    let second = pt.sub(&x.mul(&z.pow(d - 1))?.scale(delta))?;
    BirMap::new(vec![y.mul(&z.pow(d - 1))?, second, z.pow(d)])
}

/// The monomial map of a unimodular `m×m` integer matrix, row convention:
/// `y_j = Π_i x_i^{a[j][i]}`, homogenized with the last coordinate.
pub fn monomial_map(a: &RatMatrix) -> Result<BirMap> {
    if !is_unimodular(a) {
        return Err(Error::NotUnimodular(a.to_string()));
    }
    let m = a.n();
    let n = m + 1;
    let mut exps: Vec<Vec<i64>> = (0..m)
        .map(|j| {
            let row: Vec<i64> = (0..m)
                .map(|i| a.get(j, i).to_integer().to_i64().expect("small entries"))
                .collect();
            let s: i64 = row.iter().sum();
            let mut e = row;
            e.push(-s);
            e
        })
        .collect();
    exps.push(vec![0; n]);
    let mins: Vec<i64> = (0..n)
        .map(|k| exps.iter().map(|e| e[k]).min().expect("rows"))
        .collect();
    let comps = exps
        .iter()
        .map(|e| {
            let mono: Vec<u32> = e.iter().zip(&mins).map(|(x, lo)| (x - lo) as u32).collect();
            HomoPoly::monomial(Rational::one(), Monomial(mono))
        })
        .collect();
    BirMap::new(comps)
}
