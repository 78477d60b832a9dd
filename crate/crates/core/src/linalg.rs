//! Exact square matrices over Q and dense univariate polynomials, with the
//! characteristic-polynomial / cyclotomic machinery used to decide whether
//! eigenvalues are roots of unity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomials::Rational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Square matrix with exact rational entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        RatMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("matrix must be square".into()));
        }
        Ok(RatMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n, "matrix sizes");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| &self.data[i * self.n + j] * &v[j])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> RatMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_scalar(&self) -> bool {
        let c = self.get(0, 0).clone();
        *self == Self::identity(self.n).scale(&c)
    }

    pub fn det(&self) -> Rational {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det *= &pivot;
            for r in col + 1..n {
                let f = &a[r * n + col] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = &f * &a[col * n + j];
                    a[r * n + j] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                    inv.swap(p * n + j, col * n + j);
                }
            }
            let pivot = a[col * n + col].recip();
            for j in 0..n {
                a[col * n + j] *= &pivot;
                inv[col * n + j] *= &pivot;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for j in 0..n {
                    let t = &f * &a[col * n + j];
                    a[r * n + j] -= t;
                    let t = &f * &inv[col * n + j];
                    inv[r * n + j] -= t;
                }
            }
        }
        Ok(RatMatrix { n, data: inv })
    }

    /// `self^k` for any integer `k` (negative powers need invertibility).
    pub fn pow(&self, k: i64) -> Result<RatMatrix> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Characteristic polynomial `det(xI - A)` (Faddeev-LeVerrier).
    pub fn charpoly(&self) -> UPoly {
        let n = self.n;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Self::zeros(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                next.data[i * n + i] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self.mul(&m);
            let tr = (0..n)
                .map(|i| am.data[i * n + i].clone())
                .fold(Rational::zero(), |a, b| a + b);
            coeffs[n - k] = -tr / rat(k as i64);
        }
        UPoly::new(coeffs)
    }

    /// Largest bit length among numerators and denominators.
    pub fn max_bits(&self) -> u64 {
        self.data
            .iter()
            .map(|x| x.numer().bits().max(x.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.n)
            .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .data
            .chunks(self.n)
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Dense univariate polynomial over Q, lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.len() > 1 && c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        if c.is_empty() {
            c.push(Rational::zero());
        }
        UPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let mut r = self.0.clone();
        let dd = d.degree();
        let lead = d.0[dd].clone();
        if r.len() <= dd {
            return (UPoly::new(vec![]), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    let t = &c * dc;
                    r[k + j] -= t;
                }
            }
            q[k] = c;
        }
        r.truncate(dd.max(1));
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// The k-th cyclotomic polynomial.
    pub fn cyclotomic(k: usize) -> UPoly {
        let mut p = vec![Rational::zero(); k + 1];
        p[0] = -Rational::one();
        p[k] = Rational::one();
        let mut p = UPoly::new(p);
        for d in 1..k {
            if k.is_multiple_of(d) {
                p = p.div_rem(&UPoly::cyclotomic(d)).0;
            }
        }
        p
    }
}

fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Splits off every cyclotomic factor of `p` (with multiplicity). Returns
/// the orders `k` of the cyclotomic factors found and the cofactor.
pub fn cyclotomic_part(p: &UPoly) -> (Vec<usize>, UPoly) {
    let n = p.degree();
    let mut rest = p.clone();
    let mut found = Vec::new();
    let bound = 2 * n * n + 2;
    for k in 1..=bound {
        if euler_phi(k) > rest.degree() {
            continue;
        }
        let phi = UPoly::cyclotomic(k);
        loop {
            let (q, r) = rest.div_rem(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
            found.push(k);
        }
        if rest.degree() == 0 {
            break;
        }
    }
    (found, rest)
}

pub fn lcm_all(ks: &[usize]) -> usize {
    ks.iter().fold(1usize, |a, &b| a.lcm(&b))
}

/// Largest real root of `p` in `(lo, hi)`, assuming exactly one simple root
/// there (bisection).
pub fn bisect_root(p: &UPoly, lo: f64, hi: f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    let sa = p.eval_f64(a).signum();
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if p.eval_f64(mid).signum() == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Cauchy bound on the modulus of the roots of a nonzero polynomial.
pub fn root_bound(p: &UPoly) -> f64 {
    let c = p.coeffs();
    let lead = c[c.len() - 1].abs();
    1.0 + c[..c.len() - 1]
        .iter()
        .map(|x| (x.abs() / &lead).to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

/// Integer matrix helpers for `GL_m(Z)`.
pub fn is_unimodular(m: &RatMatrix) -> bool {
    m.is_integral() && m.det().abs().is_one()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_small_matrices() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(m.charpoly(), UPoly::from_i64(&[1, -3, 1]));
        let j = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]).unwrap();
        // (x-1)^3
        assert_eq!(j.charpoly(), UPoly::from_i64(&[-1, 3, -3, 1]));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(UPoly::cyclotomic(1), UPoly::from_i64(&[-1, 1]));
        assert_eq!(UPoly::cyclotomic(4), UPoly::from_i64(&[1, 0, 1]));
        assert_eq!(UPoly::cyclotomic(6), UPoly::from_i64(&[1, -1, 1]));
        assert_eq!(UPoly::cyclotomic(12), UPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_splitting() {
        // (x-1)^2 (x^2+1) (x^2 - 3x + 1)
        let p = UPoly::from_i64(&[-1, 1])
            .mul(&UPoly::from_i64(&[-1, 1]))
            .mul(&UPoly::from_i64(&[1, 0, 1]))
            .mul(&UPoly::from_i64(&[1, -3, 1]));
        let (ks, rest) = cyclotomic_part(&p);
        assert_eq!(ks, vec![1, 1, 4]);
        assert_eq!(rest, UPoly::from_i64(&[1, -3, 1]));
    }

    #[test]
    fn inverse_and_det() {
        let m = RatMatrix::from_i64(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]).unwrap();
        assert_eq!(m.det(), rat(1));
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
        assert_eq!(
            m.pow(-2).unwrap().mul(&m.pow(2).unwrap()),
            RatMatrix::identity(3)
        );
        let s = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn golden_root() {
        let p = UPoly::from_i64(&[1, -3, 1]);
        let r = bisect_root(&p, 1.0, root_bound(&p));
        assert!((r - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }
}
