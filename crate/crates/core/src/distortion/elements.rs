use std::fmt::Debug;
use std::hash::Hash;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::maps::BirMap;
use crate::polynomials::Rational;

/// An exact element domain: equality is equality of canonical forms.
pub trait GroupElement: Clone + Eq + Hash + Send + Sync + Debug {
    fn mul(&self, other: &Self) -> Result<Self>;
    fn canonical(&self) -> String;
    /// Coefficient size in bits, for caps.
    fn bits(&self) -> u64;
    fn degree(&self) -> u32 {
        1
    }
}

impl GroupElement for RatMatrix {
    fn mul(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(self.n(), other.n()));
        }
        Ok(RatMatrix::mul(self, other))
    }

    fn canonical(&self) -> String {
        self.to_string()
    }

    fn bits(&self) -> u64 {
        self.max_bits()
    }
}

/// Product `f · g = f ∘ g`.
impl GroupElement for BirMap {
    fn mul(&self, other: &Self) -> Result<Self> {
        self.compose(other)
    }

    fn canonical(&self) -> String {
        self.to_string()
    }

    fn bits(&self) -> u64 {
        self.max_coeff_bits()
    }

    fn degree(&self) -> u32 {
        BirMap::degree(self)
    }
}

/// `x ↦ Mx + v`, multiplied as `(M₁,v₁)(M₂,v₂) = (M₁M₂, v₁ + M₁v₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub m: RatMatrix,
    pub v: Vec<Rational>,
}

impl Affine {
    pub fn new(m: RatMatrix, v: Vec<Rational>) -> Result<Self> {
        if v.len() != m.n() {
            return Err(Error::DimensionMismatch(m.n(), v.len()));
        }
        Ok(Affine { m, v })
    }

    pub fn identity(n: usize) -> Self {
        Affine {
            m: RatMatrix::identity(n),
            v: vec![Rational::zero(); n],
        }
    }

    pub fn translation(v: Vec<Rational>) -> Self {
        Affine {
            m: RatMatrix::identity(v.len()),
            v,
        }
    }

    pub fn linear(m: RatMatrix) -> Self {
        let n = m.n();
        Affine {
            m,
            v: vec![Rational::zero(); n],
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let mi = self.m.inverse()?;
        let v = mi.mul_vec(&self.v).into_iter().map(|x| -x).collect();
        Ok(Affine { m: mi, v })
    }

    pub fn is_translation(&self) -> bool {
        self.m.is_identity()
    }
}

impl GroupElement for Affine {
    fn mul(&self, o: &Self) -> Result<Self> {
        if self.v.len() != o.v.len() {
            return Err(Error::DimensionMismatch(self.v.len(), o.v.len()));
        }
        let mv = self.m.mul_vec(&o.v);
        Ok(Affine {
            m: RatMatrix::mul(&self.m, &o.m),
            v: self.v.iter().zip(mv).map(|(a, b)| a + b).collect(),
        })
    }

    fn canonical(&self) -> String {
        let v: Vec<String> = self.v.iter().map(|x| x.to_string()).collect();
        format!("({}, [{}])", self.m, v.join(", "))
    }

    fn bits(&self) -> u64 {
        let vb = self
            .v
            .iter()
            .map(|x| x.numer().bits().max(x.denom().bits()))
            .max()
            .unwrap_or(0);
        self.m.max_bits().max(vb)
    }
}

/// Square integer matrix with machine-word entries; overflow is reported as
/// a cap violation. Compact enough for large balls in nilpotent groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    e: Box<[i64]>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut e = vec![0; n * n];
        (0..n).for_each(|i| e[i * n + i] = 1);
        IntMatrix { n, e: e.into() }
    }

    /// `I + c E_{ij}`.
    pub fn elementary(n: usize, i: usize, j: usize, c: i64) -> Self {
        let mut m = Self::identity(n);
        m.e[i * n + j] += c;
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.e[i * self.n + j]
    }

    pub fn to_rat(&self) -> RatMatrix {
        let rows: Vec<Vec<Rational>> = self
            .e
            .chunks(self.n)
            .map(|r| {
                r.iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        RatMatrix::from_rows(rows).expect("square")
    }
}

impl GroupElement for IntMatrix {
    fn mul(&self, o: &Self) -> Result<Self> {
        let n = self.n;
        if n != o.n {
            return Err(Error::DimensionMismatch(n, o.n));
        }
        let overflow = || Error::CapExceeded("integer matrix entry overflow".into());
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.e[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let p = a.checked_mul(o.e[k * n + j]).ok_or_else(overflow)?;
                    e[i * n + j] = e[i * n + j].checked_add(p).ok_or_else(overflow)?;
                }
            }
        }
        Ok(IntMatrix { n, e: e.into() })
    }

    fn canonical(&self) -> String {
        let rows: Vec<String> = self
            .e
            .chunks(self.n)
            .map(|r| {
                let c: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", c.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    fn bits(&self) -> u64 {
        self.e
            .iter()
            .map(|x| u64::from(64 - x.unsigned_abs().leading_zeros()))
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn affine_product_convention() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        let a = Affine::linear(m.clone());
        let t = Affine::translation(vec![rat(1), rat(0)]);
        // M t M^{-1} is translation by M e₁
        let c = a.mul(&t).unwrap().mul(&a.inverse().unwrap()).unwrap();
        assert_eq!(c, Affine::translation(vec![rat(2), rat(1)]));
        assert!(c.is_translation());
        assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), Affine::identity(2));
    }

    #[test]
    fn int_matrix_overflow_is_a_cap() {
        let big = IntMatrix::elementary(2, 0, 1, i64::MAX / 2 + 1);
        assert!(matches!(big.mul(&big), Err(Error::CapExceeded(_))));
        let u = IntMatrix::elementary(3, 0, 1, 1);
        assert_eq!(u.mul(&u).unwrap().get(0, 1), 2);
        assert_eq!(u.bits(), 1);
        assert_eq!(u.to_rat().get(0, 1), &rat(1));
    }
}
