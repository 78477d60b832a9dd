//! Isometries of the odd unimodular lattice `Z^{1,k}`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{bisect_root, cyclotomic_part, lcm_all, rat, root_bound, RatMatrix};
use crate::polynomials::Rational;

/// Integer matrix `M` with `MᵀJM = J`, `J = diag(1, −1, …, −1)`, preserving
/// the positive sheet. Acts on column vectors of coordinates in `e₀, e₁, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIsometry {
    m: RatMatrix,
}

fn form(n: usize) -> RatMatrix {
    let mut d = vec![rat(-1); n];
    d[0] = rat(1);
    RatMatrix::diagonal(&d)
}

fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter()
        .zip(v)
        .enumerate()
        .map(|(i, (a, b))| if i == 0 { a * b } else { -(a * b) })
        .fold(Rational::zero(), |x, y| x + y)
}

impl LatticeIsometry {
    pub fn new(m: RatMatrix) -> Result<Self> {
        let j = form(m.n());
        if !m.is_integral() || m.transpose().mul(&j).mul(&m) != j {
            return Err(Error::NotAnIsometry);
        }
        if !m.get(0, 0).is_positive() {
            return Err(Error::NotAnIsometry);
        }
        Ok(LatticeIsometry { m })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(RatMatrix::from_i64(rows)?)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.m
    }

    pub fn compose(&self, other: &LatticeIsometry) -> LatticeIsometry {
        LatticeIsometry {
            m: self.m.mul(&other.m),
        }
    }

    /// `(M^n e₀)·e₀` for `n = 1..=n_max`: the class-level degree sequence.
    pub fn e0_orbit(&self, n_max: usize) -> Vec<BigInt> {
        let n = self.m.n();
        let rows: Vec<Vec<BigInt>> = self
            .m
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
            .collect();
        let mut v: Vec<BigInt> = (0..n).map(|i| BigInt::from(u8::from(i == 0))).collect();
        let mut out = Vec::with_capacity(n_max);
        for _ in 0..n_max {
            v = rows
                .iter()
                .map(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum())
                .collect();
            out.push(v[0].clone());
        }
        out
    }
}

/// Reflection `x ↦ x − 2 (x·v)/(v·v) v` in a non-isotropic vector; integral
/// when `v·v ∈ {±1, ±2}` and `v` is integral.
pub fn reflection(v: &[i64]) -> Result<RatMatrix> {
    let v: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
    let n = v.len();
    let vv = dot(&v, &v);
    if vv.is_zero() {
        return Err(Error::InvalidParameter(
            "cannot reflect in an isotropic vector".into(),
        ));
    }
    let mut m = RatMatrix::zeros(n);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = rat(1);
        let c = rat(2) * dot(&e, &v) / &vv;
        for i in 0..n {
            m.set(i, j, &e[i] - &c * &v[i]);
        }
    }
    Ok(m)
}

fn coxeter(k: usize) -> LatticeIsometry {
    let n = k + 1;
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut a0 = vec![0i64; n];
    a0[0] = 1;
    a0[1] = -1;
    a0[2] = -1;
    a0[3] = -1;
    roots.push(a0);
    for i in 1..k {
        let mut a = vec![0i64; n];
        a[i] = 1;
        a[i + 1] = -1;
        roots.push(a);
    }
    let m = roots
        .iter()
        .map(|r| reflection(r).expect("roots are not isotropic"))
        .fold(RatMatrix::identity(n), |acc, s| acc.mul(&s));
    LatticeIsometry::new(m).expect("products of lattice reflections are isometries")
}

/// Product of the reflections in `e₀−e₁−e₂−e₃, e₁−e₂, …, e₈−e₉` on
/// `Z^{1,9}`: an affine Weyl element of infinite order fixing `w_H`.
pub fn e9_coxeter() -> LatticeIsometry {
    coxeter(9)
}

/// The analogous product on `Z^{1,10}`; its spectral radius is Lehmer's
/// number.
pub fn e10_coxeter() -> LatticeIsometry {
    coxeter(10)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsometryKind {
    Elliptic,
    Parabolic,
    Loxodromic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsometryReport {
    pub kind: IsometryKind,
    pub spectral_radius: f64,
    pub translation_length: f64,
    /// Characteristic polynomial, constant term first.
    pub charpoly: Vec<String>,
    pub order: Option<usize>,
}

/// Loxodromic iff the characteristic polynomial has a non-cyclotomic factor
/// (then the spectral radius is its unique root above 1); otherwise elliptic
/// iff of finite order, parabolic else.
pub fn classify_lattice_isometry(m: &LatticeIsometry) -> IsometryReport {
    let cp = m.m.charpoly();
    let charpoly = cp.coeffs().iter().map(|c| c.to_string()).collect();
    let (orders, rest) = cyclotomic_part(&cp);
    if rest.degree() > 0 {
        let lambda = bisect_root(&rest, 1.0, root_bound(&rest));
        return IsometryReport {
            kind: IsometryKind::Loxodromic,
            spectral_radius: lambda,
            translation_length: lambda.ln(),
            charpoly,
            order: None,
        };
    }
    let l = lcm_all(&orders);
    let finite = m.m.pow(l as i64).map(|p| p.is_identity()).unwrap_or(false);
    IsometryReport {
        kind: if finite {
            IsometryKind::Elliptic
        } else {
            IsometryKind::Parabolic
        },
        spectral_radius: 1.0,
        translation_length: 0.0,
        charpoly,
        order: finite.then_some(l),
    }
}

/// Least-squares exponent of `log (M^n e₀)·e₀` against `log n` over
/// logarithmically spaced `n` in `[n_min, n_max]`.
pub fn orbit_growth_exponent(
    m: &LatticeIsometry,
    n_min: usize,
    n_max: usize,
    samples: usize,
) -> f64 {
    let orbit = m.e0_orbit(n_max);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let (a, b) = ((n_min as f64).ln(), (n_max as f64).ln());
    let mut last = 0;
    for s in 0..samples {
        let n = (a + (b - a) * s as f64 / (samples - 1) as f64)
            .exp()
            .round() as usize;
        if n == last || n == 0 || n > n_max {
            continue;
        }
        last = n;
        xs.push((n as f64).ln());
        ys.push(orbit[n - 1].to_f64().unwrap_or(f64::INFINITY).ln());
    }
    super::least_squares_slope(&xs, &ys)
}
