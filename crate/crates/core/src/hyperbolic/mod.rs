//! Picard-Manin classes and hyperbolic geometry.
//!
//! A class is `u = α₀ e₀ − Σ α_i e_i` over opaque point labels, stored by its
//! coefficients `α₀` and multiplicities `α_i`. The intersection form is
//! `u·v = α₀β₀ − Σ α_iβ_i`, so `e₀² = 1`, `e_i² = −1`.

mod geometry;
mod horoball;
mod lattice;

pub use geometry::{halfplane_distance, horosphere_distance, thb_length_lower_bound};
pub use horoball::{
    disjointness_certificate, epsilon_constants, horoball_member, horoball_witness_search,
    sample_isotropic, Certificate, CertificateStatus, EpsilonConstants, Family, HoroballSpec,
    QSqrt3, WitnessBudget, WitnessOutcome,
};
pub use lattice::{
    classify_lattice_isometry, e10_coxeter, e9_coxeter, orbit_growth_exponent, reflection,
    IsometryKind, IsometryReport, LatticeIsometry,
};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::rat;
use crate::polynomials::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PMClass {
    e0: Rational,
    exc: BTreeMap<String, Rational>,
}

impl PMClass {
    pub fn new<I, S>(e0: Rational, multiplicities: I) -> Self
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: Into<String>,
    {
        let mut exc = BTreeMap::new();
        for (label, m) in multiplicities {
            let e: &mut Rational = exc.entry(label.into()).or_insert_with(Rational::zero);
            *e += m;
        }
        exc.retain(|_, m: &mut Rational| !m.is_zero());
        PMClass { e0, exc }
    }

    /// `m e₀ − Σ r_i e_{label_i}` with integer data.
    pub fn integral(m: i64, multiplicities: &[(&str, i64)]) -> Self {
        Self::new(rat(m), multiplicities.iter().map(|(l, r)| (*l, rat(*r))))
    }

    pub fn e0_class() -> Self {
        Self::integral(1, &[])
    }

    /// The exceptional class `e_label` (multiplicity −1).
    pub fn exceptional(label: &str) -> Self {
        Self::integral(0, &[(label, -1)])
    }

    pub fn e0(&self) -> &Rational {
        &self.e0
    }

    pub fn multiplicity(&self, label: &str) -> Rational {
        self.exc.get(label).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.exc.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &String> {
        self.exc.keys()
    }

    pub fn add(&self, other: &PMClass) -> PMClass {
        PMClass::new(
            &self.e0 + &other.e0,
            self.exc
                .iter()
                .chain(other.exc.iter())
                .map(|(l, m)| (l.clone(), m.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> PMClass {
        PMClass::new(
            &self.e0 * c,
            self.exc.iter().map(|(l, m)| (l.clone(), m * c)),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.e0.is_integer() && self.exc.values().all(|m| m.is_integer())
    }

    pub fn self_intersection(&self) -> Rational {
        intersection(self, self)
    }

    pub fn is_isotropic(&self) -> bool {
        self.self_intersection().is_zero()
    }

    /// On the positive sheet of the unit hyperboloid.
    pub fn is_on_hyperboloid(&self) -> bool {
        self.self_intersection() == rat(1) && self.e0.is_positive()
    }
}

/// `u·v = α₀β₀ − Σ α_iβ_i` over shared labels.
pub fn intersection(u: &PMClass, v: &PMClass) -> Rational {
    let (small, large) = if u.exc.len() <= v.exc.len() {
        (u, v)
    } else {
        (v, u)
    };
    let mut acc = &u.e0 * &v.e0;
    for (l, a) in &small.exc {
        if let Some(b) = large.exc.get(l) {
            acc -= a * b;
        }
    }
    acc
}

/// `arccosh(u·v)` for classes on the positive unit hyperboloid.
pub fn hyperbolic_distance(u: &PMClass, v: &PMClass) -> Result<f64> {
    if !u.is_on_hyperboloid() || !v.is_on_hyperboloid() {
        return Err(Error::NotOnHyperboloid);
    }
    let c = intersection(u, v).to_f64().unwrap_or(f64::INFINITY);
    Ok(c.max(1.0).acosh())
}

fn q_label(i: usize) -> String {
    format!("q{i}")
}

/// Images of `e₀` and `e(q₁)` under a degree-`d` Jonquières map with base
/// points `q₁ … q_{2d−1}`.
pub fn jonquieres_pushforward(d: u32) -> Result<(PMClass, PMClass)> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let d = i64::from(d);
    let rest = (2..=(2 * d - 1) as usize).map(|i| (q_label(i), rat(1)));
    let img_e0 = PMClass::new(
        rat(d),
        std::iter::once((q_label(1), rat(d - 1))).chain(rest.clone()),
    );
    let img_e1 = PMClass::new(
        rat(d - 1),
        std::iter::once((q_label(1), rat(d - 2))).chain(rest),
    );
    Ok((img_e0, img_e1))
}

/// `c = 3l e₀ − l Σ_{j=1}^{9} e(q_j)`.
pub fn halphen_class(l: u32) -> Result<PMClass> {
    if l == 0 {
        return Err(Error::InvalidParameter("l must be at least 1".into()));
    }
    let l = i64::from(l);
    Ok(PMClass::new(
        rat(3 * l),
        (1..=9).map(|j| (q_label(j), rat(l))),
    ))
}

/// `w_J = e₀ − e(q₁)`.
pub fn w_j() -> PMClass {
    PMClass::integral(1, &[("q1", 1)])
}

/// `w_H = 3e₀ − Σ_{j=1}^{9} e(q_j)`.
pub fn w_h() -> PMClass {
    halphen_class(1).expect("l = 1")
}

/// Number of base points: labels with positive multiplicity.
pub fn bp_from_class(img_e0: &PMClass) -> Result<usize> {
    if let Some((l, _)) = img_e0.exc.iter().find(|(_, m)| m.is_negative()) {
        return Err(Error::NegativeMultiplicity(l.clone()));
    }
    Ok(img_e0.exc.len())
}

/// Least-squares slope of `bp(f^n)` against `n = 1, 2, …`.
pub fn alpha_estimate(bps: &[u64]) -> Result<f64> {
    if bps.len() < 2 {
        return Err(Error::SequenceTooShort {
            needed: 2,
            got: bps.len(),
        });
    }
    let xs: Vec<f64> = (1..=bps.len()).map(|n| n as f64).collect();
    let ys: Vec<f64> = bps.iter().map(|&b| b as f64).collect();
    Ok(least_squares_slope(&xs, &ys))
}

pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `2(d−1) = Σ a_i` and `2(d−1) = Σ a_i²`.
pub fn ruled_canonical_check(d: u32, a: &[u32]) -> bool {
    let target = 2 * (i64::from(d) - 1);
    let s: i64 = a.iter().map(|&x| i64::from(x)).sum();
    let s2: i64 = a.iter().map(|&x| i64::from(x) * i64::from(x)).sum();
    s == target && s2 == target
}

/// `√deg(n+m) ≤ √deg(n) + √deg(m)` for all `n, m ≥ 1` with `n+m` within the
/// sequence (`degrees[k]` is `deg g^{k+1}`). Returns the first failing pair.
pub fn sqrt_subadditivity(degrees: &[u64]) -> std::result::Result<(), (usize, usize)> {
    let deg = |k: usize| i128::from(degrees[k - 1]);
    for total in 2..=degrees.len() {
        for n in 1..total {
            let (a, b, c) = (deg(total), deg(n), deg(total - n));
            let lhs = a - b - c;
            if lhs > 0 && lhs * lhs > 4 * b * c {
                return Err((n, total - n));
            }
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct PMClassJson {
    e0: String,
    exc: BTreeMap<String, String>,
}

impl Serialize for PMClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PMClassJson {
            e0: self.e0.to_string(),
            exc: self
                .exc
                .iter()
                .map(|(l, m)| (l.clone(), m.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PMClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PMClassJson::deserialize(d)?;
        let parse = |s: &str| -> std::result::Result<Rational, D::Error> {
            s.parse::<Rational>()
                .or_else(|_| s.parse::<BigInt>().map(Rational::from_integer))
                .map_err(serde::de::Error::custom)
        };
        let e0 = parse(&j.e0)?;
        let exc = j
            .exc
            .iter()
            .map(|(l, m)| Ok((l.clone(), parse(m)?)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(PMClass::new(e0, exc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn intersection_examples() {
        let e0 = PMClass::e0_class();
        assert_eq!(intersection(&e0, &e0), rat(1));
        assert_eq!(w_j().self_intersection(), rat(0));
        assert_eq!(w_h().self_intersection(), rat(0));
        let e1 = PMClass::exceptional("q1");
        assert_eq!(e1.self_intersection(), rat(-1));
        assert_eq!(intersection(&e0, &e1), rat(0));
    }

    #[test]
    fn distance_examples() {
        let e0 = PMClass::e0_class();
        assert_eq!(hyperbolic_distance(&e0, &e0).unwrap(), 0.0);
        let (img, _) = jonquieres_pushforward(5).unwrap();
        assert!((hyperbolic_distance(&e0, &img).unwrap() - 5f64.acosh()).abs() < 1e-12);
        let u = PMClass::new(ratio(5, 4), [("q1", ratio(3, 4))]);
        assert!((hyperbolic_distance(&e0, &u).unwrap() - 1.25f64.acosh()).abs() < 1e-12);
        assert_eq!(
            hyperbolic_distance(&e0, &w_j()),
            Err(Error::NotOnHyperboloid)
        );
    }

    #[test]
    fn pushforward_examples() {
        let (a, b) = jonquieres_pushforward(1).unwrap();
        assert_eq!(a, PMClass::e0_class());
        assert_eq!(b, PMClass::exceptional("q1"));
        let (a, _) = jonquieres_pushforward(2).unwrap();
        assert_eq!(a, PMClass::integral(2, &[("q1", 1), ("q2", 1), ("q3", 1)]));
        assert_eq!(a.self_intersection(), rat(1));
    }

    #[test]
    fn halphen_examples() {
        assert_eq!(halphen_class(1).unwrap(), w_h());
        let c = halphen_class(2).unwrap();
        assert_eq!(c.self_intersection(), rat(0));
        assert_eq!(*halphen_class(3).unwrap().e0(), rat(9));
    }

    #[test]
    fn base_points_and_alpha() {
        assert_eq!(bp_from_class(&PMClass::e0_class()).unwrap(), 0);
        let (img, _) = jonquieres_pushforward(7).unwrap();
        assert_eq!(bp_from_class(&img).unwrap(), 13);
        assert!(matches!(
            bp_from_class(&PMClass::exceptional("p")),
            Err(Error::NegativeMultiplicity(_))
        ));
        assert!((alpha_estimate(&[3, 5, 7, 9, 11]).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_constraint_examples() {
        assert!(ruled_canonical_check(1, &[]));
        assert!(ruled_canonical_check(3, &[1, 1, 1, 1]));
        assert!(!ruled_canonical_check(3, &[2, 1, 1]));
    }

    #[test]
    fn json_round_trip() {
        let c = w_h();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with(r#"{"e0":"3","exc":{"q1":"1""#));
        let back: PMClass = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn subadditivity() {
        let quad: Vec<u64> = (1..=50).map(|n| n * n + 1).collect();
        assert_eq!(sqrt_subadditivity(&quad), Ok(()));
        let exp: Vec<u64> = (1..=20).map(|n| 1 << n).collect();
        assert!(sqrt_subadditivity(&exp).is_err());
    }
}
