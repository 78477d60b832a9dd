//! Horoballs around isotropic classes, the disjointness certificate for the
//! Jonquières and Halphen families, and a numerical witness search.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{intersection, w_h, w_j, PMClass};
use crate::error::{Error, Result};
use crate::linalg::rat;
use crate::polynomials::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    J,
    H,
}

impl Family {
    /// `w_J` or `w_H`.
    pub fn reference_class(self) -> PMClass {
        match self {
            Family::J => w_j(),
            Family::H => w_h(),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "J" | "j" => Ok(Family::J),
            "H" | "h" => Ok(Family::H),
            _ => Err(Error::Parse(format!(
                "unknown family {s:?}, expected J or H"
            ))),
        }
    }
}

/// `H_w(ε) = { v : v² = 1, v·e₀ > 0, 0 < v·w < ε }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoroballSpec {
    center: PMClass,
    #[serde(serialize_with = "ser_rational")]
    epsilon: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl HoroballSpec {
    pub fn new(center: PMClass, epsilon: Rational) -> Result<Self> {
        if !center.is_isotropic() || !center.e0().is_positive() {
            return Err(Error::NotIsotropic);
        }
        if !epsilon.is_positive() {
            return Err(Error::InvalidParameter("epsilon must be positive".into()));
        }
        Ok(HoroballSpec { center, epsilon })
    }

    /// Uses the exact binary value of `epsilon`.
    pub fn from_f64(center: PMClass, epsilon: f64) -> Result<Self> {
        Self::new(center, exact_rational(epsilon)?)
    }

    pub fn center(&self) -> &PMClass {
        &self.center
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }
}

fn exact_rational(x: f64) -> Result<Rational> {
    Rational::from_float(x)
        .ok_or_else(|| Error::InvalidParameter(format!("epsilon must be finite, got {x}")))
}

pub fn horoball_member(v: &PMClass, ball: &HoroballSpec) -> Result<bool> {
    if !v.is_on_hyperboloid() {
        return Err(Error::NotOnHyperboloid);
    }
    let p = intersection(v, &ball.center);
    Ok(p.is_positive() && p < ball.epsilon)
}

/// Numbers `a + b√3` with rational `a, b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSqrt3 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt3 { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        QSqrt3 {
            a,
            b: Rational::zero(),
        }
    }

    /// `ε_J = (√3 − 1)/2`.
    pub fn epsilon_j() -> Self {
        let h = Rational::new(BigInt::one(), BigInt::from(2));
        QSqrt3 {
            a: -h.clone(),
            b: h,
        }
    }

    pub fn add(&self, o: &QSqrt3) -> QSqrt3 {
        QSqrt3 {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn mul(&self, o: &QSqrt3) -> QSqrt3 {
        QSqrt3 {
            a: &self.a * &o.a + rat(3) * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsilonConstants {
    pub epsilon_j: f64,
    pub epsilon_h: f64,
    /// 40 decimal digits after the point.
    pub epsilon_j_digits: String,
    pub epsilon_h_digits: String,
    pub epsilon_j_closed_form: &'static str,
    pub epsilon_h_closed_form: &'static str,
    /// `ε_J² + ε_J = 1/2` checked in `Q(√3)`.
    pub epsilon_j_identity: bool,
    /// The commonly printed rounding of `ε_H`.
    pub epsilon_h_printed: f64,
    /// `ε_H − 0.3509`; nonzero in the fourth decimal.
    pub epsilon_h_discrepancy: f64,
}

const SCALE_DIGITS: u32 = 50;
const SHOWN_DIGITS: usize = 40;

fn scale() -> BigUint {
    BigUint::from(10u32).pow(SCALE_DIGITS)
}

/// `⌊√k · 10^50⌋`.
fn scaled_sqrt(k: &BigUint) -> BigUint {
    (k * scale() * scale()).sqrt()
}

fn scaled_to_string(v: &BigUint) -> String {
    let s = scale();
    let int = v / &s;
    let frac = format!(
        "{:0>width$}",
        (v % &s).to_string(),
        width = SCALE_DIGITS as usize
    );
    format!("{int}.{}", &frac[..SHOWN_DIGITS])
}

pub fn epsilon_constants() -> EpsilonConstants {
    let s = scale();
    let s3 = scaled_sqrt(&BigUint::from(3u32));
    let s2 = scaled_sqrt(&BigUint::from(2u32));
    let ej = (&s3 - &s) / 2u32;
    // √((3√3+1)/18) at scale 10^50: isqrt of the scaled radicand times 10^50
    let radicand = (&s3 * 3u32 + &s) / 18u32;
    let root = (radicand * &s).sqrt();
    let eh = root - s2 / 6u32;
    let epsilon_j_digits = scaled_to_string(&ej);
    let epsilon_h_digits = scaled_to_string(&eh);
    let epsilon_j: f64 = epsilon_j_digits.parse().expect("decimal");
    let epsilon_h: f64 = epsilon_h_digits.parse().expect("decimal");
    let e = QSqrt3::epsilon_j();
    let identity = e.mul(&e).add(&e) == QSqrt3::rational(Rational::new(1.into(), 2.into()));
    EpsilonConstants {
        epsilon_j,
        epsilon_h,
        epsilon_j_digits,
        epsilon_h_digits,
        epsilon_j_closed_form: "(sqrt(3) - 1)/2",
        epsilon_h_closed_form: "sqrt((3 sqrt(3) + 1)/18) - sqrt(2)/6",
        epsilon_j_identity: identity,
        epsilon_h_printed: 0.3509,
        epsilon_h_discrepancy: epsilon_h - 0.3509,
    }
}

/// `q < (√3−1)/2` for `q > 0`, i.e. `(2q+1)² < 3`.
fn below_epsilon_j(q: &Rational) -> bool {
    let t = rat(2) * q + rat(1);
    &t * &t < rat(3)
}

/// `q ≤ ε_H` for `q > 0`, i.e. `6q² + 2√2 q ≤ √3`.
fn at_most_epsilon_h(q: &Rational) -> bool {
    let a = rat(6) * q * q;
    let b = rat(2) * q;
    let r = rat(3) - &a * &a - rat(2) * &b * &b;
    !r.is_negative() && rat(8) * &a * &a * &b * &b <= &r * &r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateStatus {
    Certified,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub status: CertificateStatus,
    pub family: Family,
    pub epsilon: f64,
    /// `"< (sqrt(3)-1)/2"` or `"<= sqrt((3 sqrt(3)+1)/18) - sqrt(2)/6"`.
    pub threshold: String,
    pub threshold_value: f64,
    /// `hw·e₀`.
    pub m: String,
    /// `s₁ = m − r₁` for J, `S = Σ_{j≤9} (m/3 − r_j)` for H.
    pub s: String,
    pub reason: String,
}

/// Decides whether `H_w(ε)` and `H_{hw}(ε)` are certified disjoint, where
/// `w` is the family's reference class and `hw` an integral isotropic class
/// with nonnegative multiplicities.
pub fn disjointness_certificate(hw: &PMClass, family: Family, epsilon: f64) -> Result<Certificate> {
    if !hw.is_integral() {
        return Err(Error::InvalidParameter(
            "hw must have integer coefficients".into(),
        ));
    }
    if let Some((l, _)) = hw.multiplicities().find(|(_, r)| r.is_negative()) {
        return Err(Error::NegativeMultiplicity(l.clone()));
    }
    if !hw.is_isotropic() || !hw.e0().is_positive() {
        return Err(Error::NotIsotropic);
    }
    let q = exact_rational(epsilon)?;
    if !q.is_positive() {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    let m = hw.e0().clone();
    let consts = epsilon_constants();
    let (s, below, threshold, threshold_value) = match family {
        Family::J => (
            &m - hw.multiplicity("q1"),
            below_epsilon_j(&q),
            "< (sqrt(3)-1)/2",
            consts.epsilon_j,
        ),
        Family::H => {
            let third = &m / rat(3);
            let s = (1..=9).fold(Rational::zero(), |acc, j| {
                acc + &third - hw.multiplicity(&format!("q{j}"))
            });
            (
                s,
                at_most_epsilon_h(&q),
                "<= sqrt((3 sqrt(3)+1)/18) - sqrt(2)/6",
                consts.epsilon_h,
            )
        }
    };
    let (status, reason) = if !s.is_positive() {
        (
            CertificateStatus::NotApplicable,
            "hw is a multiple of the reference class".to_string(),
        )
    } else if !below {
        (
            CertificateStatus::NotApplicable,
            format!("epsilon {epsilon} is not {threshold}"),
        )
    } else {
        (
            CertificateStatus::Certified,
            "hw differs from the reference class and epsilon is below the threshold".to_string(),
        )
    };
    Ok(Certificate {
        status,
        family,
        epsilon,
        threshold: threshold.to_string(),
        threshold_value,
        m: m.to_string(),
        s: s.to_string(),
        reason,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessBudget {
    pub restarts: usize,
    pub seed: u64,
    /// Projection sweeps per restart.
    pub max_iters: usize,
}

impl Default for WitnessBudget {
    fn default() -> Self {
        WitnessBudget {
            restarts: 1000,
            seed: 0,
            max_iters: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome")]
pub enum WitnessOutcome {
    Found {
        /// Coefficient of `e₀`.
        e0: f64,
        /// Multiplicities on the supports plus the free label.
        multiplicities: Vec<(String, f64)>,
        /// `|u² − 1|`.
        hyperboloid_residual: f64,
        /// `u·w` and `u·hw`.
        products: (f64, f64),
        restart: usize,
    },
    NotFound {
        /// Minus the best value of the smallest constraint slack.
        margin: f64,
        restarts: usize,
    },
}

const CHUNK: usize = 64;
const FREE_LABEL: &str = "_free";

struct Problem {
    /// `(w₀, w_i)` and `(hw₀, hw_i)` on the label union.
    w: (f64, Vec<f64>),
    h: (f64, Vec<f64>),
    eps: f64,
}

/// `u = α₀ e₀ − Σ α_i e_i` restricted to the label union.
#[derive(Clone)]
struct Point {
    a0: f64,
    x: Vec<f64>,
}

impl Problem {
    fn dot(&self, c: &(f64, Vec<f64>), p: &Point) -> f64 {
        p.a0 * c.0 - c.1.iter().zip(&p.x).map(|(a, b)| a * b).sum::<f64>()
    }

    fn rho(p: &Point) -> f64 {
        (1.0 + p.x.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    fn hyp(&self, p: &Point) -> f64 {
        p.a0 - Self::rho(p)
    }

    fn open_slack(&self, p: &Point) -> f64 {
        let (pw, ph) = (self.dot(&self.w, p), self.dot(&self.h, p));
        pw.min(self.eps - pw).min(ph).min(self.eps - ph)
    }

    fn value(&self, p: &Point) -> f64 {
        self.hyp(p).min(self.open_slack(p))
    }

    fn feasible(&self, p: &Point) -> bool {
        self.hyp(p) >= 0.0 && self.open_slack(p) > 0.0
    }

    /// Moves `p` onto `{ sign·(u·c) ≥ target }` if it is outside.
    fn project_linear(c: &(f64, Vec<f64>), sign: f64, target: f64, p: &mut Point) {
        let v = sign * (p.a0 * c.0 - c.1.iter().zip(&p.x).map(|(a, b)| a * b).sum::<f64>());
        if v >= target {
            return;
        }
        let norm2 = c.0 * c.0 + c.1.iter().map(|a| a * a).sum::<f64>();
        let t = sign * (target - v) / norm2;
        p.a0 += t * c.0;
        p.x.iter_mut().zip(&c.1).for_each(|(x, a)| *x -= t * a);
    }

    /// Subgradient projection onto `α₀ ≥ √(1 + Σα_i²)`.
    fn project_hyp(p: &mut Point) {
        let rho = Self::rho(p);
        let s = p.a0 - rho;
        if s >= 0.0 {
            return;
        }
        let g2 = 1.0 + p.x.iter().map(|v| v * v).sum::<f64>() / (rho * rho);
        let t = -s / g2;
        p.a0 += t;
        p.x.iter_mut().for_each(|v| *v -= t * *v / rho);
    }

    /// Cyclic projections onto the constraints shrunk by `δ`, keeping the
    /// best point seen. The feasible set is convex, so this converges when
    /// it is nonempty.
    fn descend(&self, mut p: Point, max_iters: usize) -> (Point, f64) {
        let delta = 1e-6 * self.eps;
        let mut best = (p.clone(), self.value(&p));
        for _ in 0..max_iters {
            if self.feasible(&p) {
                return (p.clone(), self.value(&p));
            }
            Self::project_hyp(&mut p);
            Self::project_linear(&self.w, 1.0, delta, &mut p);
            Self::project_linear(&self.w, -1.0, delta - self.eps, &mut p);
            Self::project_linear(&self.h, 1.0, delta, &mut p);
            Self::project_linear(&self.h, -1.0, delta - self.eps, &mut p);
            let v = self.value(&p);
            if v > best.1 {
                best = (p.clone(), v);
            }
        }
        if self.feasible(&p) {
            let v = self.value(&p);
            return (p, v);
        }
        best
    }
}

struct RestartResult {
    index: usize,
    feasible: bool,
    value: f64,
    point: Point,
}

fn better(a: RestartResult, b: RestartResult) -> RestartResult {
    let key = |r: &RestartResult| (r.feasible, r.value);
    let (ka, kb) = (key(&a), key(&b));
    let a_wins = if a.feasible && b.feasible {
        a.index < b.index
    } else if ka.0 != kb.0 {
        ka.0
    } else if ka.1 != kb.1 {
        ka.1 > kb.1
    } else {
        a.index < b.index
    };
    if a_wins {
        a
    } else {
        b
    }
}

fn chunk_seed(seed: u64, chunk: usize) -> u64 {
    seed ^ (chunk as u64)
        .wrapping_add(1)
        .wrapping_mul(0xD1B5_4A32_D192_ED03)
}

fn validate_center(c: &PMClass) -> Result<()> {
    if !c.is_isotropic() || !c.e0().is_positive() {
        return Err(Error::NotIsotropic);
    }
    Ok(())
}

/// Searches for `u` with `u² = 1`, `u·e₀ > 0`, `0 < u·w < ε`, `0 < u·hw < ε`.
///
/// Restart 0 starts at `e₀`, restart 1 at the midpoint of the geodesic
/// joining the two boundary points, the others at random points of the
/// hyperboloid. Restarts are processed in fixed chunks with per-chunk seeds
/// and reduced by (feasible, lowest index) then (best slack, lowest index),
/// so the outcome does not depend on the number of threads.
pub fn horoball_witness_search(
    w: &PMClass,
    hw: &PMClass,
    epsilon: f64,
    budget: &WitnessBudget,
) -> Result<WitnessOutcome> {
    validate_center(w)?;
    validate_center(hw)?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    if budget.restarts == 0 {
        return Err(Error::InvalidParameter(
            "budget needs at least one restart".into(),
        ));
    }
    let labels: Vec<String> = w
        .labels()
        .chain(hw.labels())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let coeffs = |c: &PMClass| {
        (
            c.e0().to_f64().unwrap_or(f64::NAN),
            labels
                .iter()
                .map(|l| c.multiplicity(l).to_f64().unwrap_or(f64::NAN))
                .collect::<Vec<f64>>(),
        )
    };
    let prob = Problem {
        w: coeffs(w),
        h: coeffs(hw),
        eps: epsilon,
    };
    let k = labels.len();
    // (w + hw)/√(2 w·hw) is the point of the geodesic between the two
    // boundary points that balances both products
    let c = intersection(w, hw).to_f64().unwrap_or(0.0);
    let geodesic_mid = (c > 0.0).then(|| {
        let t = 1.0 / (2.0 * c).sqrt();
        Point {
            a0: t * (prob.w.0 + prob.h.0),
            x: prob
                .w
                .1
                .iter()
                .zip(&prob.h.1)
                .map(|(a, b)| t * (a + b))
                .collect(),
        }
    });
    let chunks = budget.restarts.div_ceil(CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(chunk_seed(budget.seed, c));
            let lo = c * CHUNK;
            let hi = ((c + 1) * CHUNK).min(budget.restarts);
            let mut best: Option<RestartResult> = None;
            for index in lo..hi {
                let start = if index == 0 {
                    Point {
                        a0: 1.0,
                        x: vec![0.0; k],
                    }
                } else if index == 1 && geodesic_mid.is_some() {
                    geodesic_mid.clone().expect("checked")
                } else {
                    let t: f64 = rng.gen_range(0.0..4.0);
                    let mut dir: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if norm > 0.0 {
                        dir.iter_mut().for_each(|v| *v *= t.sinh() / norm);
                    }
                    Point {
                        a0: t.cosh(),
                        x: dir,
                    }
                };
                let (point, value) = prob.descend(start, budget.max_iters);
                let r = RestartResult {
                    index,
                    feasible: prob.feasible(&point),
                    value,
                    point,
                };
                best = Some(match best {
                    None => r,
                    Some(b) => better(b, r),
                });
            }
            best.expect("nonempty chunk")
        })
        .reduce_with(better)
        .expect("at least one chunk");
    if !best.feasible {
        return Ok(WitnessOutcome::NotFound {
            margin: -best.value,
            restarts: budget.restarts,
        });
    }
    let p = best.point;
    let sq: f64 = p.x.iter().map(|v| v * v).sum();
    let free = (p.a0 * p.a0 - sq - 1.0).max(0.0).sqrt();
    let mut multiplicities: Vec<(String, f64)> =
        labels.into_iter().zip(p.x.iter().copied()).collect();
    multiplicities.push((FREE_LABEL.to_string(), free));
    let square = p.a0 * p.a0 - sq - free * free;
    Ok(WitnessOutcome::Found {
        e0: p.a0,
        multiplicities,
        hyperboloid_residual: (square - 1.0).abs(),
        products: (prob.dot(&prob.w, &p), prob.dot(&prob.h, &p)),
        restart: best.index,
    })
}

/// Random integral isotropic class `m e₀ − Σ r_i e(q_i)` with
/// `1 ≤ m ≤ m_max`, `r_i ≥ 1`, different from every multiple of `w_J`.
pub fn sample_isotropic<R: Rng>(rng: &mut R, m_max: u32) -> PMClass {
    loop {
        let m = rng.gen_range(1..=u64::from(m_max.max(1)));
        let mut rem = m * m;
        let mut rs = Vec::new();
        while rem > 0 {
            let s = rem.isqrt();
            let r = if rem < 4 {
                1
            } else {
                rng.gen_range((3 * s).div_ceil(4)..=s)
            };
            rs.push(r);
            rem -= r * r;
        }
        if rs[0] == m {
            continue;
        }
        return PMClass::new(
            rat(m as i64),
            rs.iter()
                .enumerate()
                .map(|(i, &r)| (format!("q{}", i + 1), rat(r as i64))),
        );
    }
}
