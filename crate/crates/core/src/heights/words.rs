//! Height growth along words in a finite generating set.

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{map_height, rational_ln_abs, Place};
use crate::error::{Error, Result};
use crate::linalg::{rat, ratio};
use crate::maps::{diagonal, jonquieres, sigma, BirMap};
use crate::polynomials::Rational;

/// A symmetric generating set: `inverse[i]` is the index of the inverse of
/// generator `i`.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub name: String,
    pub maps: Vec<BirMap>,
    pub inverse: Vec<usize>,
}

impl GeneratorSet {
    /// Checks the inverse pairing exactly by composition.
    pub fn new(name: impl Into<String>, maps: Vec<BirMap>, inverse: Vec<usize>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        if inverse.len() != maps.len() || inverse.iter().any(|&j| j >= maps.len()) {
            return Err(Error::InvalidParameter(
                "inverse pairing has the wrong shape".into(),
            ));
        }
        let dim = maps[0].dim();
        if let Some(f) = maps.iter().find(|f| f.dim() != dim) {
            return Err(Error::DimensionMismatch(dim, f.dim()));
        }
        for (i, &j) in inverse.iter().enumerate() {
            if inverse[j] != i || !maps[i].compose(&maps[j])?.is_identity() {
                return Err(Error::VerificationFailed(format!(
                    "generator {j} is not the inverse of generator {i}"
                )));
            }
        }
        Ok(GeneratorSet {
            name: name.into(),
            maps,
            inverse,
        })
    }
}

/// Places where some generator coefficient has absolute value above one,
/// with the maximum `M(v)`. Generators are primitive integral, so only the
/// archimedean place can occur.
pub fn active_places(s: &[BirMap]) -> Vec<(Place, Rational)> {
    let max = s
        .iter()
        .flat_map(|f| f.coefficients())
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rational::one);
    if max > Rational::one() {
        vec![(Place::Infinite, max)]
    } else {
        vec![]
    }
}

/// `((m+1) log 2 + Σ_active log M(v) + log(m d^m)) · d^{2ℓ}` with
/// `d = max(2, max degree)`.
pub fn word_height_bound(s: &[BirMap], ell: u32) -> Result<f64> {
    let first = s.first().ok_or(Error::EmptyGeneratorSet)?;
    let m = first.dim() as f64;
    let d = s.iter().map(|f| f.degree()).max().unwrap_or(1).max(2) as f64;
    let active: f64 = active_places(s)
        .iter()
        .map(|(_, mv)| rational_ln_abs(mv))
        .sum();
    let constant = (m + 1.0) * std::f64::consts::LN_2 + active + (m * d.powf(m)).ln();
    Ok(constant * d.powi(2 * ell as i32))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WordHeightReport {
    pub generator_set: String,
    pub seed: u64,
    pub trials: usize,
    pub max_len: usize,
    pub checked: usize,
    pub violations: usize,
    pub degenerate_skipped: usize,
    /// Largest `h(w) / bound(|w|)` observed.
    pub worst_ratio: f64,
}

enum Outcome {
    Checked { ratio: f64, ok: bool },
    Degenerate,
}

fn trial_seed(seed: u64, i: usize) -> u64 {
    seed ^ (i as u64)
        .wrapping_add(1)
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn random_reduced_word(set: &GeneratorSet, rng: &mut ChaCha8Rng, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len);
    let k = set.maps.len();
    let mut w: Vec<usize> = vec![rng.gen_range(0..k)];
    while w.len() < len {
        let forbidden = set.inverse[*w.last().expect("nonempty")];
        let choices: Vec<usize> = (0..k).filter(|&j| j != forbidden).collect();
        if choices.is_empty() {
            break;
        }
        w.push(choices[rng.gen_range(0..choices.len())]);
    }
    w
}

/// Samples reduced words, composes them and compares `h(w)` with
/// [`word_height_bound`]. Each trial draws from its own stream derived from
/// `(seed, trial)`, so the report does not depend on scheduling.
pub fn verify_word_height(
    set: &GeneratorSet,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> Result<WordHeightReport> {
    if max_len == 0 {
        return Err(Error::InvalidParameter("max_len must be positive".into()));
    }
    let outcomes: Vec<Result<Outcome>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, i));
            let w = random_reduced_word(set, &mut rng, max_len);
            let mut acc = set.maps[w[0]].clone();
            for &g in &w[1..] {
                match acc.compose(&set.maps[g]) {
                    Ok(f) => acc = f,
                    Err(Error::DegenerateMap) => return Ok(Outcome::Degenerate),
                    Err(e) => return Err(e),
                }
            }
            let bound = word_height_bound(&set.maps, w.len() as u32)?;
            let h = map_height(&acc).h;
            Ok(Outcome::Checked {
                ratio: h / bound,
                ok: h <= bound,
            })
        })
        .collect();
    let mut report = WordHeightReport {
        generator_set: set.name.clone(),
        seed,
        trials,
        max_len,
        checked: 0,
        violations: 0,
        degenerate_skipped: 0,
        worst_ratio: 0.0,
    };
    for o in outcomes {
        match o? {
            Outcome::Checked { ratio, ok } => {
                report.checked += 1;
                report.violations += usize::from(!ok);
                report.worst_ratio = report.worst_ratio.max(ratio);
            }
            Outcome::Degenerate => report.degenerate_skipped += 1,
        }
    }
    Ok(report)
}

/// The three reference generating sets: `{σ}`, `{σ, diag(2,1,1)^{±1}}` and
/// `{J, J^{-1}, swap}` with `J = (x, xy)`.
pub fn fixture_generator_sets() -> Vec<GeneratorSet> {
    let s = sigma(2).expect("sigma");
    let d = diagonal(&[rat(2), rat(1), rat(1)]).expect("diag");
    let di = diagonal(&[ratio(1, 2), rat(1), rat(1)]).expect("diag");
    let j = jonquieres(&[rat(0), rat(1)]).expect("jonquieres");
    let ji = BirMap::parse("[x^2 : y*z : x*z]").expect("inverse");
    let swap = BirMap::parse("[y : x : z]").expect("swap");
    vec![
        GeneratorSet::new("sigma", vec![s.clone()], vec![0]).expect("valid"),
        GeneratorSet::new("sigma+diag", vec![s, d, di], vec![0, 2, 1]).expect("valid"),
        GeneratorSet::new("jonquieres+swap", vec![j, ji, swap], vec![1, 0, 2]).expect("valid"),
    ]
}
