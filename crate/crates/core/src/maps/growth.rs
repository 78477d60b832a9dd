//! Degree sequences of iterates and their growth type.

use serde::{Deserialize, Serialize};

use super::BirMap;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterCaps {
    /// Stop before recording an iterate whose degree exceeds this.
    pub degree_cap: u64,
    /// Stop after an iterate with more terms than this.
    pub term_cap: usize,
}

impl Default for IterCaps {
    fn default() -> Self {
        IterCaps {
            degree_cap: 1 << 16,
            term_cap: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence {
    #[serde(rename = "map")]
    pub source: String,
    pub degrees: Vec<u64>,
    pub truncated: bool,
    #[serde(skip)]
    pub dim: usize,
}

impl DegreeSequence {
    /// A sequence not coming from [`iterate_degrees`]; `dim` is the dimension
    /// of the ambient projective space.
    pub fn from_degrees(source: impl Into<String>, dim: usize, degrees: Vec<u64>) -> Self {
        DegreeSequence {
            source: source.into(),
            degrees,
            truncated: false,
            dim,
        }
    }
}

/// Degrees of `f, f², …, f^N`, computed as `f^{n+1} = f^n ∘ f`.
pub fn iterate_degrees(f: &BirMap, n: usize, caps: IterCaps) -> Result<DegreeSequence> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let mut degrees = Vec::with_capacity(n);
    let mut truncated = false;
    let mut cur = f.clone();
    for k in 1..=n {
        if k > 1 {
            cur = cur.compose(f)?;
        }
        let d = u64::from(cur.degree());
        if d > caps.degree_cap {
            truncated = true;
            break;
        }
        degrees.push(d);
        if k < n && cur.num_terms() > caps.term_cap {
            truncated = true;
            break;
        }
    }
    Ok(DegreeSequence {
        source: f.to_string(),
        degrees,
        truncated,
        dim: f.dim(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynamicalDegree {
    /// `d_N^{1/N}`.
    pub root: f64,
    /// `d_N / d_{N-1}`.
    pub last_ratio: f64,
    /// Geometric mean of the two.
    pub estimate: f64,
    /// Half the gap between the two.
    pub spread: f64,
}

pub fn dynamical_degree_estimate(seq: &DegreeSequence) -> Result<DynamicalDegree> {
    let d = &seq.degrees;
    if d.len() < 4 {
        return Err(Error::SequenceTooShort {
            needed: 4,
            got: d.len(),
        });
    }
    let n = d.len();
    let last = d[n - 1] as f64;
    let root = last.powf(1.0 / n as f64);
    let last_ratio = last / d[n - 2] as f64;
    Ok(DynamicalDegree {
        root,
        last_ratio,
        estimate: (root * last_ratio).sqrt(),
        spread: (root - last_ratio).abs() / 2.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrowthClass {
    Bounded,
    Linear,
    Quadratic,
    Exponential,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistortionConsequence {
    Undistorted,
    AtMostExponential,
    NoVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthVerdict {
    pub class: GrowthClass,
    /// Eventual first difference (linear growth).
    pub slope: Option<f64>,
    /// Half the eventual second difference (quadratic growth).
    pub quadratic_coefficient: Option<f64>,
    /// Last ratio `d_N / d_{N-1}` (exponential growth).
    pub ratio: Option<f64>,
    pub distortion_consequence: DistortionConsequence,
}

fn diffs(v: &[i128]) -> Vec<i128> {
    v.windows(2).map(|w| w[1] - w[0]).collect()
}

const MIN_RATIO: f64 = 1.05;

/// Classifies by exact integer differences on the second half of the
/// sequence; floats only enter the exponential ratio test and the reported
/// parameters.
pub fn classify_growth(seq: &DegreeSequence) -> GrowthVerdict {
    let d: Vec<i128> = seq.degrees.iter().map(|&x| x as i128).collect();
    let mut v = GrowthVerdict {
        class: GrowthClass::Inconclusive,
        slope: None,
        quadratic_coefficient: None,
        ratio: None,
        distortion_consequence: DistortionConsequence::NoVerdict,
    };
    if d.len() < 8 {
        return v;
    }
    let half = d.len() / 2;
    let max_first = d[..half].iter().max().copied().unwrap_or(0);
    let d1 = diffs(&d);
    let d2 = diffs(&d1);
    let d3 = diffs(&d2);
    let tail = |x: &[i128]| x[x.len().saturating_sub(half - 1)..].to_vec();
    let n = d.len();
    if d[half..].iter().all(|&x| x <= max_first) {
        v.class = GrowthClass::Bounded;
    } else if tail(&d2).iter().all(|&x| x == 0) {
        v.class = GrowthClass::Linear;
        v.slope = Some(d1[d1.len() - 1] as f64);
    } else if tail(&d3).iter().all(|&x| x == 0) && d2[d2.len() - 1] > 0 {
        v.class = GrowthClass::Quadratic;
        v.quadratic_coefficient = Some(d2[d2.len() - 1] as f64 / 2.0);
    } else {
        let ratios_ok = |x: &[i128]| {
            x.windows(2)
                .all(|w| w[0] > 0 && (w[1] as f64) / (w[0] as f64) >= MIN_RATIO)
        };
        if ratios_ok(&d[half..]) && ratios_ok(&tail(&d1)) {
            v.class = GrowthClass::Exponential;
            v.ratio = Some(d[n - 1] as f64 / d[n - 2] as f64);
        }
    }
    v.distortion_consequence = match v.class {
        GrowthClass::Exponential => DistortionConsequence::Undistorted,
        GrowthClass::Linear | GrowthClass::Quadratic if seq.dim == 2 => {
            DistortionConsequence::Undistorted
        }
        GrowthClass::Linear | GrowthClass::Quadratic => DistortionConsequence::AtMostExponential,
        GrowthClass::Bounded | GrowthClass::Inconclusive => DistortionConsequence::NoVerdict,
    };
    v
}
