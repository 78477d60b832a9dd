//! Word-metric balls, distortion functions and explicit witness words.
//!
//! For a finitely generated group with symmetric generating set `S` and an
//! element `c`, `δ(n) = sup { m : c^m ∈ S^n }`, where `S^n` is the ball of
//! radius `n` in the word metric.

mod elements;
mod groups;
mod witnesses;

pub use elements::{Affine, GroupElement, IntMatrix};
pub use groups::{
    baumslag_solitar, cyclic, free_abelian, free_group2, involution, nilpotent_corner,
    nilpotent_example,
};
pub use witnesses::{
    bs_witnesses, homeo_eval, homeo_growth_check, jordan3_template, monomial_translation_word,
    nilpotent_commutator_witness, sl2_doubling_witness, BsWitnesses, HomeoGrowthReport,
    HomeoLetter, HomeoWord, Witness,
};

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// A generator together with its inverse.
#[derive(Clone, Debug)]
pub struct Letter<E> {
    pub name: String,
    pub elem: E,
    pub inv: E,
}

/// Generators with names and inverse pairing over an exact element domain.
/// The generating set used for balls is `{elem, inv}` over all letters.
#[derive(Clone, Debug)]
pub struct GroupSpec<E> {
    pub name: String,
    pub letters: Vec<Letter<E>>,
    pub identity: E,
}

impl<E: GroupElement> GroupSpec<E> {
    /// Checks `elem · inv = identity` for every letter.
    pub fn new(name: impl Into<String>, identity: E, letters: Vec<(String, E, E)>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        let mut out = Vec::with_capacity(letters.len());
        for (name, elem, inv) in letters {
            if elem.mul(&inv)? != identity || inv.mul(&elem)? != identity {
                return Err(Error::VerificationFailed(format!(
                    "inverse of generator {name} is wrong"
                )));
            }
            out.push(Letter { name, elem, inv });
        }
        Ok(GroupSpec {
            name: name.into(),
            letters: out,
            identity,
        })
    }

    /// The symmetric generating set, letters first then inverses.
    pub fn generators(&self) -> Vec<E> {
        self.letters
            .iter()
            .map(|l| l.elem.clone())
            .chain(self.letters.iter().map(|l| l.inv.clone()))
            .collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.letters.iter().map(|l| l.name.clone()).collect()
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l.name == name)
    }

    /// `g^e` for a letter, `e` of either sign.
    pub fn letter_power(&self, letter: usize, e: i64) -> Result<E> {
        let l = &self.letters[letter];
        let base = if e < 0 { &l.inv } else { &l.elem };
        power(&self.identity, base, e.unsigned_abs())
    }

    pub fn evaluate(&self, w: &Word) -> Result<E> {
        let mut acc = self.identity.clone();
        for &(g, e) in &w.blocks {
            if g >= self.letters.len() {
                return Err(Error::InvalidParameter(format!(
                    "letter index {g} out of range"
                )));
            }
            acc = acc.mul(&self.letter_power(g, e)?)?;
        }
        Ok(acc)
    }

    /// The group with generating set `S^k \ {1}`, so that its balls of
    /// radius `n` are the balls of radius `kn` here.
    pub fn power_generators(&self, k: usize, caps: &BallCaps) -> Result<GroupSpec<E>> {
        let ball = Ball::build(self, k, caps)?;
        if ball.truncated {
            return Err(Error::CapExceeded(format!("ball of radius {k}")));
        }
        let elems: Vec<E> = ball
            .elements()
            .into_iter()
            .filter(|e| **e != self.identity)
            .cloned()
            .collect();
        let mut letters = Vec::new();
        for (i, a) in elems.iter().enumerate() {
            let inv = elems
                .iter()
                .find(|b| a.mul(b).map(|p| p == self.identity).unwrap_or(false))
                .ok_or_else(|| Error::VerificationFailed("ball is not symmetric".into()))?;
            letters.push((format!("s{i}"), a.clone(), inv.clone()));
        }
        GroupSpec::new(format!("{}^{k}", self.name), self.identity.clone(), letters)
    }
}

fn power<E: GroupElement>(identity: &E, base: &E, mut e: u64) -> Result<E> {
    let mut acc = identity.clone();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b)?;
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b)?;
        }
    }
    Ok(acc)
}

/// A word as run-length blocks `(letter, exponent)` with nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word {
    pub blocks: Vec<(usize, i64)>,
}

impl Word {
    /// Merges adjacent blocks of the same letter and drops zero exponents.
    pub fn new(blocks: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Word::default();
        for (g, e) in blocks {
            w.push(g, e);
        }
        w
    }

    pub fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.blocks.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.blocks.pop();
                }
                return;
            }
        }
        self.blocks.push((g, e));
    }

    pub fn inverse(&self) -> Word {
        Word {
            blocks: self.blocks.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.blocks {
            w.push(g, e);
        }
        w
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Length in letters, `Σ |e|`.
    pub fn letters(&self) -> u64 {
        self.blocks.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// E.g. `A^10 U A^-10`.
    pub fn render(&self, names: &[String]) -> String {
        if self.blocks.is_empty() {
            return "1".into();
        }
        self.blocks
            .iter()
            .map(|&(g, e)| {
                let n = names.get(g).map(String::as_str).unwrap_or("?");
                if e == 1 {
                    n.to_string()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallCaps {
    pub max_elements: usize,
    pub max_bits: u64,
    pub max_degree: u32,
}

impl Default for BallCaps {
    fn default() -> Self {
        BallCaps {
            max_elements: 10_000_000,
            max_bits: 4096,
            max_degree: 64,
        }
    }
}

/// The ball `S^n` with minimal word lengths.
#[derive(Clone, Debug)]
pub struct Ball<E> {
    /// `spheres[k]` holds the elements of length exactly `k`.
    pub spheres: Vec<Vec<E>>,
    lengths: HashMap<E, u32>,
    /// Some element was dropped by a cap; spheres from `truncated_at` on
    /// may be incomplete.
    pub truncated: bool,
    pub truncated_at: Option<usize>,
}

impl<E: GroupElement> Ball<E> {
    /// Breadth-first search. Each sphere is expanded in parallel and merged
    /// sequentially in frontier order, so the content and the order of every
    /// sphere match a sequential run.
    pub fn build(g: &GroupSpec<E>, n: usize, caps: &BallCaps) -> Result<Self> {
        let gens = g.generators();
        let mut lengths = HashMap::new();
        lengths.insert(g.identity.clone(), 0u32);
        let mut spheres = vec![vec![g.identity.clone()]];
        let mut truncated_at = None;
        for r in 1..=n {
            let frontier = &spheres[r - 1];
            let products: Vec<Vec<Option<E>>> = frontier
                .par_iter()
                .map(|x| {
                    gens.iter()
                        .map(|s| match x.mul(s) {
                            Ok(y) if y.bits() <= caps.max_bits && y.degree() <= caps.max_degree => {
                                Ok(Some(y))
                            }
                            Ok(_) | Err(Error::CapExceeded(_)) => Ok(None),
                            Err(e) => Err(e),
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let mut next = Vec::new();
            'outer: for y in products.into_iter().flatten() {
                let Some(y) = y else {
                    truncated_at.get_or_insert(r);
                    continue;
                };
                if lengths.contains_key(&y) {
                    continue;
                }
                if lengths.len() >= caps.max_elements {
                    truncated_at.get_or_insert(r);
                    break 'outer;
                }
                lengths.insert(y.clone(), r as u32);
                next.push(y);
            }
            spheres.push(next);
        }
        Ok(Ball {
            spheres,
            lengths,
            truncated: truncated_at.is_some(),
            truncated_at,
        })
    }

    pub fn radius(&self) -> usize {
        self.spheres.len() - 1
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn length_of(&self, e: &E) -> Option<u32> {
        self.lengths.get(e).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.lengths.contains_key(e)
    }

    /// `|S^r|` for `r = 0..=radius`.
    pub fn sizes(&self) -> Vec<usize> {
        self.spheres
            .iter()
            .scan(0, |acc, s| {
                *acc += s.len();
                Some(*acc)
            })
            .collect()
    }

    pub fn elements(&self) -> Vec<&E> {
        self.spheres.iter().flatten().collect()
    }

    pub fn max_bits(&self) -> u64 {
        self.lengths
            .keys()
            .map(GroupElement::bits)
            .max()
            .unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.lengths
            .keys()
            .map(GroupElement::degree)
            .max()
            .unwrap_or(0)
    }
}

pub fn ball<E: GroupElement>(g: &GroupSpec<E>, n: usize, caps: &BallCaps) -> Result<Ball<E>> {
    Ball::build(g, n, caps)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    /// `None` when `c` has finite order (then `δ` is unbounded).
    pub delta: Option<u64>,
    pub ball_size: usize,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistortionProfile {
    pub group: String,
    pub element: String,
    pub rows: Vec<ProfileRow>,
    pub finite_order: Option<u64>,
    /// `c` was found in the ball of the largest radius.
    pub element_in_ball: bool,
    /// `min_n n / δ(n)`, an upper bound for the stable length
    /// `lim |c^m| / m`.
    pub stable_length_bound: Option<f64>,
    /// Largest power `m` that was tested.
    pub powers_scanned: u64,
    pub truncated: bool,
}

impl DistortionProfile {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,delta,ball_size,truncated\n");
        for r in &self.rows {
            let d = r
                .delta
                .map(|d| d.to_string())
                .unwrap_or_else(|| "inf".into());
            s.push_str(&format!("{},{},{},{}\n", r.n, d, r.ball_size, r.truncated));
        }
        s
    }

    pub fn deltas(&self) -> Vec<Option<u64>> {
        self.rows.iter().map(|r| r.delta).collect()
    }
}

/// Powers are tested while their size stays within the largest size found
/// in the ball; for the domains here the size of `c^m` is nondecreasing in
/// `m` for elements of infinite order.
const MAX_POWER_SCAN: u64 = 1 << 24;

pub fn distortion_profile<E: GroupElement>(
    g: &GroupSpec<E>,
    c: &E,
    n_max: usize,
    caps: &BallCaps,
) -> Result<DistortionProfile> {
    let ball = Ball::build(g, n_max, caps)?;
    profile_from_ball(g, &ball, c)
}

pub fn profile_from_ball<E: GroupElement>(
    g: &GroupSpec<E>,
    ball: &Ball<E>,
    c: &E,
) -> Result<DistortionProfile> {
    let sizes = ball.sizes();
    let (max_bits, max_degree) = (ball.max_bits(), ball.max_degree());
    let mut best_len: Vec<(u64, u32)> = Vec::new();
    let mut finite_order = None;
    let mut p = c.clone();
    let mut m = 1u64;
    loop {
        if p == g.identity {
            finite_order = Some(m);
            break;
        }
        if p.bits() > max_bits || p.degree() > max_degree || m > MAX_POWER_SCAN {
            break;
        }
        if let Some(l) = ball.length_of(&p) {
            best_len.push((m, l));
        }
        p = p.mul(c)?;
        m += 1;
    }
    let rows: Vec<ProfileRow> = (0..=ball.radius())
        .map(|n| ProfileRow {
            n,
            delta: if finite_order.is_some() {
                None
            } else {
                Some(
                    best_len
                        .iter()
                        .filter(|(_, l)| *l as usize <= n)
                        .map(|(m, _)| *m)
                        .max()
                        .unwrap_or(0),
                )
            },
            ball_size: sizes[n],
            truncated: ball.truncated_at.is_some_and(|t| n >= t),
        })
        .collect();
    let stable_length_bound = rows
        .iter()
        .filter(|r| r.n > 0)
        .filter_map(|r| r.delta.filter(|&d| d > 0).map(|d| r.n as f64 / d as f64))
        .min_by(f64::total_cmp);
    Ok(DistortionProfile {
        group: g.name.clone(),
        element: c.canonical(),
        rows,
        finite_order,
        element_in_ball: ball.contains(c),
        stable_length_bound,
        powers_scanned: m,
        truncated: ball.truncated,
    })
}
