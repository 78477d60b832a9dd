//! Explicit short words for large powers, with exact verification.

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{Affine, GroupElement, GroupSpec, Word};
use crate::error::{Error, Result};
use crate::heights::rational_ln_abs;
use crate::linalg::{rat, ratio, RatMatrix};
use crate::polynomials::Rational;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub word: String,
    pub letters: u64,
    pub blocks: usize,
    pub target: String,
    pub verified: bool,
    #[serde(skip)]
    pub raw: Word,
}

fn finish<E: GroupElement>(
    kind: &str,
    g: &GroupSpec<E>,
    word: Word,
    target: &E,
) -> Result<Witness> {
    let value = g.evaluate(&word)?;
    if value != *target {
        return Err(Error::VerificationFailed(format!(
            "{kind}: word {} evaluates to {} instead of {}",
            word.render(&g.names()),
            value.canonical(),
            target.canonical()
        )));
    }
    Ok(Witness {
        kind: kind.into(),
        word: word.render(&g.names()),
        letters: word.letters(),
        blocks: word.num_blocks(),
        target: target.canonical(),
        verified: true,
        raw: word,
    })
}

fn big(x: BigInt) -> Rational {
    Rational::from_integer(x)
}

fn letter(name: &str, m: RatMatrix) -> Result<(String, RatMatrix, RatMatrix)> {
    let inv = m.inverse()?;
    Ok((name.to_string(), m, inv))
}

/// `A^n U A^{-n} = U^{4^n}` with `A = diag(2, 1/2)`, `U = [[1,1],[0,1]]`.
pub fn sl2_doubling_witness(n: u32) -> Result<Witness> {
    let a = RatMatrix::diagonal(&[rat(2), ratio(1, 2)]);
    let u = RatMatrix::from_i64(&[&[1, 1], &[0, 1]])?;
    let g = GroupSpec::new(
        "SL2",
        RatMatrix::identity(2),
        vec![letter("A", a)?, letter("U", u)?],
    )?;
    let n = i64::from(n);
    let word = Word::new([(0, n), (1, 1), (0, -n)]);
    let mut target = RatMatrix::identity(2);
    target.set(0, 1, big(BigInt::from(4).pow(n as u32)));
    finish("sl2-doubling", &g, word, &target)
}

fn e(i: usize, j: usize, c: Rational) -> RatMatrix {
    let mut m = RatMatrix::identity(3);
    m.set(i, j, c);
    m
}

/// A word for `U^{K^n}`, `U` the unipotent 3×3 Jordan block, in which `A`
/// and `C` occur only as blocks `A^{±n}`, `C^{±n}`:
///
/// `U^{K^n} = A^n B⁻¹ C^n D⁻¹ C^n E C^{-n} C^{-n} A^{-n}` with
/// `A = diag(1,K,1)`, `B = I − E₂₃`, `C = diag(K,1,1)`, `D = I + ½E₁₃`,
/// `E = I + E₁₂ + ½E₁₃`.
pub fn jordan3_template(k: i64, n: u32) -> Result<Witness> {
    if k < 2 || n == 0 {
        return Err(Error::InvalidParameter("need K >= 2 and n >= 1".into()));
    }
    let a = RatMatrix::diagonal(&[rat(1), rat(k), rat(1)]);
    let b = e(1, 2, rat(-1));
    let c = RatMatrix::diagonal(&[rat(k), rat(1), rat(1)]);
    let d = e(0, 2, ratio(1, 2));
    let mut em = e(0, 1, rat(1));
    em.set(0, 2, ratio(1, 2));
    let u = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]])?;
    let g = GroupSpec::new(
        "GL3",
        RatMatrix::identity(3),
        vec![
            letter("A", a)?,
            letter("B", b)?,
            letter("C", c)?,
            letter("D", d)?,
            letter("E", em)?,
            letter("U", u)?,
        ],
    )?;
    let n = i64::from(n);
    let word = Word {
        blocks: vec![
            (0, n),
            (1, -1),
            (2, n),
            (3, -1),
            (2, n),
            (4, 1),
            (2, -n),
            (2, -n),
            (0, -n),
        ],
    };
    let big_n = BigInt::from(k).pow(n as u32);
    let mut target = RatMatrix::identity(3);
    target.set(0, 1, big(big_n.clone()));
    target.set(1, 2, big(big_n.clone()));
    target.set(0, 2, big(&big_n * (&big_n - 1) / 2));
    finish("jordan3", &g, word, &target)
}

struct Projectors {
    unstable: DMatrix<f64>,
    stable: DMatrix<f64>,
}

/// Spectral projectors onto the expanding and contracting subspaces of a
/// real diagonalizable matrix with no eigenvalue on the unit circle.
fn projectors(m: &RatMatrix) -> Result<Projectors> {
    let n = m.n();
    let rows = m.to_f64_rows();
    let mf = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let not_ok = |why: &str| Error::InvalidParameter(format!("matrix {why}"));
    let eig = mf
        .clone()
        .eigenvalues()
        .ok_or_else(|| not_ok("has non-real eigenvalues"))?;
    let mut distinct: Vec<f64> = Vec::new();
    for &l in eig.iter() {
        if (l.abs() - 1.0).abs() < 1e-9 {
            return Err(not_ok("has an eigenvalue on the unit circle"));
        }
        if !distinct
            .iter()
            .any(|&d| (d - l).abs() < 1e-9 * (1.0 + l.abs()))
        {
            distinct.push(l);
        }
    }
    let mut vecs: Vec<(f64, nalgebra::DVector<f64>)> = Vec::new();
    for &l in &distinct {
        let shifted = &mf - DMatrix::identity(n, n) * l;
        let svd = shifted.svd(false, true);
        let vt = svd.v_t.expect("requested");
        let scale = 1e-8 * (1.0 + mf.norm());
        for (i, s) in svd.singular_values.iter().enumerate() {
            if *s < scale {
                vecs.push((l, vt.row(i).transpose()));
            }
        }
    }
    if vecs.len() != n {
        return Err(not_ok("is not diagonalizable over the reals"));
    }
    let v = DMatrix::from_fn(n, n, |i, j| vecs[j].1[i]);
    let vi = v
        .clone()
        .try_inverse()
        .ok_or_else(|| not_ok("has a singular eigenbasis"))?;
    let mask = DMatrix::from_fn(n, n, |i, j| {
        if i == j && vecs[i].0.abs() > 1.0 {
            1.0
        } else {
            0.0
        }
    });
    let unstable = &v * mask * &vi;
    let stable = DMatrix::identity(n, n) - &unstable;
    Ok(Projectors { unstable, stable })
}

fn apply(p: &DMatrix<f64>, r: &[BigInt]) -> Vec<f64> {
    let x: Vec<f64> = r.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect();
    (0..p.nrows())
        .map(|i| (0..p.ncols()).map(|j| p[(i, j)] * x[j]).sum())
        .collect()
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn round_vec(x: &[f64]) -> Vec<BigInt> {
    x.iter().map(|v| BigInt::from(v.round() as i64)).collect()
}

fn int_mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Digits `d_k` with `r = Σ_k N^k d_k`, `N = step⁻¹`: repeatedly remove the
/// rounded `keep` component and apply `step`, which contracts what is left.
fn expand(
    mut r: Vec<BigInt>,
    step: &[Vec<BigInt>],
    keep: &DMatrix<f64>,
    shrink: &DMatrix<f64>,
    limit: usize,
) -> Result<Vec<Vec<BigInt>>> {
    let mut digits = Vec::new();
    loop {
        if norm(&apply(shrink, &r)) <= 1.0 {
            digits.push(r);
            return Ok(digits);
        }
        if digits.len() >= limit {
            return Err(Error::VerificationFailed(
                "digit expansion did not terminate".into(),
            ));
        }
        let d = round_vec(&apply(keep, &r));
        r = int_mat_vec(step, &sub(&r, &d));
        digits.push(d);
    }
}

/// A short word for the translation `(I, v)` in `GL_m(Z) ⋉ Z^m` over the
/// letters `M, e₁, …, e_m`.
///
/// `v` is split as `a + b` with `a` the lattice point nearest its unstable
/// projection. Then `a = Σ_{k≥0} M^k d_k` and `b = Σ_{k≥0} M^{-k} d'_k` with
/// bounded digits, and the word is `d₀ M d₁ M … d_K M^{-K}` followed by
/// `d'₀ M⁻¹ d'₁ … d'_L M^L`, translations written as `e₁^{c₁} … e_m^{c_m}`.
/// Its length is `O(log ‖v‖)`.
pub fn monomial_translation_word(m: &RatMatrix, target: &[i64]) -> Result<Witness> {
    let n = m.n();
    if target.len() != n {
        return Err(Error::DimensionMismatch(n, target.len()));
    }
    if target.iter().all(|&x| x == 0) {
        return Err(Error::InvalidParameter("target must be nonzero".into()));
    }
    let det = m.det();
    if !m.is_integral() || det.abs() != rat(1) {
        return Err(Error::NotUnimodular(m.to_string()));
    }
    let proj = projectors(m)?;
    let to_int = |a: &RatMatrix| -> Vec<Vec<BigInt>> {
        a.rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
            .collect()
    };
    let mi = m.inverse()?;
    let (m_int, mi_int) = (to_int(m), to_int(&mi));
    let v: Vec<BigInt> = target.iter().map(|&x| BigInt::from(x)).collect();
    let a = round_vec(&apply(&proj.unstable, &v));
    let b = sub(&v, &a);
    let limit = 64
        + 8 * target
            .iter()
            .map(|x| 64 - x.unsigned_abs().leading_zeros() as usize)
            .sum::<usize>();
    let up = expand(a, &mi_int, &proj.stable, &proj.unstable, limit)?;
    let down = expand(b, &m_int, &proj.unstable, &proj.stable, limit)?;

    let mut letters = vec![(
        "M".to_string(),
        Affine::linear(m.clone()),
        Affine::linear(mi),
    )];
    for j in 0..n {
        let mut t = vec![rat(0); n];
        t[j] = rat(1);
        let ti = t.iter().map(|x| -x).collect();
        letters.push((
            format!("e{}", j + 1),
            Affine::translation(t),
            Affine::translation(ti),
        ));
    }
    let g = GroupSpec::new("GL(m,Z) x Z^m", Affine::identity(n), letters)?;
    let mut word = Word::default();
    let push_digit = |w: &mut Word, d: &[BigInt]| {
        for (j, c) in d.iter().enumerate() {
            w.push(j + 1, c.to_i64().expect("bounded digit"));
        }
    };
    for (k, d) in up.iter().enumerate() {
        if k > 0 {
            word.push(0, 1);
        }
        push_digit(&mut word, d);
    }
    word.push(0, -(up.len() as i64 - 1));
    for (k, d) in down.iter().enumerate() {
        if k > 0 {
            word.push(0, -1);
        }
        push_digit(&mut word, d);
    }
    word.push(0, down.len() as i64 - 1);
    let target = Affine::translation(target.iter().map(|&x| rat(x)).collect());
    finish("monomial-translation", &g, word, &target)
}

/// `[[u₁^m, u₂^m], …, u_{d+1}^m] = Z^{m^{d+1}}` for the corner `Z` of the
/// depth-`d` unitriangular group; the word has `2m(2^{d+1} − 1)` letters.
pub fn nilpotent_commutator_witness(d: usize, m: i64) -> Result<Witness> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let g = super::nilpotent_example(d)?;
    let mut w = Word::new([(0, m)]);
    for j in 1..=d {
        w = Word::commutator(&w, &Word::new([(j, m)]));
    }
    let power = u32::try_from(d + 1)
        .ok()
        .and_then(|e| m.checked_pow(e))
        .ok_or_else(|| Error::CapExceeded("m^(d+1) overflows".into()))?;
    let target = super::IntMatrix::elementary(d + 2, 0, d + 1, power);
    finish("nilpotent-commutator", &g, w, &target)
}

/// Letters of the piecewise-power model of the double Baumslag–Solitar
/// group: `T(s) = sign(s)|s|^k`, `X(s) = ℓs`, `Y(s) = s + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HomeoLetter {
    T,
    X,
    Y,
}

/// Blocks `(letter, exponent)`; the word `g₁ g₂ … g_r` acts as
/// `g₁ ∘ g₂ ∘ … ∘ g_r`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct HomeoWord {
    pub blocks: Vec<(HomeoLetter, i64)>,
}

impl HomeoWord {
    pub fn new(blocks: Vec<(HomeoLetter, i64)>) -> Self {
        HomeoWord { blocks }
    }

    /// Parses `"T^2 X Y^-1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for tok in s.split_whitespace() {
            let (l, e) = match tok.split_once('^') {
                Some((l, e)) => (
                    l,
                    e.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            let letter = match l {
                "T" | "t" => HomeoLetter::T,
                "X" | "x" => HomeoLetter::X,
                "Y" | "y" => HomeoLetter::Y,
                _ => return Err(Error::Parse(format!("unknown letter {l:?}"))),
            };
            blocks.push((letter, e));
        }
        Ok(HomeoWord { blocks })
    }

    pub fn letters(&self) -> u64 {
        self.blocks.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn render(&self) -> String {
        self.blocks
            .iter()
            .map(|(l, e)| {
                let n = format!("{l:?}");
                if *e == 1 {
                    n
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn bits(r: &Rational) -> u64 {
    r.numer().bits().max(r.denom().bits())
}

fn exact_root(x: &BigUint, k: u32) -> Option<BigUint> {
    let r = x.nth_root(k);
    (r.pow(k) == *x).then_some(r)
}

fn signed_power(s: &Rational, k: u32) -> Rational {
    let p = Rational::new(s.numer().abs().pow(k), s.denom().pow(k));
    if s.is_negative() {
        -p
    } else {
        p
    }
}

fn signed_root(s: &Rational, k: u32) -> Option<Rational> {
    let n = exact_root(s.numer().magnitude(), k)?;
    let d = exact_root(s.denom().magnitude(), k)?;
    let r = Rational::new(BigInt::from(n), BigInt::from(d));
    Some(if s.is_negative() { -r } else { r })
}

/// Evaluates `w(s)` exactly, or `None` when some `T⁻¹` step needs an
/// irrational root or a value exceeds `max_bits`.
pub fn homeo_eval(k: u32, l: i64, w: &HomeoWord, s: &Rational, max_bits: u64) -> Option<Rational> {
    let lr = rat(l);
    let mut v = s.clone();
    for &(letter, e) in w.blocks.iter().rev() {
        for _ in 0..e.unsigned_abs() {
            v = match (letter, e > 0) {
                (HomeoLetter::T, true) => signed_power(&v, k),
                (HomeoLetter::T, false) => signed_root(&v, k)?,
                (HomeoLetter::X, true) => &v * &lr,
                (HomeoLetter::X, false) => &v / &lr,
                (HomeoLetter::Y, true) => &v + Rational::one(),
                (HomeoLetter::Y, false) => &v - Rational::one(),
            };
            if bits(&v) > max_bits {
                return None;
            }
        }
    }
    Some(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomeoGrowthReport {
    pub k: u32,
    pub l: i64,
    pub checked: usize,
    pub skipped: usize,
    pub violations: usize,
    /// Largest `log|w(0)| / (k^{|w|} log 2ℓ)`.
    pub max_ratio: f64,
}

const HOMEO_MAX_BITS: u64 = 1 << 22;

/// Checks `|w(0)| ≤ (2ℓ)^{k^{|w|}}` for each word.
pub fn homeo_growth_check(k: u32, l: i64, words: &[HomeoWord]) -> Result<HomeoGrowthReport> {
    if k < 2 || l < 2 {
        return Err(Error::InvalidParameter("need k, l >= 2".into()));
    }
    let mut report = HomeoGrowthReport {
        k,
        l,
        checked: 0,
        skipped: 0,
        violations: 0,
        max_ratio: 0.0,
    };
    let log_base = ((2 * l) as f64).ln();
    for w in words {
        let Some(v) = homeo_eval(k, l, w, &Rational::zero(), HOMEO_MAX_BITS) else {
            report.skipped += 1;
            continue;
        };
        report.checked += 1;
        if v.is_zero() {
            continue;
        }
        let lhs = rational_ln_abs(&v);
        let bound = f64::from(k).powf(w.letters() as f64) * log_base;
        let ratio = lhs / bound;
        // the float comparison is decisive except within rounding of the
        // bound, where the exact comparison takes over
        let ok = if (lhs - bound).abs() > 1e-9 * bound.max(1.0) {
            lhs < bound
        } else {
            let e = k
                .checked_pow(w.letters() as u32)
                .ok_or_else(|| Error::CapExceeded("exponent of the growth bound".into()))?;
            v.abs() <= rat(2 * l).pow(e as i32)
        };
        report.violations += usize::from(!ok);
        report.max_ratio = report.max_ratio.max(ratio);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BsWitnesses {
    /// `t^n x t^{-n} = x^{k^n}`, checked in the matrix model.
    pub x_word: Witness,
    /// `t^n x t^{-n} y t^n x^{-1} t^{-n}`, compared with `Y^{ℓ^{k^n}}` in the
    /// homeomorphism model at the sample points.
    pub y_word: String,
    pub y_letters: u64,
    pub y_samples: Vec<(String, String)>,
    pub y_skipped_samples: usize,
}

/// Sample points; a point is skipped when some `T⁻¹` step leaves Q.
const SAMPLES: [i64; 3] = [0, 1, -1];

pub fn bs_witnesses(k: i64, l: i64, n: u32) -> Result<BsWitnesses> {
    if k < 2 || l < 2 {
        return Err(Error::InvalidParameter("need k, l >= 2".into()));
    }
    let kk = u32::try_from(k).map_err(|_| Error::InvalidParameter("k too large".into()))?;
    let g = super::baumslag_solitar(k)?;
    let ni = i64::from(n);
    let x_word = Word::new([(0, ni), (1, 1), (0, -ni)]);
    let mut target = RatMatrix::identity(2);
    target.set(0, 1, big(BigInt::from(k).pow(n)));
    let x_word = finish("bs-x", &g, x_word, &target)?;

    let exponent = BigUint::from(kk as u64).pow(n);
    let est_bits = exponent.to_f64().unwrap_or(f64::INFINITY) * (l as f64).log2();
    if est_bits > HOMEO_MAX_BITS as f64 {
        return Err(Error::CapExceeded(format!(
            "l^(k^n) has about {est_bits:.0} bits"
        )));
    }
    let shift = BigInt::from(l).pow(exponent.to_u32().expect("bounded by the bit cap"));
    use HomeoLetter::{T, X, Y};
    let y = HomeoWord::new(
        [
            (T, ni),
            (X, 1),
            (T, -ni),
            (Y, 1),
            (T, ni),
            (X, -1),
            (T, -ni),
        ]
        .into_iter()
        .filter(|(_, e)| *e != 0)
        .collect(),
    );
    let mut samples = Vec::new();
    let mut skipped = 0;
    for s in SAMPLES {
        let s = rat(s);
        let Some(v) = homeo_eval(kk, l, &y, &s, HOMEO_MAX_BITS) else {
            skipped += 1;
            continue;
        };
        let expected = &s + big(shift.clone());
        if v != expected {
            return Err(Error::VerificationFailed(format!(
                "y-word at {s} gives {v}, expected {expected}"
            )));
        }
        samples.push((s.to_string(), v.to_string()));
    }
    if samples.is_empty() {
        return Err(Error::VerificationFailed("no exact sample point".into()));
    }
    Ok(BsWitnesses {
        x_word,
        y_word: y.render(),
        y_letters: y.letters(),
        y_samples: samples,
        y_skipped_samples: skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_examples() {
        let w = sl2_doubling_witness(0).unwrap();
        assert_eq!((w.word.as_str(), w.letters), ("U", 1));
        let w = sl2_doubling_witness(1).unwrap();
        assert_eq!(w.word, "A U A^-1");
        let w = sl2_doubling_witness(10).unwrap();
        assert_eq!(w.letters, 21);
        assert!(w.target.contains("1048576"));
    }

    #[test]
    fn jordan3_small_cases() {
        for n in 1..=4 {
            for k in 2..=3 {
                let w = jordan3_template(k, n).unwrap();
                assert_eq!(w.blocks, 9);
                assert_eq!(w.letters, 6 * u64::from(n) + 3);
            }
        }
        let w = jordan3_template(2, 1).unwrap();
        assert_eq!(w.word, "A B^-1 C D^-1 C E C^-1 C^-1 A^-1");
        assert!(jordan3_template(1, 3).is_err());
    }

    #[test]
    fn monomial_examples() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        let w = monomial_translation_word(&m, &[1, 0]).unwrap();
        assert_eq!((w.word.as_str(), w.letters), ("e1", 1));
        let w = monomial_translation_word(&m, &[0, -1]).unwrap();
        assert_eq!(w.word, "e2^-1");
        let w = monomial_translation_word(&m, &[1_000_000, 0]).unwrap();
        assert!(
            w.letters as f64 <= 6.0 * 1e6f64.ln() + 10.0,
            "{}",
            w.letters
        );
        let id = RatMatrix::identity(2);
        assert!(monomial_translation_word(&id, &[1, 1]).is_err());
        let rot = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]).unwrap();
        assert!(monomial_translation_word(&rot, &[1, 1]).is_err());
    }

    #[test]
    fn bs_examples() {
        let b = bs_witnesses(2, 2, 0).unwrap();
        assert_eq!(b.x_word.word, "x");
        let b = bs_witnesses(2, 3, 3).unwrap();
        assert_eq!(b.x_word.letters, 7);
        assert!(b.x_word.target.contains('8'));
        assert_eq!(b.y_letters, 15);
        let b = bs_witnesses(2, 2, 2).unwrap();
        assert_eq!(b.y_samples[0], ("0".to_string(), "16".to_string()));
    }

    #[test]
    fn commutator_witnesses() {
        let w = nilpotent_commutator_witness(1, 5).unwrap();
        assert_eq!((w.letters, w.word.as_str()), (20, "u1^5 u2^5 u1^-5 u2^-5"));
        let w = nilpotent_commutator_witness(2, 4).unwrap();
        assert_eq!(w.letters, 40);
        assert!(w.target.contains("64"));
    }

    #[test]
    fn homeo_examples() {
        let y5 = HomeoWord::parse("Y^5").unwrap();
        assert_eq!(homeo_eval(2, 3, &y5, &rat(0), 64), Some(rat(5)));
        let xy = HomeoWord::parse("X Y").unwrap();
        assert_eq!(homeo_eval(2, 3, &xy, &rat(0), 64), Some(rat(3)));
        let ty = HomeoWord::parse("T Y").unwrap();
        assert_eq!(homeo_eval(2, 3, &ty, &rat(0), 64), Some(rat(1)));
        let ti = HomeoWord::parse("T^-1").unwrap();
        assert_eq!(homeo_eval(2, 3, &ti, &rat(2), 64), None);
        assert_eq!(homeo_eval(2, 3, &ti, &ratio(-4, 9), 64), Some(ratio(-2, 3)));
        let r =
            homeo_growth_check(2, 3, &[y5, xy, ty, HomeoWord::parse("T^-1 Y^2").unwrap()]).unwrap();
        assert_eq!((r.checked, r.skipped, r.violations), (3, 1, 0));
    }
}
