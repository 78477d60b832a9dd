//! Substitution `f(g_0, ..., g_m)`: the composition kernel behind maps.
//!
//! Integral inputs take a `BigInt` path; everything else goes through
//! rationals. Terms of the outer polynomial are grouped by exponent prefix
//! so that each partial product of powers is computed once.

use std::collections::{BTreeMap, HashMap};
use std::ops::{AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{HomoPoly, Monomial, Rational};

type Terms<T> = Vec<(Vec<u32>, T)>;

trait Coeff:
    Clone + PartialEq + Zero + One + for<'a> AddAssign<&'a Self> + for<'a> Mul<&'a Self, Output = Self>
{
}
impl<T> Coeff for T where
    T: Clone + PartialEq + Zero + One + for<'a> AddAssign<&'a T> + for<'a> Mul<&'a T, Output = T>
{
}

fn mul_terms<T: Coeff>(a: &Terms<T>, b: &Terms<T>) -> Terms<T> {
    if b.len() == 1 && b[0].1.is_one() && a.len() != 1 {
        return mul_terms(b, a);
    }
    if a.len() == 1 && a[0].1.is_one() {
        let e0 = &a[0].0;
        return b
            .iter()
            .map(|(e, c)| (e.iter().zip(e0).map(|(x, y)| x + y).collect(), c.clone()))
            .collect();
    }
    let mut acc: HashMap<Vec<u32>, T> = HashMap::with_capacity(a.len() * b.len());
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let prod = ca.clone() * cb;
            match acc.get_mut(&e) {
                Some(v) => *v += &prod,
                None => {
                    acc.insert(e, prod);
                }
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn accumulate<T: Coeff>(acc: &mut HashMap<Vec<u32>, T>, p: &Terms<T>, c: &T) {
    for (e, v) in p {
        let prod = v.clone() * c;
        match acc.get_mut(e) {
            Some(x) => *x += &prod,
            None => {
                acc.insert(e.clone(), prod);
            }
        }
    }
}

struct Substituter<'a, T> {
    powers: Vec<Vec<Terms<T>>>,
    outer: &'a [(Vec<u32>, T)],
}

impl<'a, T: Coeff> Substituter<'a, T> {
    fn ensure_power(&mut self, var: usize, k: u32, inner: &[Terms<T>]) {
        while self.powers[var].len() <= k as usize {
            let next = mul_terms(self.powers[var].last().expect("seeded with 1"), &inner[var]);
            self.powers[var].push(next);
        }
    }

    /// Terms `outer[lo..hi]` share the exponent prefix up to `var`; `partial`
    /// is the product of the substituted powers for that prefix.
    fn recurse(
        &mut self,
        lo: usize,
        hi: usize,
        var: usize,
        partial: &Terms<T>,
        inner: &[Terms<T>],
        acc: &mut HashMap<Vec<u32>, T>,
    ) {
        let nvars = inner.len();
        let mut i = lo;
        while i < hi {
            let e = self.outer[i].0[var];
            let mut j = i;
            while j < hi && self.outer[j].0[var] == e {
                j += 1;
            }
            self.ensure_power(var, e, inner);
            let next = mul_terms(partial, &self.powers[var][e as usize]);
            if var + 1 == nvars {
                for t in &self.outer[i..j] {
                    accumulate(acc, &next, &t.1);
                }
            } else {
                self.recurse(i, j, var + 1, &next, inner, acc);
            }
            i = j;
        }
    }
}

fn substitute_terms<T: Coeff>(
    outer: &mut Terms<T>,
    inner: &[Terms<T>],
    nvars_out: usize,
) -> Terms<T> {
    outer.sort_by(|a, b| a.0.cmp(&b.0));
    let one: Terms<T> = vec![(vec![0; nvars_out], T::one())];
    let mut sub = Substituter {
        powers: inner.iter().map(|_| vec![one.clone()]).collect(),
        outer: outer.as_slice(),
    };
    let mut acc = HashMap::new();
    if !sub.outer.is_empty() {
        let n = sub.outer.len();
        sub.recurse(0, n, 0, &one, inner, &mut acc);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Returns `outer(inner_0, ..., inner_k)`. All `inner` polynomials must share
/// a variable count and a degree; `outer` must have `inner.len()` variables.
pub fn substitute(outer: &HomoPoly, inner: &[HomoPoly]) -> HomoPoly {
    assert_eq!(outer.nvars(), inner.len(), "one substitution per variable");
    let nvars_out = inner.first().map(|p| p.nvars()).unwrap_or(0);
    let d_in = inner.first().map(|p| p.degree()).unwrap_or(0);
    let degree = outer.degree() * d_in;
    let integral = outer.is_integral() && inner.iter().all(|p| p.is_integral());
    let terms: BTreeMap<Monomial, Rational> = if integral {
        let mut o: Terms<BigInt> = outer
            .integer_terms()
            .map(|(m, c)| (m.0.clone(), c))
            .collect();
        let inn: Vec<Terms<BigInt>> = inner
            .iter()
            .map(|p| p.integer_terms().map(|(m, c)| (m.0.clone(), c)).collect())
            .collect();
        substitute_terms(&mut o, &inn, nvars_out)
            .into_iter()
            .map(|(e, c)| (Monomial(e), Rational::from_integer(c)))
            .collect()
    } else {
        let mut o: Terms<Rational> = outer
            .terms()
            .map(|(m, c)| (m.0.clone(), c.clone()))
            .collect();
        let inn: Vec<Terms<Rational>> = inner
            .iter()
            .map(|p| p.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect())
            .collect();
        substitute_terms(&mut o, &inn, nvars_out)
            .into_iter()
            .map(|(e, c)| (Monomial(e), c))
            .collect()
    };
    HomoPoly::from_map_unchecked(nvars_out, degree, terms)
}
