//! Greatest common divisors of homogeneous polynomials over Z.
//!
//! Monomial factors are split off first. The remaining part is tested for
//! coprimality with a modular certificate: if for every variable `x_j` some
//! specialization of the other variables modulo a prime keeps the leading
//! coefficient of an input alive and yields a constant univariate gcd, then
//! the true gcd has degree 0 in `x_j`. Only when that fails does the exact
//! recursive content / primitive-part pseudo-remainder algorithm run.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{HomoPoly, Monomial, Rational};
use crate::error::{Error, Result};

/// Integer polynomial keyed by full-length exponent vectors in lex order.
type ZPoly = BTreeMap<Vec<u32>, BigInt>;

const PRIME: u64 = (1 << 61) - 1;

fn to_zpoly(f: &HomoPoly) -> ZPoly {
    let (_, prim) = f.normalize_primitive().expect("nonzero");
    prim.integer_terms()
        .map(|(m, c)| (m.0.clone(), c))
        .collect()
}

fn from_zpoly(nvars: usize, z: &ZPoly) -> HomoPoly {
    let degree = z.keys().next().map(|e| e.iter().sum()).unwrap_or(0);
    let terms = z
        .iter()
        .map(|(e, c)| (Monomial(e.clone()), Rational::from_integer(c.clone())))
        .collect();
    let p = HomoPoly::from_map_unchecked(nvars, degree, terms);
    p.normalize_primitive().expect("nonzero").1
}

/// Primitive gcd of two nonzero homogeneous polynomials, with the sign
/// convention of [`HomoPoly::normalize_primitive`].
pub fn gcd_homogeneous(f: &HomoPoly, g: &HomoPoly) -> Result<HomoPoly> {
    if f.nvars() != g.nvars() {
        return Err(Error::VariableMismatch(f.nvars(), g.nvars()));
    }
    gcd_many(&[f.clone(), g.clone()])
}

/// Primitive gcd of a family of homogeneous polynomials. Zero members are
/// ignored; an all-zero family is an error.
pub fn gcd_many(polys: &[HomoPoly]) -> Result<HomoPoly> {
    let nonzero: Vec<&HomoPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    let nvars = nonzero.first().ok_or(Error::ZeroPolynomial)?.nvars();
    if let Some(p) = nonzero.iter().find(|p| p.nvars() != nvars) {
        return Err(Error::VariableMismatch(nvars, p.nvars()));
    }
    let mono = nonzero
        .iter()
        .map(|p| p.monomial_content().expect("nonzero"))
        .reduce(|a, b| a.gcd(&b))
        .expect("nonempty");
    let stripped: Vec<HomoPoly> = nonzero
        .iter()
        .map(|p| {
            let m = p.monomial_content().expect("nonzero");
            p.div_monomial(&m).expect("monomial content divides")
        })
        .collect();
    let rest = if stripped.iter().any(|p| p.degree() == 0) {
        HomoPoly::constant(nvars, Rational::one())
    } else if stripped.len() == 1 {
        stripped[0].normalize_primitive()?.1
    } else {
        let zs: Vec<ZPoly> = stripped.iter().map(to_zpoly).collect();
        if certify_coprime(&zs, nvars) {
            HomoPoly::constant(nvars, Rational::one())
        } else {
            let g = zs[1..]
                .iter()
                .try_fold(zs[0].clone(), |acc, z| {
                    let g = gcd_rec(&acc, z, 0, nvars);
                    if is_constant(&g) {
                        Err(g)
                    } else {
                        Ok(g)
                    }
                })
                .unwrap_or_else(|g| g);
            from_zpoly(nvars, &g)
        }
    };
    let mono_poly = HomoPoly::monomial(Rational::one(), mono);
    rest.mul(&mono_poly)?.normalize_primitive().map(|(_, p)| p)
}

fn is_unit(z: &ZPoly) -> bool {
    is_constant(z) && z.values().next().map(|c| c.abs().is_one()).unwrap_or(false)
}

fn is_constant(z: &ZPoly) -> bool {
    z.len() == 1 && z.keys().next().expect("one key").iter().all(|&e| e == 0)
}

// ---------------------------------------------------------------------------
// Modular coprimality certificate

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, PRIME - 2)
}

fn reduce(c: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    c.mod_floor(&p).to_u64().expect("reduced below p")
}

/// Univariate image in `x_j` (dense, lowest degree first, trimmed).
fn specialize(z: &ZPoly, j: usize, point: &[u64]) -> Vec<u64> {
    let deg = z.keys().map(|e| e[j]).max().unwrap_or(0) as usize;
    let mut out = vec![0u64; deg + 1];
    for (e, c) in z {
        let mut v = reduce(c);
        for (i, &k) in e.iter().enumerate() {
            if i != j && k > 0 {
                v = mulmod(v, powmod(point[i], k as u64));
            }
        }
        let slot = &mut out[e[j] as usize];
        *slot = (*slot + v) % PRIME;
    }
    while out.len() > 1 && *out.last().expect("nonempty") == 0 {
        out.pop();
    }
    out
}

fn upoly_rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = invmod(*b.last().expect("nonzero divisor"));
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let lead = *r.last().expect("nonempty");
        if lead == 0 {
            r.pop();
            continue;
        }
        let q = mulmod(lead, inv);
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            let t = mulmod(q, bc);
            r[shift + i] = (r[shift + i] + PRIME - t) % PRIME;
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().expect("nonempty") == 0 {
        r.pop();
    }
    if r.is_empty() {
        r.push(0);
    }
    r
}

fn upoly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn upoly_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    if upoly_is_zero(&a) {
        return if upoly_is_zero(&b) {
            usize::MAX
        } else {
            b.len() - 1
        };
    }
    while !upoly_is_zero(&b) {
        let r = upoly_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() - 1
}

fn certify_coprime(zs: &[ZPoly], nvars: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    'vars: for j in 0..nvars {
        let degs: Vec<u32> = zs
            .iter()
            .map(|z| z.keys().map(|e| e[j]).max().unwrap_or(0))
            .collect();
        if degs.contains(&0) {
            continue;
        }
        for _attempt in 0..3 {
            let point: Vec<u64> = (0..nvars).map(|_| rng.gen_range(1..PRIME)).collect();
            let images: Vec<Vec<u64>> = zs.iter().map(|z| specialize(z, j, &point)).collect();
            // one input must keep its full degree in x_j
            if !images
                .iter()
                .zip(&degs)
                .any(|(im, &d)| im.len() - 1 == d as usize)
            {
                continue;
            }
            let mut g = images[0].clone();
            let mut deg = g.len() - 1;
            for im in &images[1..] {
                deg = upoly_gcd_degree(g.clone(), im.clone());
                if deg == 0 {
                    break;
                }
                g = univariate_gcd(g, im.clone());
            }
            if deg == 0 {
                continue 'vars;
            }
        }
        return false;
    }
    true
}

fn univariate_gcd(mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    while !upoly_is_zero(&b) {
        let r = upoly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

// ---------------------------------------------------------------------------
// Exact recursive gcd over Z[x_v, ..., x_{n-1}]

fn add_into(acc: &mut ZPoly, e: Vec<u32>, c: BigInt) {
    use std::collections::btree_map::Entry;
    match acc.entry(e) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = ZPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_into(&mut out, e, ca * cb);
        }
    }
    out
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = a.clone();
    for (e, c) in b {
        add_into(&mut out, e.clone(), -c.clone());
    }
    out
}

/// Exact quotient `a / b`; the caller guarantees divisibility.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (lb_e, lb_c) = b.iter().next_back().expect("nonzero divisor");
    let mut r = a.clone();
    let mut q = ZPoly::new();
    while let Some((le, lc)) = r.iter().next_back() {
        let e: Vec<u32> = le.iter().zip(lb_e).map(|(x, y)| x - y).collect();
        let (c, rem) = lc.div_rem(lb_c);
        debug_assert!(rem.is_zero(), "inexact division");
        let term: ZPoly = [(e.clone(), c.clone())].into_iter().collect();
        r = zsub(&r, &zmul(&term, b));
        add_into(&mut q, e, c);
    }
    q
}

fn deg_in(a: &ZPoly, v: usize) -> u32 {
    a.keys().map(|e| e[v]).max().unwrap_or(0)
}

/// Coefficient of `x_v^k`, as a polynomial in the later variables.
fn coeff_in(a: &ZPoly, v: usize, k: u32) -> ZPoly {
    a.iter()
        .filter(|(e, _)| e[v] == k)
        .map(|(e, c)| {
            let mut e = e.clone();
            e[v] = 0;
            (e, c.clone())
        })
        .collect()
}

fn integer_content(a: &ZPoly) -> BigInt {
    a.values().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Content with respect to `x_v`: gcd of the coefficient polynomials.
fn content_in(a: &ZPoly, v: usize, nvars: usize) -> ZPoly {
    let d = deg_in(a, v);
    let mut g: Option<ZPoly> = None;
    for k in (0..=d).rev() {
        let c = coeff_in(a, v, k);
        if c.is_empty() {
            continue;
        }
        g = Some(match g {
            None => c,
            Some(g) => gcd_rec(&g, &c, v + 1, nvars),
        });
        if g.as_ref().map(is_unit).unwrap_or(false) {
            break;
        }
    }
    normalize_sign(g.expect("nonzero input"))
}

fn normalize_sign(mut a: ZPoly) -> ZPoly {
    if a.values()
        .next_back()
        .map(|c| c.is_negative())
        .unwrap_or(false)
    {
        for c in a.values_mut() {
            *c = -c.clone();
        }
    }
    a
}

fn primitive_in(a: &ZPoly, v: usize, nvars: usize) -> ZPoly {
    let c = content_in(a, v, nvars);
    zdiv_exact(a, &c)
}

fn prem(a: &ZPoly, b: &ZPoly, v: usize) -> ZPoly {
    let db = deg_in(b, v);
    let lb = coeff_in(b, v, db);
    let mut r = a.clone();
    while !r.is_empty() && deg_in(&r, v) >= db {
        let dr = deg_in(&r, v);
        let lr = coeff_in(&r, v, dr);
        let mut shift = vec![0u32; b.keys().next().expect("nonzero").len()];
        shift[v] = dr - db;
        let mono: ZPoly = [(shift, BigInt::one())].into_iter().collect();
        r = zsub(&zmul(&lb, &r), &zmul(&zmul(&lr, &mono), b));
    }
    r
}

/// gcd in Z[x_v, ..., x_{n-1}]; inputs involve only those variables.
fn gcd_rec(a: &ZPoly, b: &ZPoly, v: usize, nvars: usize) -> ZPoly {
    let unit = |e: usize| -> ZPoly { [(vec![0u32; e], BigInt::one())].into_iter().collect() };
    if a.is_empty() || b.is_empty() {
        return normalize_sign(if a.is_empty() { b.clone() } else { a.clone() });
    }
    let width = a.keys().next().expect("nonzero").len();
    if v == nvars {
        let g = integer_content(a).gcd(&integer_content(b));
        return [(vec![0u32; width], g)].into_iter().collect();
    }
    if deg_in(a, v) == 0 && deg_in(b, v) == 0 {
        return gcd_rec(a, b, v + 1, nvars);
    }
    let ca = content_in(a, v, nvars);
    let cb = content_in(b, v, nvars);
    let gc = gcd_rec(&ca, &cb, v + 1, nvars);
    let mut p = zdiv_exact(a, &ca);
    let mut q = zdiv_exact(b, &cb);
    if deg_in(&p, v) < deg_in(&q, v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        if deg_in(&q, v) == 0 {
            // nonzero remainder free of x_v: the primitive parts are coprime in x_v
            p = unit(width);
            break;
        }
        let r = prem(&p, &q, v);
        p = q;
        q = if r.is_empty() {
            r
        } else {
            primitive_in(&r, v, nvars)
        };
    }
    let pp = if deg_in(&p, v) == 0 {
        unit(width)
    } else {
        primitive_in(&p, v, nvars)
    };
    normalize_sign(zmul(&gc, &pp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::parse_homogeneous;

    fn p(s: &str) -> HomoPoly {
        parse_homogeneous(s, 3, None).unwrap()
    }

    // gcds are defined up to a unit; the canonical sign may flip the printed form
    fn assoc(a: &HomoPoly, b: &HomoPoly) -> bool {
        a == b || *a == b.neg()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(gcd_homogeneous(&p("x*z"), &p("x*y")).unwrap(), p("x"));
        let g = gcd_homogeneous(&p("x^2 - y^2"), &p("x - y")).unwrap();
        assert!(assoc(&g, &p("x - y")));
        assert_eq!(g, p("x - y").normalize_primitive().unwrap().1);
        assert_eq!(gcd_homogeneous(&p("x"), &p("y")).unwrap(), p("1"));
    }

    #[test]
    fn zero_inputs_rejected() {
        let z = HomoPoly::zero(3, 2);
        assert_eq!(gcd_homogeneous(&z, &z), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn recovers_hidden_factor() {
        let h = p("x^2 + 3*x*y - z^2");
        let f = p("x + 2*y - z").mul(&h).unwrap();
        let g = p("y^3 - x*z^2 + 5*x^2*y").mul(&h).unwrap();
        let gg = gcd_homogeneous(&f, &g).unwrap();
        assert_eq!(gg, h.normalize_primitive().unwrap().1);
    }

    #[test]
    fn mixed_monomial_and_polynomial_factor() {
        let f = p("x^2*y*(x - y)^2");
        let g = p("x*y^2*(x - y)*(x + z)");
        assert!(assoc(
            &gcd_homogeneous(&f, &g).unwrap(),
            &p("x^2*y - x*y^2")
        ));
    }

    #[test]
    fn scaled_inputs() {
        let f = p("6*x^2 - 6*y^2");
        let g = p("4*x + 4*y");
        assert_eq!(gcd_homogeneous(&f, &g).unwrap(), p("x + y"));
    }

    #[test]
    fn family_gcd() {
        let fam = [p("x^2*y*z"), p("x*y^2*z"), p("x*y*z^2")];
        assert_eq!(gcd_many(&fam).unwrap(), p("x*y*z"));
    }
}
