//! Text syntax: `3*x^2*y - 1/2*z^3`, with variables `x, y, z` for three
//! variables or `x0 .. xm` in general. Printing is exact and parses back to
//! the same polynomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{HomoPoly, Monomial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarNames {
    /// `x, y, z` (three variables only).
    Xyz,
    /// `x0, x1, ...`.
    Indexed,
}

impl VarNames {
    pub fn default_for(nvars: usize) -> Self {
        if nvars == 3 {
            VarNames::Xyz
        } else {
            VarNames::Indexed
        }
    }

    pub fn name(self, i: usize) -> String {
        match self {
            VarNames::Xyz => ["x", "y", "z"][i].to_string(),
            VarNames::Indexed => format!("x{i}"),
        }
    }
}

type Sparse = BTreeMap<Vec<u32>, Rational>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at offset {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    Rational::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -Rational::one()
                }
                _ if first => Rational::one(),
                _ => break,
            };
            first = false;
            let t = self.term()?;
            for (e, c) in t {
                *acc.entry(e).or_insert_with(Rational::zero) += c * &sign;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(acc)
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = mul_sparse(&acc, &rhs);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    let c = as_constant(&rhs, self.nvars)
                        .ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                    if c.is_zero() {
                        return self.err("division by zero");
                    }
                    let inv = c.recip();
                    for v in acc.values_mut() {
                        *v *= &inv;
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let n: u32 = n
                .try_into()
                .map_err(|_| Error::Parse("exponent out of range".into()))?;
            let mut acc = unit(self.nvars);
            for _ in 0..n {
                acc = mul_sparse(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut s = Sparse::new();
                if !n.is_zero() {
                    s.insert(vec![0; self.nvars], Rational::from_integer(n));
                }
                Ok(s)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self.var_index(name)?;
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                let mut s = Sparse::new();
                s.insert(e, Rational::one());
                Ok(s)
            }
            _ => self.err("unexpected token"),
        }
    }

    fn var_index(&self, name: &str) -> Result<usize> {
        if self.nvars == 3 {
            if let Some(i) = ["x", "y", "z"].iter().position(|v| *v == name) {
                return Ok(i);
            }
        }
        if let Some(rest) = name.strip_prefix('x') {
            if let Ok(i) = rest.parse::<usize>() {
                if i < self.nvars && !rest.is_empty() {
                    return Ok(i);
                }
            }
        }
        Err(Error::Parse(format!(
            "unknown variable '{name}' for {} variables",
            self.nvars
        )))
    }
}

fn unit(nvars: usize) -> Sparse {
    let mut s = Sparse::new();
    s.insert(vec![0; nvars], Rational::one());
    s
}

fn as_constant(s: &Sparse, nvars: usize) -> Option<Rational> {
    match s.len() {
        0 => Some(Rational::zero()),
        1 => {
            let (e, c) = s.iter().next()?;
            (e.iter().all(|&x| x == 0) && e.len() == nvars).then(|| c.clone())
        }
        _ => None,
    }
}

fn mul_sparse(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Parses a homogeneous polynomial in `nvars` variables. `degree` is used
/// for the zero polynomial (default 0) and, when given, is enforced.
pub fn parse_homogeneous(text: &str, nvars: usize, degree: Option<u32>) -> Result<HomoPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
    };
    let s = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let poly = HomoPoly::from_terms(nvars, degree.unwrap_or(0), s)?;
    if let Some(d) = degree {
        if !poly.is_zero() && poly.degree() != d {
            return Err(Error::DegreeMismatch(d, poly.degree()));
        }
    }
    Ok(poly)
}

fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(m: &Monomial, names: VarNames) -> String {
    m.0.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names.name(i)
            } else {
                format!("{}^{e}", names.name(i))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub(super) fn format_poly(p: &HomoPoly, names: &VarNames) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        let mono = format_monomial(m, *names);
        if mono.is_empty() {
            out.push_str(&format_rational(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_rational(&a));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reference_syntax() {
        let f = parse_homogeneous("3*x^2*y - 1/2*z^3", 3, None).unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.to_string(), "3*x^2*y - 1/2*z^3");
    }

    #[test]
    fn indexed_names_and_parentheses() {
        let f = parse_homogeneous("(x0 + x1)^2 - x0^2", 2, None).unwrap();
        assert_eq!(f.to_string(), "2*x0*x1 + x1^2");
        let g = parse_homogeneous("x0*x1 + x1*x2", 3, None).unwrap();
        assert_eq!(g.to_string(), "x*y + y*z");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_homogeneous("x + y^2", 3, None),
            Err(Error::NotHomogeneous)
        ));
        assert!(matches!(
            parse_homogeneous("x + w", 3, None),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_homogeneous("x / y", 3, None),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_homogeneous("x3", 3, None),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_homogeneous("x +", 3, None),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn zero_uses_declared_degree() {
        let z = parse_homogeneous("x - x", 3, Some(1)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 1);
        assert_eq!(z.to_string(), "0");
    }
}
