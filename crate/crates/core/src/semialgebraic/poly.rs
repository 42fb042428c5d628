//! Sparse multivariate polynomials with big-integer coefficients.
//!
//! Monomials are packed into a `u128`, eight bits of exponent per variable,
//! variable 0 in the most significant byte. That caps a polynomial at 16
//! variables and 255 per variable, far above anything emitted here.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::precise::DD;

pub const MAX_VARS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<u128, BigInt>,
}

#[inline]
fn shift(var: usize) -> u32 {
    8 * (MAX_VARS - 1 - var) as u32
}

fn exponent(key: u128, var: usize) -> u32 {
    ((key >> shift(var)) & 0xff) as u32
}

fn total_degree(key: u128) -> u32 {
    key.to_le_bytes().iter().map(|&b| b as u32).sum()
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(0, c.into());
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut p = Self::zero(nvars);
        p.add_term(1u128 << shift(i), BigInt::one());
        p
    }

    /// `1 + v²`, the denominator of the half-angle substitution.
    pub fn one_plus_square(nvars: usize, i: usize) -> Self {
        let v = Self::var(nvars, i);
        Self::constant(nvars, 1) + &v * &v
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: u128, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Iterator over `(exponents, coefficient)`, in descending lexicographic
    /// order of the exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &BigInt)> + '_ {
        self.terms
            .iter()
            .rev()
            .map(move |(&k, c)| ((0..self.nvars).map(|i| exponent(k, i)).collect(), c))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&k| total_degree(k)).max().unwrap_or(0)
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(&k, v)| (k, v * c)).collect();
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluation in double-double arithmetic.
    pub fn eval(&self, point: &[f64]) -> f64 {
        self.eval_dd(point).to_f64()
    }

    pub fn eval_dd(&self, point: &[f64]) -> DD {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let pts: Vec<DD> = point.iter().map(|&v| DD::from(v)).collect();
        let mut sum = DD::ZERO;
        for (&k, c) in &self.terms {
            let mut t = big_to_dd(c);
            for (i, &p) in pts.iter().enumerate() {
                for _ in 0..exponent(k, i) {
                    t = t * p;
                }
            }
            sum = sum + t;
        }
        sum
    }

    /// Renders with the given variable names, e.g. `3*x^2*b1 - a + 7`.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (exps, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let mut factors: Vec<String> = Vec::new();
            let monomial = exps.iter().any(|&e| e > 0);
            if !mag.is_one() || !monomial {
                factors.push(mag.to_string());
            }
            for (name, &e) in names.iter().zip(&exps) {
                match e {
                    0 => {}
                    1 => factors.push((*name).to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }

    /// Parses the syntax produced by [`Poly::to_string_with`]: a sum of
    /// `±coef*var^e*...` terms. Whitespace is ignored.
    pub fn parse(text: &str, names: &[&str]) -> Result<Poly> {
        let nvars = names.len();
        let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Poly::zero(nvars);
        let bytes = src.as_bytes();
        let mut start = 0;
        let mut terms: Vec<&str> = Vec::new();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
                terms.push(&src[start..i]);
                start = i;
            }
        }
        terms.push(&src[start..]);
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in '{text}'")));
            }
            let mut coef = BigInt::from(sign);
            let mut key: u128 = 0;
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in '{term}'")));
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    let c: BigInt = factor
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient '{factor}'")))?;
                    coef *= c;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?,
                    ),
                    None => (factor, 1),
                };
                let var = names
                    .iter()
                    .position(|&n| n == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
                let total = exponent(key, var) + e;
                if total > 255 {
                    return Err(Error::Parse(format!("exponent of '{name}' exceeds 255")));
                }
                key += (e as u128) << shift(var);
            }
            out.add_term(key, coef);
        }
        Ok(out)
    }
}

fn big_to_dd(c: &BigInt) -> DD {
    let hi = c.to_f64().unwrap_or(f64::NAN);
    // A float this large is integral, so the remainder is exact.
    match BigInt::from_f64(hi) {
        Some(h) => DD::from(hi) + DD::from((c - h).to_f64().unwrap_or(0.0)),
        None => DD::from(hi),
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c);
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: BTreeMap<u128, BigInt> = BTreeMap::new();
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &rhs.terms {
                // Per-variable exponents stay below 256, so byte-wise
                // addition never carries.
                debug_assert!((0..self.nvars).all(|i| exponent(ka, i) + exponent(kb, i) < 256));
                *acc.entry(ka + kb).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAMES: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn arithmetic_and_degree() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let p = (&x + &y).pow(3);
        assert_eq!(p.len(), 4);
        assert_eq!(p.degree(), 3);
        assert_eq!(p.max_abs_coefficient(), BigInt::from(3));
        assert!((&p - &p).is_zero());
        assert_eq!(p.eval(&[1.0, 2.0, 0.0]), 27.0);
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let text = "3*x^2*y - y*z^4 + 12 - x";
        let p = Poly::parse(text, &NAMES).unwrap();
        let shown = p.to_string_with(&NAMES);
        assert_eq!(shown, "3*x^2*y - x - y*z^4 + 12");
        assert_eq!(Poly::parse(&shown, &NAMES).unwrap(), p);
        assert_eq!(Poly::parse("0", &NAMES).unwrap(), Poly::zero(3));
        assert!(Poly::parse("2*w", &NAMES).is_err());
        assert!(Poly::parse("x +", &NAMES).is_err());
    }

    #[test]
    fn huge_coefficients_survive() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = Poly::constant(3, big.clone()).pow(2);
        assert_eq!(p.max_abs_coefficient(), &big * &big);
        let shown = p.to_string_with(&NAMES);
        assert_eq!(Poly::parse(&shown, &NAMES).unwrap(), p);
    }
}
