//! Exact multivariate polynomials over unbounded integers, together with the
//! text grammar used for surface input and the canonical serialisation that
//! keys the point-count cache.
//!
//! Polynomials are sparse maps from exponent vectors to nonzero
//! coefficients. The canonical term order is graded lexicographic (total
//! degree first, then lexicographic with `X0` most significant); display and
//! hashing list terms in descending order of that ranking.

mod parse;

pub use parse::{parse, ParseError};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("operands have {0} and {1} variables")]
    MixedArity(usize, usize),
    #[error("variable index {0} out of range for {1} variables")]
    VarOutOfRange(usize, usize),
}

/// Exponent vector with graded-lex ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate polynomial with arbitrary-precision integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, 1)
    }

    /// The monomial X_var.
    pub fn var(nvars: usize, var: usize) -> Result<Self, PolyError> {
        if var >= nvars {
            return Err(PolyError::VarOutOfRange(var, nvars));
        }
        let mut exps = vec![0u16; nvars];
        exps[var] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(Monomial(exps), BigInt::one());
        Ok(p)
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u16>, BigInt)>,
    ) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector length mismatch");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The common degree of all terms, when one exists. The zero polynomial
    /// is homogeneous of every degree; by convention this returns Some(0)
    /// for it, so callers distinguishing the zero form use `is_zero`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = match it.next() {
            None => return Some(0),
            Some(d) => d,
        };
        it.all(|d| d == first).then_some(first)
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::MixedArity(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, lambda: &BigInt) -> MultiPoly {
        if lambda.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * lambda))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same arity");
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base).expect("same arity");
        }
        acc
    }

    /// Replaces X_var by `replacement` (same variable count) and expands.
    pub fn substitute(&self, var: usize, replacement: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(replacement)?;
        if var >= self.nvars {
            return Err(PolyError::VarOutOfRange(var, self.nvars));
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut rest = m.0.clone();
            rest[var] = 0;
            let mut term = MultiPoly::zero(self.nvars);
            term.terms.insert(Monomial(rest), c.clone());
            let piece = term.mul(&replacement.pow(e as u32))?;
            out = out.add(&piece)?;
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to X_var.
    pub fn partial_derivative(&self, var: usize) -> Result<MultiPoly, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VarOutOfRange(var, self.nvars));
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            out.add_term(Monomial(exps), c * BigInt::from(e));
        }
        Ok(out)
    }

    /// Exact evaluation at an integer point.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// The bit-exact byte form hashed by [`MultiPoly::canonical_hash`]:
    ///
    /// ```text
    /// v1|nvars=<n>|<coef>:<e0>,<e1>,...,<e_{n-1}>|...
    /// ```
    ///
    /// with terms in descending graded-lex order, coefficients in ASCII
    /// decimal and every exponent written out. Stable across runs and
    /// platforms.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = format!("v1|nvars={}", self.nvars).into_bytes();
        for (m, c) in self.terms.iter().rev() {
            out.extend_from_slice(b"|");
            out.extend_from_slice(c.to_string().as_bytes());
            out.push(b':');
            let exps: Vec<String> = m.0.iter().map(|e| e.to_string()).collect();
            out.extend_from_slice(exps.join(",").as_bytes());
        }
        out
    }

    /// FNV-1a (64-bit) over [`MultiPoly::canonical_bytes`].
    pub fn canonical_hash(&self) -> u64 {
        fnv1a(&self.canonical_bytes())
    }
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

impl fmt::Display for MultiPoly {
    /// Emits the input grammar, so `parse(p.to_string())` round-trips.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("X{v}")),
                    _ => factors.push(format!("X{v}^{e}")),
                }
            }
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
