//! Sparse multivariate polynomials over the rationals.
//!
//! Every variable carries internal degree 1, so the total degree of a
//! monomial is the sum of its exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Q;

/// Exponent vector. Its length is the number of variables of the ring.
pub type Monomial = Vec<u32>;

pub fn mono_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// A polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiPoly {
    nvars: usize,
    #[serde(with = "crate::entries")]
    terms: BTreeMap<Monomial, Q>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(m, Q::one())
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let nvars = m.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `sum_i coeffs[i] x_i`.
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = vec![0; n];
                m[i] = 1;
                p.terms.insert(m, c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Returns the constant value if the polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (mono_degree(m) == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Degree of a homogeneous polynomial; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| mono_degree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| mono_degree(m)).max()
    }

    /// Component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| mono_degree(m) == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, mono: &[u32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.iter().zip(mono).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable sets");
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c * m * other` to `self`.
    pub fn add_scaled_shifted(&mut self, c: &Q, mono: &[u32], other: &Self) {
        self.check_vars(other);
        for (m, a) in &other.terms {
            let mm: Monomial = m.iter().zip(mono).map(|(x, y)| x + y).collect();
            self.add_term(mm, a * c);
        }
    }

    /// Leading monomial in lex order (the largest key).
    fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    /// Exact division; errors unless the remainder vanishes.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor);
        let (dm, dc) = match divisor.leading() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::InexactDivision("division by zero polynomial".into())),
        };
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if rm.iter().zip(&dm).any(|(a, b)| a < b) {
                return Err(Error::InexactDivision(format!("{self} is not divisible by {divisor}")));
            }
            let qm: Monomial = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let qc = &rc / &dc;
            rem.add_scaled_shifted(&(-qc.clone()), &qm, divisor);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let is_const = mono_degree(m) == 0;
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
            }
            for (i, e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "a{}", i + 1)?,
                    _ => write!(f, "a{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        self.check_vars(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        self.check_vars(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        r -= rhs;
        r
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut r = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            r.add_scaled_shifted(c, m, rhs);
        }
        r
    }
}

/// All monomials of total degree `d` in `m` variables, in increasing lex order.
pub fn monomial_basis(m: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if m == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; m];
    fill(&mut cur, 0, d, &mut out);
    out.sort();
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for e in 0..=left {
        cur[pos] = e;
        fill(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

/// Number of monomials of degree `d` in `m` variables: C(d+m-1, m-1).
pub fn monomial_count(m: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    if m == 0 {
        return u64::from(d == 0);
    }
    binomial(d as u64 + m as u64 - 1, m as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn a(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&a(0) + &a(1)) * &(&a(0) - &a(1));
        let expect = &a(0).pow(2) - &a(1).pow(2);
        assert_eq!(p, expect);
        let quot = expect.exact_divide(&(&a(0) - &a(1))).unwrap();
        assert_eq!(quot, &a(0) + &a(1));
    }

    #[test]
    fn inexact_division_is_an_error() {
        let f = &a(0) + &a(1);
        assert!(matches!(f.exact_divide(&a(0)), Err(Error::InexactDivision(_))));
    }

    #[test]
    fn basis_sizes_and_order() {
        let b = monomial_basis(2, 2);
        assert_eq!(b, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(monomial_basis(1, 5), vec![vec![5]]);
        assert_eq!(monomial_basis(3, 0), vec![vec![0, 0, 0]]);
        for m in 1..4 {
            for d in 0..6 {
                assert_eq!(monomial_basis(m, d).len() as u64, monomial_count(m, d as i64));
            }
        }
    }

    #[test]
    fn zero_coefficients_not_stored() {
        let p = &a(0) - &a(0);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        assert_eq!(MultiPoly::constant(2, q(0, 1)).num_terms(), 0);
    }

    #[test]
    fn display() {
        let p = &a(0).pow(2).scale(&q(-1, 2)) + &MultiPoly::one(2);
        assert_eq!(p.to_string(), "-1/2a1^2 + 1");
    }
}
