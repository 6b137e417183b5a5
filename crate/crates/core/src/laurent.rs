//! Sparse multivariate Laurent polynomials with integer-like coefficients, and
//! rational functions whose only denominator is a power of `1 - x0^step`.
//!
//! Half-integer exponents are stored doubled by callers; this module only
//! sees integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::binomial;

/// Coefficient ring requirements.
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

impl Coeff for i64 {
    fn from_i64(n: i64) -> Self {
        n
    }
}

impl Coeff for num_complex::Complex<i64> {
    fn from_i64(n: i64) -> Self {
        num_complex::Complex::new(n, 0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Laurent<C, const N: usize> {
    #[serde(with = "crate::entries", bound(serialize = "C: Serialize", deserialize = "C: Deserialize<'de>"))]
    terms: BTreeMap<Vec<i64>, C>,
}

impl<C: Coeff, const N: usize> Default for Laurent<C, N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff, const N: usize> Laurent<C, N> {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial([0; N], C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn monomial(e: [i64; N], c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e.to_vec(), c);
        }
        Laurent { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ([i64; N], C)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: [i64; N], c: C) {
        self.add_term_vec(e.to_vec(), c);
    }

    fn add_term_vec(&mut self, e: Vec<i64>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: [i64; N]) -> C {
        self.terms.get(e.as_slice()).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ([i64; N], &C)> {
        self.terms.iter().map(|(e, c)| {
            let mut a = [0i64; N];
            a.copy_from_slice(e);
            (a, c)
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term_vec(e.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Multiplication by the monomial `x^e`.
    pub fn shift(&self, e: [i64; N]) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(e.iter()).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Terms whose exponent in variable `var` is at most `bound`.
    pub fn truncate(&self, var: usize, bound: i64) -> Self {
        Laurent { terms: self.terms.iter().filter(|(e, _)| e[var] <= bound).map(|(e, c)| (e.clone(), c.clone())).collect() }
    }

    /// Smallest and largest exponent of `var`, if nonzero.
    pub fn exponent_range(&self, var: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }

    /// Applies `f` to every exponent vector, merging collisions.
    pub fn map_exponents<const M: usize>(&self, f: impl Fn([i64; N]) -> [i64; M]) -> Laurent<C, M> {
        let mut out = Laurent::<C, M>::zero();
        for (e, c) in self.terms() {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Laurent<D, N> {
        let mut out = Laurent::<D, N>::zero();
        for (e, c) in self.terms() {
            out.add_term(e, f(c));
        }
        out
    }
}

impl<C: Coeff, const N: usize> Add for &Laurent<C, N> {
    type Output = Laurent<C, N>;
    fn add(self, o: Self) -> Laurent<C, N> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term_vec(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff, const N: usize> Sub for &Laurent<C, N> {
    type Output = Laurent<C, N>;
    fn sub(self, o: Self) -> Laurent<C, N> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term_vec(e.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff, const N: usize> Neg for &Laurent<C, N> {
    type Output = Laurent<C, N>;
    fn neg(self) -> Laurent<C, N> {
        Laurent { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl<C: Coeff, const N: usize> Mul for &Laurent<C, N> {
    type Output = Laurent<C, N>;
    fn mul(self, o: Self) -> Laurent<C, N> {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term_vec(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: fmt::Debug, const N: usize> fmt::Debug for Laurent<C, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c:?}*{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `num / (1 - x0^step)^den`, an exact rational function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalSeries<C, const N: usize> {
    #[serde(bound(serialize = "C: Serialize", deserialize = "C: Deserialize<'de>"))]
    pub num: Laurent<C, N>,
    pub den: u32,
    pub step: i64,
}

impl<C: Coeff, const N: usize> RationalSeries<C, N> {
    pub fn new(num: Laurent<C, N>, den: u32, step: i64) -> Self {
        RationalSeries { num, den, step }
    }

    pub fn poly(num: Laurent<C, N>, step: i64) -> Self {
        Self::new(num, 0, step)
    }

    fn one_minus(step: i64) -> Laurent<C, N> {
        let mut e = [0i64; N];
        e[0] = step;
        &Laurent::one() - &Laurent::monomial(e, C::one())
    }

    /// Same value with denominator exponent raised to `k`.
    pub fn with_den(&self, k: u32) -> Laurent<C, N> {
        assert!(k >= self.den);
        &self.num * &Self::one_minus(self.step).pow(k - self.den)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.step, o.step);
        let k = self.den.max(o.den);
        Self::new(&self.with_den(k) + &o.with_den(k), k, self.step)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.num, self.den, self.step)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.step, o.step);
        Self::new(&self.num * &o.num, self.den + o.den, self.step)
    }

    pub fn mul_poly(&self, p: &Laurent<C, N>) -> Self {
        Self::new(&self.num * p, self.den, self.step)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels factors of `1 - x0^step` from the numerator where possible.
    pub fn reduce(&self) -> Self {
        let mut cur = self.clone();
        while cur.den > 0 {
            match divide_one_minus(&cur.num, cur.step) {
                Some(q) => {
                    cur = Self::new(q, cur.den - 1, cur.step);
                }
                None => break,
            }
        }
        cur
    }

    /// Power-series expansion in `x0`, exact for every `x0`-exponent `<= bound`.
    pub fn expand(&self, bound: i64) -> Laurent<C, N> {
        let mut out = Laurent::zero();
        for (e, c) in self.num.terms() {
            let mut j = 0i64;
            while e[0] + j * self.step <= bound {
                let w = if self.den == 0 {
                    if j == 0 {
                        1
                    } else {
                        break;
                    }
                } else {
                    binomial((j as u64) + u64::from(self.den) - 1, u64::from(self.den) - 1) as i64
                };
                let mut f = e;
                f[0] += j * self.step;
                out.add_term(f, c.clone() * C::from_i64(w));
                j += 1;
            }
        }
        out
    }
}

impl<C: Coeff, const N: usize> PartialEq for RationalSeries<C, N> {
    fn eq(&self, o: &Self) -> bool {
        self.step == o.step && {
            let k = self.den.max(o.den);
            self.with_den(k) == o.with_den(k)
        }
    }
}

/// Exact division of `p` by `1 - x0^step`, if possible.
fn divide_one_minus<C: Coeff, const N: usize>(p: &Laurent<C, N>, step: i64) -> Option<Laurent<C, N>> {
    // group by the remaining exponents; each fiber is a one-variable problem
    let mut fibers: BTreeMap<Vec<i64>, BTreeMap<i64, C>> = BTreeMap::new();
    for (e, c) in p.terms() {
        fibers.entry(e[1..].to_vec()).or_default().insert(e[0], c.clone());
    }
    let mut out = Laurent::zero();
    for (rest, fiber) in fibers {
        // q(1 - x^s) = f; q_k = f_k + q_{k-s}, scanning upward
        let lo = *fiber.keys().next().unwrap();
        let hi = *fiber.keys().next_back().unwrap();
        let mut qv: BTreeMap<i64, C> = BTreeMap::new();
        let mut k = lo;
        while k <= hi {
            let fk = fiber.get(&k).cloned().unwrap_or_else(C::zero);
            let prev = qv.get(&(k - step)).cloned().unwrap_or_else(C::zero);
            let v = fk + prev;
            if !v.is_zero() {
                qv.insert(k, v);
            }
            k += 1;
        }
        // the tail beyond hi - step must vanish
        if qv.keys().any(|&k| k > hi - step) {
            return None;
        }
        for (k, c) in qv {
            let mut e = [0i64; N];
            e[0] = k;
            e[1..].copy_from_slice(&rest);
            out.add_term(e, c);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    type L2 = Laurent<i64, 2>;

    #[test]
    fn ring_ops() {
        let x = L2::monomial([1, 0], 1);
        let y = L2::monomial([0, -1], 2);
        let s = &x + &y;
        let p = &s * &s;
        assert_eq!(p.coeff([2, 0]), 1);
        assert_eq!(p.coeff([1, -1]), 4);
        assert_eq!(p.coeff([0, -2]), 4);
        assert!((&p - &p).is_zero());
        assert_eq!(x.shift([-1, 3]), L2::monomial([0, 3], 1));
    }

    #[test]
    fn expand_geometric() {
        let r = RationalSeries::<i64, 1>::new(Laurent::one(), 1, 1);
        let e = r.expand(4);
        for k in 0..=4 {
            assert_eq!(e.coeff([k]), 1);
        }
        assert_eq!(e.coeff([5]), 0);
        let r2 = RationalSeries::<i64, 1>::new(Laurent::one(), 2, 2);
        let e2 = r2.expand(6);
        assert_eq!(e2.coeff([4]), 3);
        assert_eq!(e2.coeff([3]), 0);
    }

    #[test]
    fn reduce_and_eq() {
        let one_minus = &Laurent::<i64, 1>::one() - &Laurent::monomial([1], 1);
        let r = RationalSeries::new(&one_minus * &Laurent::monomial([3], 5), 2, 1);
        let red = r.reduce();
        assert_eq!(red.den, 1);
        assert_eq!(red, r);
        assert_ne!(red, RationalSeries::new(Laurent::monomial([3], 5), 0, 1));
    }

    #[test]
    fn gaussian_coefficients() {
        let i = Laurent::<Complex<i64>, 1>::constant(Complex::new(0, 1));
        assert_eq!(&i * &i, Laurent::constant(Complex::new(-1, 0)));
    }
}
