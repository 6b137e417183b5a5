//! Rank computations on sorted sparse vectors over a field: the rationals,
//! or the prime field of `2^61 - 1`.
//!
//! Ranks over the prime field never exceed ranks over the rationals, and
//! agree unless the prime divides one of a few specific minors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{PolyMatrix, SliceBasis};
use crate::poly::Monomial;
use crate::scalar::Q;

pub trait Scalar: Clone + Send + Sync + std::fmt::Debug {
    fn from_q(q: &Q) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl Scalar for Q {
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

pub const MERSENNE61: u64 = (1 << 61) - 1;

/// An element of `Z / (2^61 - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp(pub u64);

impl Fp {
    fn reduce128(x: u128) -> u64 {
        let lo = (x as u64) & MERSENNE61;
        let hi = (x >> 61) as u64;
        let mut r = lo + (hi & MERSENNE61) + (hi >> 61);
        while r >= MERSENNE61 {
            r -= MERSENNE61;
        }
        r
    }

    fn from_bigint(n: &BigInt) -> Self {
        let p = BigInt::from(MERSENNE61);
        Fp(n.mod_floor(&p).to_u64().expect("residue fits"))
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Scalar for Fp {
    fn from_q(q: &Q) -> Self {
        let n = Self::from_bigint(q.numer());
        if q.denom().is_one() {
            n
        } else {
            n.mul(&Self::from_bigint(q.denom()).inv())
        }
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= MERSENNE61 { s - MERSENNE61 } else { s })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(Self::reduce128(u128::from(self.0) * u128::from(o.0)))
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { MERSENNE61 - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(MERSENNE61 - 2)
    }
}

/// A sparse vector sorted by index, without zero entries.
pub type SVec<S> = Vec<(usize, S)>;

/// `a + c * b`.
pub fn axpy<S: Scalar>(a: &SVec<S>, c: &S, b: &SVec<S>) -> SVec<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.mul(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form keyed by pivot column; pivot rows have leading entry 1.
#[derive(Clone, Debug)]
pub struct RowEchelon<S> {
    pivots: HashMap<usize, SVec<S>>,
}

impl<S: Scalar> Default for RowEchelon<S> {
    fn default() -> Self {
        RowEchelon { pivots: HashMap::new() }
    }
}

impl<S: Scalar> RowEchelon<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rows(rows: impl IntoIterator<Item = SVec<S>>) -> Self {
        let mut e = Self::new();
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SVec<S>> {
        self.pivots.values()
    }

    /// Reduces `row`; returns true if it was independent and became a pivot.
    pub fn insert(&mut self, mut row: SVec<S>) -> bool {
        while let Some((lead, lc)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &lc.neg(), p),
                None => {
                    let inv = lc.inv();
                    let normalized = row.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
                    self.pivots.insert(lead, normalized);
                    return true;
                }
            }
        }
        false
    }
}

/// Columns of the internal-degree slice of `m`, one sparse vector per source
/// basis element, indexed by the target basis.
pub fn slice_columns<S: Scalar>(m: &PolyMatrix, src: &SliceBasis, tgt: &SliceBasis) -> Result<Vec<SVec<S>>> {
    let mut by_col: HashMap<usize, Vec<(usize, Vec<(&Monomial, S)>)>> = HashMap::new();
    for (r, c, p) in m.entries() {
        by_col.entry(c).or_default().push((r, p.terms().map(|(e, v)| (e, S::from_q(v))).collect()));
    }
    let mut out = Vec::with_capacity(src.len());
    for (g, mono) in &src.elems {
        let mut acc: Vec<(usize, S)> = Vec::new();
        if let Some(col) = by_col.get(g) {
            for (r, terms) in col {
                for (pm, v) in terms {
                    let key: Monomial = pm.iter().zip(mono).map(|(a, b)| a + b).collect();
                    match tgt.index.get(&(*r, key)) {
                        Some(i) => acc.push((*i, v.clone())),
                        None => return Err(Error::NotGraded(format!("entry ({r},{g}) is not homogeneous of the expected degree"))),
                    }
                }
            }
        }
        acc.sort_by_key(|x| x.0);
        let mut merged: SVec<S> = Vec::with_capacity(acc.len());
        for (i, v) in acc {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 = last.1.add(&v),
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|x| !x.1.is_zero());
        out.push(merged);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};
    use proptest::prelude::*;

    #[test]
    fn field_arithmetic() {
        let h = Fp::from_q(&q(1, 2));
        assert_eq!(h.add(&h), Fp(1));
        assert_eq!(Fp::from_q(&qi(-1)).add(&Fp(1)), Fp(0));
        assert_eq!(Fp(12345).mul(&Fp(12345).inv()), Fp(1));
        assert_eq!(Fp(MERSENNE61 - 1).mul(&Fp(MERSENNE61 - 1)), Fp(1));
    }

    fn to_svec(row: &[i64]) -> SVec<Q> {
        row.iter().enumerate().filter(|(_, v)| **v != 0).map(|(i, v)| (i, qi(*v))).collect()
    }

    proptest! {
        #[test]
        fn modular_rank_matches_rational(rows in prop::collection::vec(prop::collection::vec(-4i64..5, 6), 1..8)) {
            let rq: Vec<SVec<Q>> = rows.iter().map(|r| to_svec(r)).collect();
            let rp: Vec<SVec<Fp>> = rq.iter().map(|r| r.iter().map(|(i, v)| (*i, Fp::from_q(v))).collect()).collect();
            let exact = crate::matrix::Echelon::from_rows(rq.iter().map(|r| r.iter().cloned().collect())).rank();
            prop_assert_eq!(RowEchelon::from_rows(rq).rank(), exact);
            prop_assert_eq!(RowEchelon::from_rows(rp).rank(), exact);
        }
    }
}
