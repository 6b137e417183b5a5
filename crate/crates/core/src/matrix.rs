//! Sparse polynomial matrices (maps between graded free left modules) and
//! exact linear algebra on their finite-dimensional degree slices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{monomial_basis, Monomial, MultiPoly};
use crate::scalar::Q;

/// A `rows x cols` matrix of polynomials, stored by rows.
///
/// Column `c` is the image of the `c`-th source generator written in the
/// target generators, with polynomial coefficients acting on the left.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    nvars: usize,
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, MultiPoly>>,
}

impl PolyMatrix {
    pub fn zero(nvars: usize, nrows: usize, ncols: usize) -> Self {
        PolyMatrix { nvars, nrows, ncols, rows: vec![BTreeMap::new(); nrows] }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        Self::scalar_identity(nvars, n, &Q::one())
    }

    pub fn scalar_identity(nvars: usize, n: usize, c: &Q) -> Self {
        let mut m = Self::zero(nvars, n, n);
        if !c.is_zero() {
            for i in 0..n {
                m.rows[i].insert(i, MultiPoly::constant(nvars, c.clone()));
            }
        }
        m
    }

    /// `p * Id`.
    pub fn diagonal(p: &MultiPoly, n: usize) -> Self {
        let mut m = Self::zero(p.nvars(), n, n);
        if !p.is_zero() {
            for i in 0..n {
                m.rows[i].insert(i, p.clone());
            }
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<MultiPoly>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(nvars, nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn nrows(&self) -> usize {
        self.nrows
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn get(&self, r: usize, c: usize) -> MultiPoly {
        self.rows[r].get(&c).cloned().unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&MultiPoly> {
        self.rows[r].get(&c)
    }

    pub fn set(&mut self, r: usize, c: usize, p: MultiPoly) {
        assert!(r < self.nrows && c < self.ncols);
        if p.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, p);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, p: &MultiPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.rows[r].entry(c).or_insert_with(|| MultiPoly::zero(p.nvars()));
        *e += p;
        if e.is_zero() {
            self.rows[r].remove(&c);
        }
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, MultiPoly> {
        &self.rows[r]
    }

    /// Nonzero entries as `(row, col, poly)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &MultiPoly)> {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, p)| (r, *c, p)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// `Some(c)` when the matrix is square and equal to `c * Id` with `c` a
    /// nonzero constant.
    pub fn as_scalar_identity(&self) -> Option<Q> {
        if self.nrows != self.ncols || self.nrows == 0 {
            return None;
        }
        let mut c: Option<Q> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != 1 {
                return None;
            }
            let (col, p) = row.iter().next().unwrap();
            if *col != r {
                return None;
            }
            let v = p.as_constant()?;
            match &c {
                None => c = Some(v),
                Some(c0) if *c0 == v => {}
                _ => return None,
            }
        }
        c.filter(|v| !v.is_zero())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.nvars, self.nrows, self.ncols);
        if c.is_zero() {
            return out;
        }
        for (r, row) in self.rows.iter().enumerate() {
            for (col, p) in row {
                out.rows[r].insert(*col, p.scale(c));
            }
        }
        out
    }

    pub fn scale_poly(&self, f: &MultiPoly) -> Self {
        let mut out = Self::zero(self.nvars, self.nrows, self.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            for (col, p) in row {
                out.set(r, *col, p * f);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!("{:?} + {:?}", self.shape(), other.shape())));
        }
        let mut out = self.clone();
        for (r, c, p) in other.entries() {
            out.add_to(r, c, p);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::ShapeMismatch(format!("{:?} * {:?}", self.shape(), other.shape())));
        }
        let mut out = Self::zero(self.nvars, self.nrows, other.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, MultiPoly> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    let e = acc.entry(*c).or_insert_with(|| MultiPoly::zero(self.nvars));
                    *e += &(a * b);
                }
            }
            acc.retain(|_, p| !p.is_zero());
            out.rows[r] = acc;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.nvars, self.ncols, self.nrows);
        for (r, c, p) in self.entries() {
            out.rows[c].insert(r, p.clone());
        }
        out
    }

    /// Copies `block` into position `(r0, c0)`, adding to existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.nrows <= self.nrows && c0 + block.ncols <= self.ncols);
        for (r, c, p) in block.entries() {
            self.add_to(r0 + r, c0 + c, p);
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut out = Self::zero(self.nvars, rows.len(), cols.len());
        for (i, r) in rows.iter().enumerate() {
            for (c, p) in &self.rows[*r] {
                if let Some(j) = col_pos.get(c) {
                    out.rows[i].insert(*j, p.clone());
                }
            }
        }
        out
    }

    /// `diag(self, self, ..., self)` with `copies` blocks.
    pub fn block_diagonal_power(&self, copies: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.nrows * copies, self.ncols * copies);
        for k in 0..copies {
            out.add_block(k * self.nrows, k * self.ncols, self);
        }
        out
    }

    /// Checks that entry `(r, c)` is zero or homogeneous of degree
    /// `source_degs[c] - target_degs[r]`.
    pub fn check_graded(&self, source_degs: &[i64], target_degs: &[i64]) -> Result<()> {
        for (r, c, p) in self.entries() {
            let want = source_degs[c] - target_degs[r];
            match p.homogeneous_degree() {
                Some(d) if d as i64 == want => {}
                _ => return Err(Error::NotGraded(format!("entry ({r},{c}) = {p}, expected degree {want}"))),
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.nrows, self.ncols)?;
        for r in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Sparse matrix over the rationals, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<BTreeMap<usize, Q>>,
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, ncols, rows: vec![BTreeMap::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.rows[i].insert(i, Q::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, crate::scalar::qi(*v));
            }
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.rows[r].get(&c).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Q) {
        if v.is_zero() {
            return;
        }
        let e = self.rows[r].entry(c).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.rows[r].remove(&c);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in sparse product");
        let mut out = Self::zero(self.nrows, other.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    out.add_to(r, *c, &(a * b));
                }
            }
        }
        out
    }

    /// The matrix applied to each column vector in `vecs` (dense vectors of
    /// length `ncols`, given sparsely).
    pub fn apply(&self, v: &BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
        let mut out = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = Q::zero();
            for (c, a) in row {
                if let Some(x) = v.get(c) {
                    acc += a * x;
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.rows.iter().cloned()).rank()
    }

    /// Rank and a basis of the right kernel.
    pub fn rank_kernel(&self) -> (usize, Vec<BTreeMap<usize, Q>>) {
        let ech = Echelon::from_rows(self.rows.iter().cloned());
        let rank = ech.rank();
        (rank, ech.kernel(self.ncols))
    }
}

/// Row echelon form built incrementally; each pivot row is normalized to a
/// leading entry of 1 at its pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, BTreeMap<usize, Q>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rows(rows: impl IntoIterator<Item = BTreeMap<usize, Q>>) -> Self {
        let mut e = Self::new();
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The pivot rows, a basis of the row space.
    pub fn rows(&self) -> impl Iterator<Item = &BTreeMap<usize, Q>> {
        self.pivots.values()
    }

    /// Reduces `row` against the current pivots; returns true if it was
    /// independent (and is now a new pivot row).
    pub fn insert(&mut self, mut row: BTreeMap<usize, Q>) -> bool {
        loop {
            let (lead, lc) = match row.iter().next() {
                Some((c, v)) => (*c, v.clone()),
                None => return false,
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    for (c, v) in p {
                        let e = row.entry(*c).or_insert_with(Q::zero);
                        *e -= &lc * v;
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = Q::one() / lc;
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Basis of `{x : A x = 0}` for the rows inserted so far.
    pub fn kernel(&self, ncols: usize) -> Vec<BTreeMap<usize, Q>> {
        // Back-substitute to reduced echelon form.
        let mut reduced: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
        for (p, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let cols: Vec<usize> = r.keys().copied().filter(|c| c != p).collect();
            for c in cols {
                if let Some(prow) = reduced.get(&c) {
                    let f = r.get(&c).cloned().unwrap_or_else(Q::zero);
                    if f.is_zero() {
                        continue;
                    }
                    for (cc, v) in prow {
                        let e = r.entry(*cc).or_insert_with(Q::zero);
                        *e -= &f * v;
                        if e.is_zero() {
                            r.remove(cc);
                        }
                    }
                }
            }
            reduced.insert(*p, r);
        }
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !reduced.contains_key(c)) {
            let mut v = BTreeMap::new();
            v.insert(free, Q::one());
            for (p, row) in &reduced {
                if let Some(x) = row.get(&free) {
                    v.insert(*p, -x.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Monomial basis of a degree slice of a graded free module with the given
/// generator degrees: `(generator, monomial)` pairs plus a lookup table.
pub struct SliceBasis {
    pub elems: Vec<(usize, Monomial)>,
    pub index: HashMap<(usize, Monomial), usize>,
}

impl SliceBasis {
    pub fn new(nvars: usize, gen_degs: &[i64], d: i64) -> Self {
        let mut elems = Vec::new();
        for (g, gd) in gen_degs.iter().enumerate() {
            let k = d - gd;
            if k < 0 {
                continue;
            }
            for m in monomial_basis(nvars, k as u32) {
                elems.push((g, m));
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        SliceBasis { elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// The matrix of a degree-0 graded map restricted to internal degree `d`.
pub fn slice_matrix(m: &PolyMatrix, source_degs: &[i64], target_degs: &[i64], d: i64) -> Result<SparseMat> {
    let src = SliceBasis::new(m.nvars(), source_degs, d);
    let tgt = SliceBasis::new(m.nvars(), target_degs, d);
    slice_with_bases(m, &src, &tgt)
}

pub fn slice_with_bases(m: &PolyMatrix, src: &SliceBasis, tgt: &SliceBasis) -> Result<SparseMat> {
    let mut out = SparseMat::zero(tgt.len(), src.len());
    // column-major view of the polynomial matrix
    let mut by_col: HashMap<usize, Vec<(usize, &MultiPoly)>> = HashMap::new();
    for (r, c, p) in m.entries() {
        by_col.entry(c).or_default().push((r, p));
    }
    for (j, (g, mono)) in src.elems.iter().enumerate() {
        let Some(col) = by_col.get(g) else { continue };
        for (r, p) in col {
            for (pm, c) in p.terms() {
                let key: Monomial = pm.iter().zip(mono).map(|(a, b)| a + b).collect();
                match tgt.index.get(&(*r, key)) {
                    Some(i) => out.add_to(*i, j, c),
                    None => return Err(Error::NotGraded(format!("entry ({r},{g}) = {p} is not homogeneous of the expected degree"))),
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;
    use proptest::prelude::*;

    /// Dense Gaussian elimination over the rationals, used as an oracle.
    fn naive_rank(rows: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|v| qi(*v)).collect()).collect();
        let ncols = a.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for k in 0..ncols {
                        let v = &f * &a[rank][k];
                        a[r][k] -= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_ranks() {
        assert_eq!(SparseMat::from_dense(&[vec![1, 1], vec![1, 1]]).rank(), 1);
        let (r, k) = SparseMat::identity(4).rank_kernel();
        assert_eq!((r, k.len()), (4, 0));
        let (r, k) = SparseMat::from_dense(&[vec![0]]).rank_kernel();
        assert_eq!((r, k.len()), (0, 1));
    }

    #[test]
    fn multiplication_by_variable_slice() {
        // x: k[x]<1> -> k[x]  (source generator in degree 1), slice at degree 3
        let m = PolyMatrix::from_rows(1, vec![vec![MultiPoly::var(1, 0)]]);
        let s = slice_matrix(&m, &[1], &[0], 3).unwrap();
        assert_eq!((s.nrows, s.ncols), (1, 1));
        assert_eq!(s.get(0, 0), qi(1));
        let z = PolyMatrix::zero(2, 2, 3);
        let s = slice_matrix(&z, &[0, 0, 1], &[0, 1], 2).unwrap();
        assert_eq!((s.nrows, s.ncols), (2 + 3, 3 + 3 + 2));
        assert!(s.is_zero());
    }

    #[test]
    fn two_alpha_slices_are_bijective() {
        let two_a = PolyMatrix::from_rows(1, vec![vec![MultiPoly::var(1, 0).scale(&qi(2))]]);
        for d in 1..8 {
            let s = slice_matrix(&two_a, &[1], &[0], d).unwrap();
            assert_eq!((s.nrows, s.ncols, s.rank()), (1, 1, 1));
        }
        let s0 = slice_matrix(&two_a, &[1], &[0], 0).unwrap();
        assert_eq!((s0.nrows, s0.ncols), (1, 0));
    }

    #[test]
    fn ungraded_map_is_rejected() {
        let m = PolyMatrix::from_rows(1, vec![vec![MultiPoly::var(1, 0)]]);
        assert!(slice_matrix(&m, &[0], &[0], 2).is_err());
        assert!(m.check_graded(&[0], &[0]).is_err());
        assert!(m.check_graded(&[1], &[0]).is_ok());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = SparseMat::from_dense(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let (r, ker) = a.rank_kernel();
        assert_eq!(r, 2);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.apply(v).is_empty());
        }
    }

    fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
        // homogeneous linear forms in 2 variables with small coefficients
        (-3i64..4, -3i64..4).prop_map(|(a, b)| MultiPoly::linear(&[qi(a), qi(b)]))
    }

    proptest! {
        #[test]
        fn rank_matches_dense_oracle(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..6)) {
            prop_assert_eq!(SparseMat::from_dense(&rows).rank(), naive_rank(&rows));
        }

        #[test]
        fn slicing_respects_composition(
            a in prop::collection::vec(poly_strategy(), 4),
            b in prop::collection::vec(poly_strategy(), 4),
            d in 0i64..5,
        ) {
            // B: gens deg [2,2] -> [1,1]; A: [1,1] -> [0,0]; all entries linear
            let bm = PolyMatrix::from_rows(2, vec![vec![b[0].clone(), b[1].clone()], vec![b[2].clone(), b[3].clone()]]);
            let am = PolyMatrix::from_rows(2, vec![vec![a[0].clone(), a[1].clone()], vec![a[2].clone(), a[3].clone()]]);
            let ab = am.mul(&bm).unwrap();
            let s_ab = slice_matrix(&ab, &[2, 2], &[0, 0], d).unwrap();
            let s_a = slice_matrix(&am, &[1, 1], &[0, 0], d).unwrap();
            let s_b = slice_matrix(&bm, &[2, 2], &[1, 1], d).unwrap();
            prop_assert_eq!(s_ab, s_a.mul(&s_b));
        }
    }
}
