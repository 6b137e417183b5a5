//! Hochschild homology of bimodule complexes through the Koszul resolution
//! of `P` over `P^en`, and exact trigraded dimension tables.
//!
//! Row `i` of the Koszul bicomplex of `C` is `Lambda^i (x) C`, with `d2` the
//! contraction `e_r -> x_r - (right action of x_r)` and `d1` induced by the
//! differential of `C`. Homology is taken in the `d2` direction first, then
//! in the `d1` direction.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::BimoduleComplex;
use crate::error::Result;
use crate::hilbert::{hilbert_fit, GradedDims, Numerator};
use crate::elim::{slice_columns, Fp, RowEchelon, SVec};
use crate::matrix::{PolyMatrix, SliceBasis};
use crate::poly::MultiPoly;
use crate::scalar::{qi, Q};
use crate::soergel::Soergel;

/// `Lambda^* (x) C` as a grid of free graded left modules.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulBicomplex {
    nvars: usize,
    /// generator degrees of `K[i][j]`
    degs: BTreeMap<(usize, i64), Vec<i64>>,
    /// `d2 : K[i][j] -> K[i-1][j]`, keyed `(i, j)`, `i >= 1`
    d2: BTreeMap<(usize, i64), PolyMatrix>,
    /// `d1 : K[i][j] -> K[i][j+1]`, keyed `(i, j)`
    d1: BTreeMap<(usize, i64), PolyMatrix>,
}

/// Subsets of `{0..m-1}` of size `i` in lexicographic order.
fn subsets(m: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            if m - v < left {
                break;
            }
            cur.push(v);
            rec(v + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, i, &mut Vec::new(), &mut out);
    out
}

/// Builds the Koszul bicomplex of `c`.
pub fn koszul_hh(ctx: &Soergel, c: &BimoduleComplex) -> Result<KoszulBicomplex> {
    let m = ctx.nvars();
    let mut k = KoszulBicomplex { nvars: m, degs: BTreeMap::new(), d2: BTreeMap::new(), d1: BTreeMap::new() };
    let degrees: Vec<i64> = c.degrees().collect();
    let subs: Vec<Vec<Vec<usize>>> = (0..=m).map(|i| subsets(m, i)).collect();
    for &j in &degrees {
        let base = c.gen_degrees(j);
        let n = base.len();
        let rights: Vec<PolyMatrix> = (0..m).map(|r| c.right_action(ctx, j, r)).collect::<Result<_>>()?;
        let comm: Vec<PolyMatrix> =
            rights.iter().enumerate().map(|(r, rr)| PolyMatrix::diagonal(&MultiPoly::var(m, r), n).sub(rr)).collect::<Result<_>>()?;
        let dj = c.differential(j);
        let has_next = c.summands(j + 1).len() > 0;
        for i in 0..=m {
            let list = &subs[i];
            let degs: Vec<i64> = list.iter().flat_map(|_| base.iter().map(|d| d + i as i64)).collect();
            k.degs.insert((i, j), degs);
            if i >= 1 {
                let lower = &subs[i - 1];
                let index: HashMap<&Vec<usize>, usize> = lower.iter().enumerate().map(|(a, s)| (s, a)).collect();
                let mut d2 = PolyMatrix::zero(m, lower.len() * n, list.len() * n);
                for (col, set) in list.iter().enumerate() {
                    for (pos, &r) in set.iter().enumerate() {
                        let mut rest = set.clone();
                        rest.remove(pos);
                        let row = index[&rest];
                        let blk = if pos % 2 == 0 { comm[r].clone() } else { comm[r].scale(&qi(-1)) };
                        d2.add_block(row * n, col * n, &blk);
                    }
                }
                k.d2.insert((i, j), d2);
            }
            if has_next {
                k.d1.insert((i, j), dj.block_diagonal_power(list.len()));
            }
        }
    }
    Ok(k)
}

impl KoszulBicomplex {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degs(&self, i: usize, j: i64) -> &[i64] {
        self.degs.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }

    pub fn d2(&self, i: usize, j: i64) -> Option<&PolyMatrix> {
        self.d2.get(&(i, j))
    }

    pub fn d1(&self, i: usize, j: i64) -> Option<&PolyMatrix> {
        self.d1.get(&(i, j))
    }

    pub fn columns(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.degs.keys().map(|k| k.1).collect();
        v.dedup();
        v
    }

    /// Total number of generators over all terms.
    pub fn total_rank(&self) -> usize {
        self.degs.values().map(|v| v.len()).sum()
    }

    /// Checks `d1^2 = d2^2 = 0` and `d1 d2 = d2 d1`.
    pub fn validate(&self) -> Result<()> {
        for (&(i, j), a) in &self.d2 {
            if let Some(b) = self.d2.get(&(i - 1, j)).filter(|_| i >= 2) {
                assert!(b.mul(a)?.is_zero(), "d2^2 at ({i},{j})");
            }
            if let (Some(x), Some(y)) = (self.d1.get(&(i, j)), self.d1.get(&(i - 1, j))) {
                if let Some(z) = self.d2.get(&(i, j + 1)) {
                    assert_eq!(z.mul(x)?, y.mul(a)?, "d1 d2 at ({i},{j})");
                }
            }
        }
        for (&(i, j), a) in &self.d1 {
            if let Some(b) = self.d1.get(&(i, j + 1)) {
                assert!(b.mul(a)?.is_zero(), "d1^2 at ({i},{j})");
            }
        }
        Ok(())
    }

    /// Cancels constant entries of `d2` column by column. Each step is a
    /// homotopy equivalence of the column in the `d2` direction; `d1` is
    /// conjugated along, so `H_d1 H_d2` is unchanged.
    pub fn reduce(&self) -> KoszulBicomplex {
        let mut g = Grid::from(self);
        for j in self.columns() {
            g.reduce_column(j, self.nvars);
        }
        g.into_bicomplex(self.nvars)
    }
}

/// Mutable sparse storage with row and column indices.
#[derive(Clone, Default)]
struct Sp {
    rows: HashMap<usize, HashMap<usize, MultiPoly>>,
    cols: HashMap<usize, HashSet<usize>>,
}

impl Sp {
    fn from(m: &PolyMatrix) -> Self {
        let mut s = Sp::default();
        for (r, c, p) in m.entries() {
            s.set(r, c, p.clone());
        }
        s
    }

    fn get(&self, r: usize, c: usize) -> Option<&MultiPoly> {
        self.rows.get(&r).and_then(|row| row.get(&c))
    }

    fn set(&mut self, r: usize, c: usize, p: MultiPoly) {
        if p.is_zero() {
            if let Some(row) = self.rows.get_mut(&r) {
                row.remove(&c);
            }
            if let Some(col) = self.cols.get_mut(&c) {
                col.remove(&r);
            }
        } else {
            self.rows.entry(r).or_default().insert(c, p);
            self.cols.entry(c).or_default().insert(r);
        }
    }

    fn row(&self, r: usize) -> Vec<(usize, MultiPoly)> {
        let mut v: Vec<_> = self.rows.get(&r).map(|row| row.iter().map(|(c, p)| (*c, p.clone())).collect()).unwrap_or_default();
        v.sort_by_key(|x| x.0);
        v
    }

    fn col(&self, c: usize) -> Vec<(usize, MultiPoly)> {
        let mut v: Vec<_> = self
            .cols
            .get(&c)
            .map(|col| col.iter().map(|r| (*r, self.rows[r][&c].clone())).collect())
            .unwrap_or_default();
        v.sort_by_key(|x| x.0);
        v
    }

    fn remove_row(&mut self, r: usize) {
        if let Some(row) = self.rows.remove(&r) {
            for c in row.keys() {
                if let Some(col) = self.cols.get_mut(c) {
                    col.remove(&r);
                }
            }
        }
    }

    fn remove_col(&mut self, c: usize) {
        if let Some(col) = self.cols.remove(&c) {
            for r in col {
                if let Some(row) = self.rows.get_mut(&r) {
                    row.remove(&c);
                }
            }
        }
    }

    fn add_scaled(&mut self, r: usize, c: usize, p: &MultiPoly) {
        let cur = self.get(r, c).cloned().unwrap_or_else(|| MultiPoly::zero(p.nvars()));
        self.set(r, c, &cur + p);
    }

    fn row_len(&self, r: usize) -> usize {
        self.rows.get(&r).map_or(0, |x| x.len())
    }

    fn col_len(&self, c: usize) -> usize {
        self.cols.get(&c).map_or(0, |x| x.len())
    }
}

struct Grid {
    degs: BTreeMap<(usize, i64), Vec<i64>>,
    alive: BTreeMap<(usize, i64), Vec<bool>>,
    d2: BTreeMap<(usize, i64), Sp>,
    d1: BTreeMap<(usize, i64), Sp>,
}

impl Grid {
    fn from(k: &KoszulBicomplex) -> Self {
        Grid {
            degs: k.degs.clone(),
            alive: k.degs.iter().map(|(key, v)| (*key, vec![true; v.len()])).collect(),
            d2: k.d2.iter().map(|(key, m)| (*key, Sp::from(m))).collect(),
            d1: k.d1.iter().map(|(key, m)| (*key, Sp::from(m))).collect(),
        }
    }

    fn find_pivot(&self, i: usize, j: i64) -> Option<(usize, usize, Q)> {
        let sp = self.d2.get(&(i, j))?;
        let mut best: Option<(usize, usize, usize, Q)> = None;
        for (&r, row) in &sp.rows {
            for (&c, p) in row {
                if let Some(v) = p.as_constant() {
                    if v.is_zero() {
                        continue;
                    }
                    let cost = (sp.row_len(r) - 1) * (sp.col_len(c) - 1);
                    let better = match &best {
                        None => true,
                        Some((bc, br, bcol, _)) => (cost, r, c) < (*bc, *br, *bcol),
                    };
                    if better {
                        best = Some((cost, r, c, v));
                    }
                    if cost == 0 {
                        return best.map(|(_, r, c, v)| (r, c, v));
                    }
                }
            }
        }
        best.map(|(_, r, c, v)| (r, c, v))
    }

    fn reduce_column(&mut self, j: i64, m: usize) {
        for i in (1..=m).rev() {
            while let Some((b, a, c)) = self.find_pivot(i, j) {
                self.eliminate(i, j, a, b, &c);
            }
        }
    }

    /// Cancels generator `a` of `K[i][j]` against `b` of `K[i-1][j]`.
    fn eliminate(&mut self, i: usize, j: i64, a: usize, b: usize, c: &Q) {
        let inv = Q::one() / c;
        let sp = self.d2.get_mut(&(i, j)).unwrap();
        let beta: Vec<(usize, MultiPoly)> = sp.row(b).into_iter().filter(|(x, _)| *x != a).collect();
        let gamma: Vec<(usize, MultiPoly)> = sp.col(a).into_iter().filter(|(y, _)| *y != b).collect();
        for (y, gy) in &gamma {
            let gs = gy.scale(&inv);
            for (x, bx) in &beta {
                sp.add_scaled(*y, *x, &-&(&gs * bx));
            }
        }
        sp.remove_row(b);
        sp.remove_col(a);
        if let Some(s) = self.d2.get_mut(&(i + 1, j)) {
            s.remove_row(a);
        }
        if i >= 2 {
            if let Some(s) = self.d2.get_mut(&(i - 1, j)) {
                s.remove_col(b);
            }
        }
        // d1 out of K[i][j]: col x -= col a * beta_x / c
        if let Some(s) = self.d1.get_mut(&(i, j)) {
            let cola = s.col(a);
            for (x, bx) in &beta {
                let f = bx.scale(&inv);
                for (yp, v) in &cola {
                    s.add_scaled(*yp, *x, &-&(v * &f));
                }
            }
            s.remove_col(a);
        }
        if let Some(s) = self.d1.get_mut(&(i - 1, j)) {
            s.remove_col(b);
        }
        // d1 into K[i-1][j]: row y -= gamma_y / c * row b
        if let Some(s) = self.d1.get_mut(&(i - 1, j - 1)) {
            let rowb = s.row(b);
            for (y, gy) in &gamma {
                let f = gy.scale(&inv);
                for (xp, v) in &rowb {
                    s.add_scaled(*y, *xp, &-&(&f * v));
                }
            }
            s.remove_row(b);
        }
        if let Some(s) = self.d1.get_mut(&(i, j - 1)) {
            s.remove_row(a);
        }
        self.alive.get_mut(&(i, j)).unwrap()[a] = false;
        self.alive.get_mut(&(i - 1, j)).unwrap()[b] = false;
    }

    fn into_bicomplex(self, m: usize) -> KoszulBicomplex {
        let renum: BTreeMap<(usize, i64), HashMap<usize, usize>> = self
            .alive
            .iter()
            .map(|(key, v)| (*key, v.iter().enumerate().filter(|(_, a)| **a).enumerate().map(|(new, (old, _))| (old, new)).collect()))
            .collect();
        let size = |key: &(usize, i64)| renum.get(key).map_or(0, |r| r.len());
        let convert = |sp: &Sp, src: (usize, i64), tgt: (usize, i64)| -> PolyMatrix {
            let mut out = PolyMatrix::zero(m, size(&tgt), size(&src));
            let (rs, cs) = (&renum[&tgt], &renum[&src]);
            for (r, row) in &sp.rows {
                for (c, p) in row {
                    if let (Some(nr), Some(nc)) = (rs.get(r), cs.get(c)) {
                        out.set(*nr, *nc, p.clone());
                    }
                }
            }
            out
        };
        let mut k = KoszulBicomplex { nvars: m, degs: BTreeMap::new(), d2: BTreeMap::new(), d1: BTreeMap::new() };
        for (key, v) in &self.degs {
            let al = &self.alive[key];
            k.degs.insert(*key, v.iter().zip(al).filter(|(_, a)| **a).map(|(d, _)| *d).collect());
        }
        for (&(i, j), sp) in &self.d2 {
            k.d2.insert((i, j), convert(sp, (i, j), (i - 1, j)));
        }
        for (&(i, j), sp) in &self.d1 {
            if renum.contains_key(&(i, j + 1)) {
                k.d1.insert((i, j), convert(sp, (i, j), (i, j + 1)));
            }
        }
        k
    }
}

/// Exact dimensions of `H^j(HH_i)_d` for all `d <= cutoff`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriGradedTable {
    pub nvars: usize,
    pub cutoff: i64,
    /// `(i, j, d) -> dimension`, zero entries omitted
    #[serde(with = "crate::entries")]
    pub dims: BTreeMap<(i64, i64, i64), u64>,
}

impl TriGradedTable {
    pub fn new(nvars: usize, cutoff: i64) -> Self {
        TriGradedTable { nvars, cutoff, dims: BTreeMap::new() }
    }

    pub fn get(&self, i: i64, j: i64, d: i64) -> u64 {
        self.dims.get(&(i, j, d)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    /// The same table restricted to `d <= cutoff`.
    pub fn truncate(&self, cutoff: i64) -> Self {
        TriGradedTable {
            nvars: self.nvars,
            cutoff: cutoff.min(self.cutoff),
            dims: self.dims.iter().filter(|(k, _)| k.2 <= cutoff).map(|(k, v)| (*k, *v)).collect(),
        }
    }

    /// Graded dimensions of the `(i, j)` entry.
    pub fn graded(&self, i: i64, j: i64) -> GradedDims {
        let mut g = GradedDims::new(self.cutoff);
        for (&(a, b, d), &v) in &self.dims {
            if a == i && b == j {
                g.dims.insert(d, v);
            }
        }
        g
    }

    /// First `(i, j, d)` where two tables differ, on the common window.
    pub fn first_difference(&self, other: &Self) -> Option<((i64, i64, i64), u64, u64)> {
        let cut = self.cutoff.min(other.cutoff);
        let keys: std::collections::BTreeSet<_> = self.dims.keys().chain(other.dims.keys()).filter(|k| k.2 <= cut).collect();
        keys.into_iter().map(|k| (*k, self.get(k.0, k.1, k.2), other.get(k.0, k.1, k.2))).find(|(_, a, b)| a != b)
    }
}

/// The trigraded table up to internal degree `cutoff`, with slice ranks
/// taken over the prime field of `2^61 - 1`.
pub fn trigraded_dims(k: &KoszulBicomplex, cutoff: i64) -> Result<TriGradedTable> {
    trigraded_dims_over::<Fp>(k, cutoff)
}

/// The same table with every rank computed over the rationals.
pub fn trigraded_dims_exact(k: &KoszulBicomplex, cutoff: i64) -> Result<TriGradedTable> {
    trigraded_dims_over::<Q>(k, cutoff)
}

fn trigraded_dims_over<S: crate::elim::Scalar>(k: &KoszulBicomplex, cutoff: i64) -> Result<TriGradedTable> {
    let mut table = TriGradedTable::new(k.nvars, cutoff);
    let lo = k.degs.values().flatten().copied().min();
    let Some(lo) = lo else { return Ok(table) };
    let ds: Vec<i64> = (lo..=cutoff).collect();
    let per: Vec<Vec<((i64, i64, i64), u64)>> = ds.par_iter().map(|&d| slice_homology::<S>(k, d)).collect::<Result<_>>()?;
    for v in per {
        for (key, n) in v {
            if n > 0 {
                table.dims.insert(key, n);
            }
        }
    }
    Ok(table)
}

/// With `Z = ker d2`, `B = im d2` and `M_j : v -> (d2 v, d1 v)` taken
/// together with `0 (+) B^{j+1}`:
/// `dim H = n_j + b_{j+1} + rk d2|_{j-1} - rk M_j - rk M_{j-1}`, where an
/// absent column `j - 1` contributes `rk M_{j-1} = b_j`.
fn slice_homology<S: crate::elim::Scalar>(k: &KoszulBicomplex, d: i64) -> Result<Vec<((i64, i64, i64), u64)>> {
    let m = k.nvars;
    let cols = k.columns();
    let bases: BTreeMap<(usize, i64), SliceBasis> = k.degs.iter().map(|(key, v)| (*key, SliceBasis::new(m, v, d))).collect();
    let dim = |key: &(usize, i64)| bases.get(key).map_or(0, |b| b.len());
    let mut img: BTreeMap<(usize, i64), RowEchelon<S>> = BTreeMap::new();
    let mut d2s: BTreeMap<(usize, i64), Vec<SVec<S>>> = BTreeMap::new();
    for (&(i, j), d2) in &k.d2 {
        let c = slice_columns::<S>(d2, &bases[&(i, j)], &bases[&(i - 1, j)])?;
        img.insert((i, j), RowEchelon::from_rows(c.iter().cloned()));
        d2s.insert((i, j), c);
    }
    let r2 = |i: usize, j: i64| img.get(&(i, j)).map_or(0, |e| e.rank());
    let mut rm: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for i in 0..=m {
        for &j in &cols {
            let n = dim(&(i, j));
            let off = if i >= 1 { dim(&(i - 1, j)) } else { 0 };
            let d1cols = match (k.d1.get(&(i, j)), bases.get(&(i, j + 1))) {
                (Some(d1), Some(tb)) => Some(slice_columns::<S>(d1, &bases[&(i, j)], tb)?),
                _ => None,
            };
            let mut e = RowEchelon::new();
            if let Some(b) = img.get(&(i + 1, j + 1)) {
                for row in b.rows() {
                    e.insert(row.iter().map(|(c, v)| (c + off, v.clone())).collect());
                }
            }
            let d2c = d2s.get(&(i, j));
            for v in 0..n {
                let mut col: SVec<S> = d2c.map(|c| c[v].clone()).unwrap_or_default();
                if let Some(dc) = &d1cols {
                    col.extend(dc[v].iter().map(|(c, x)| (c + off, x.clone())));
                }
                e.insert(col);
            }
            rm.insert((i, j), e.rank());
        }
    }
    let mut out = Vec::new();
    for i in 0..=m {
        for &j in &cols {
            let h = dim(&(i, j)) + r2(i + 1, j + 1) + r2(i, j - 1) - rm[&(i, j)] - rm.get(&(i, j - 1)).copied().unwrap_or_else(|| r2(i + 1, j));
            out.push(((i as i64, j, d), h as u64));
        }
    }
    Ok(out)
}

/// Hilbert numerator of the `(i, j)` entry over `(1 - q)^m`.
pub fn hh_hilbert(table: &TriGradedTable, i: i64, j: i64, margin: i64) -> Result<Numerator> {
    hilbert_fit(&table.graded(i, j), table.nvars, margin)
}

/// Table of a complex: Koszul bicomplex, reduction, slicing.
pub fn hh_table(ctx: &Soergel, c: &BimoduleComplex, cutoff: i64) -> Result<TriGradedTable> {
    let k = koszul_hh(ctx, c)?.reduce();
    trigraded_dims(&k, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::braid_complex;
    use crate::poly::{binomial, monomial_count};
    use crate::realization::Realization;

    fn ctx(tag: &str) -> Soergel {
        Soergel::new(&Realization::standard(&tag.parse().unwrap()).unwrap())
    }

    fn table(tag: &str, w: &str, cutoff: i64) -> TriGradedTable {
        let c = ctx(tag);
        let f = braid_complex(&c, &w.parse().unwrap(), true).unwrap();
        hh_table(&c, &f, cutoff).unwrap()
    }

    #[test]
    fn trivial_braid_b1() {
        let t = table("A0", "", 5);
        assert_eq!(t.dims, BTreeMap::from([((0, 0, 0), 1)]));
    }

    #[test]
    fn regular_bimodule_closed_form() {
        for (tag, m) in [("A1", 1usize), ("A2", 2)] {
            let t = table(tag, "", 9);
            for i in 0..=m as i64 {
                for d in 0..=9 {
                    let expect = binomial(m as u64, i as u64) * monomial_count(m, d - i);
                    assert_eq!(t.get(i, 0, d), expect, "{tag} {i} {d}");
                }
            }
        }
    }

    #[test]
    fn regular_bimodule_koszul_rows() {
        let c = ctx("A1");
        let k = koszul_hh(&c, &BimoduleComplex::unit(1)).unwrap();
        assert_eq!(k.degs(0, 0), &[0]);
        assert_eq!(k.degs(1, 0), &[1]);
        assert!(k.d2(1, 0).unwrap().is_zero());
    }

    #[test]
    fn theta_commutator() {
        let c = ctx("A1");
        let mut th = BimoduleComplex::unit(1);
        th = crate::complexes::tensor_complexes(&c, &th, &BimoduleComplex::elementary(&c, 0, -1).unwrap()).unwrap();
        let k = koszul_hh(&c, &th).unwrap();
        let d2 = k.d2(1, 0).unwrap();
        let a = MultiPoly::var(1, 0);
        assert_eq!(d2.get(0, 0), a);
        assert_eq!(d2.get(0, 1), -&a.pow(2));
        assert_eq!(d2.get(1, 0), MultiPoly::constant(1, qi(-1)));
        assert_eq!(d2.get(1, 1), a);
        k.validate().unwrap();
    }

    #[test]
    fn sigma_one_is_a_point() {
        let t = table("A1", "1", 8);
        assert_eq!(t.dims, BTreeMap::from([((1, 1, 0), 1)]));
        let u = table("A1", "-1", 8);
        assert_eq!(u.dims, BTreeMap::from([((0, 0, 0), 1)]));
    }

    #[test]
    fn reduction_preserves_tables() {
        let c = ctx("A2");
        for w in ["1 2", "1 1 -2", "1 -2 1"] {
            let f = braid_complex(&c, &w.parse().unwrap(), true).unwrap();
            let k = koszul_hh(&c, &f).unwrap();
            k.validate().unwrap();
            let r = k.reduce();
            assert!(r.total_rank() <= k.total_rank());
            assert_eq!(trigraded_dims(&k, 5).unwrap(), trigraded_dims(&r, 5).unwrap(), "{w}");
        }
    }

    #[test]
    fn hilbert_numerators() {
        let t = table("A1", "", 10);
        assert_eq!(hh_hilbert(&t, 0, 0, 3).unwrap(), BTreeMap::from([(0, 1)]));
        assert_eq!(hh_hilbert(&t, 1, 0, 3).unwrap(), BTreeMap::from([(1, 1)]));
        let s = table("A1", "1", 10);
        assert_eq!(hh_hilbert(&s, 1, 1, 3).unwrap(), BTreeMap::from([(0, 1), (1, -1)]));
    }

    #[test]
    fn modular_tables_match_exact() {
        for (tag, w) in [("A2", "1 -2 1"), ("B2", "1 2 -1"), ("A2", "1 1 2 2")] {
            let c = ctx(tag);
            let f = braid_complex(&c, &w.parse().unwrap(), true).unwrap();
            let k = koszul_hh(&c, &f).unwrap().reduce();
            assert_eq!(trigraded_dims(&k, 4).unwrap(), trigraded_dims_exact(&k, 4).unwrap(), "{tag} {w}");
        }
    }
}
