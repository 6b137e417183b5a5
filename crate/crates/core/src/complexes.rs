//! Complexes of Bott-Samelson bimodules: multi-complexes and their total
//! objects, tensor products, braid complexes and Gaussian elimination.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::BraidWord;
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElt};
use crate::matrix::PolyMatrix;
use crate::soergel::{tensor_map, BSBimodule, BimoduleMap, Soergel};
use crate::scalar::{qi, Q};

/// One direct summand `BS(word)<shift>`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Summand {
    pub word: Vec<usize>,
    pub shift: i64,
}

impl Summand {
    pub fn new(word: Vec<usize>, shift: i64) -> Self {
        Summand { word, shift }
    }

    pub fn dim(&self) -> usize {
        1 << self.word.len()
    }

    pub fn gen_degrees(&self) -> Vec<i64> {
        (0..self.dim()).map(|e| i64::from((e as u32).count_ones()) - self.shift).collect()
    }

    fn tensor(&self, o: &Summand) -> Summand {
        let mut w = self.word.clone();
        w.extend_from_slice(&o.word);
        Summand::new(w, self.shift + o.shift)
    }

    pub fn module(&self, ctx: &Soergel) -> Result<BSBimodule> {
        ctx.bott_samelson(&self.word, self.shift)
    }
}

/// Blocks of a map between formal direct sums, keyed `(target, source)`.
pub type Blocks = BTreeMap<(usize, usize), PolyMatrix>;

fn compose_blocks(after: &Blocks, before: &Blocks) -> Result<Blocks> {
    let mut by_source: BTreeMap<usize, Vec<(usize, &PolyMatrix)>> = BTreeMap::new();
    for (&(t, s), m) in after {
        by_source.entry(s).or_default().push((t, m));
    }
    let mut out: Blocks = BTreeMap::new();
    for (&(mid, src), m1) in before {
        if let Some(list) = by_source.get(&mid) {
            for &(tgt, m2) in list {
                let p = m2.mul(m1)?;
                match out.get_mut(&(tgt, src)) {
                    Some(acc) => *acc = acc.add(&p)?,
                    None => {
                        out.insert((tgt, src), p);
                    }
                }
            }
        }
    }
    out.retain(|_, m| !m.is_zero());
    Ok(out)
}

/// An entry of a multi-complex: a summand together with the multi-index it
/// came from under the total-object functors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Entry {
    pub summand: Summand,
    pub origin: Vec<i64>,
}

/// A `Z^n`-graded object with commuting differentials `d_1..d_n`.
#[derive(Clone, Debug)]
pub struct MultiComplex {
    nvars: usize,
    arity: usize,
    terms: BTreeMap<Vec<i64>, Vec<Entry>>,
    /// `diffs[i][pos]`: blocks of `d_i` from `pos` to `pos + e_i`
    diffs: Vec<BTreeMap<Vec<i64>, Blocks>>,
}

fn plus_e(pos: &[i64], i: usize, k: i64) -> Vec<i64> {
    let mut p = pos.to_vec();
    p[i] += k;
    p
}

impl MultiComplex {
    pub fn new(nvars: usize, arity: usize) -> Self {
        MultiComplex { nvars, arity, terms: BTreeMap::new(), diffs: vec![BTreeMap::new(); arity] }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Vec<Entry>> {
        &self.terms
    }

    pub fn entries(&self, pos: &[i64]) -> &[Entry] {
        self.terms.get(pos).map_or(&[], |v| v.as_slice())
    }

    /// Appends a summand at `pos`, returning its index there.
    pub fn push(&mut self, pos: Vec<i64>, summand: Summand) -> usize {
        let origin = pos.clone();
        let v = self.terms.entry(pos).or_default();
        v.push(Entry { summand, origin });
        v.len() - 1
    }

    pub fn set_block(&mut self, i: usize, pos: Vec<i64>, tgt: usize, src: usize, m: PolyMatrix) {
        if !m.is_zero() {
            self.diffs[i].entry(pos).or_default().insert((tgt, src), m);
        }
    }

    pub fn blocks(&self, i: usize, pos: &[i64]) -> Option<&Blocks> {
        self.diffs[i].get(pos)
    }

    /// Checks `d_i^2 = 0` and `d_i d_j = d_j d_i`.
    pub fn validate(&self) -> Result<()> {
        let empty = Blocks::new();
        for pos in self.terms.keys() {
            for i in 0..self.arity {
                for j in i..self.arity {
                    let di = self.diffs[i].get(pos).unwrap_or(&empty);
                    let dj = self.diffs[j].get(pos).unwrap_or(&empty);
                    let dj_after = self.diffs[j].get(&plus_e(pos, i, 1)).unwrap_or(&empty);
                    let di_after = self.diffs[i].get(&plus_e(pos, j, 1)).unwrap_or(&empty);
                    let a = compose_blocks(dj_after, di)?;
                    let b = compose_blocks(di_after, dj)?;
                    let ok = if i == j { a.is_empty() } else { a == b };
                    if !ok {
                        return Err(Error::ShapeMismatch(format!("differentials d{} d{} fail at {:?}", i + 1, j + 1, pos)));
                    }
                }
            }
        }
        Ok(())
    }

    /// The total object along `f : {0..n-1} -> {0..m-1}`.
    pub fn tot(&self, f: &[usize], m: usize) -> Result<MultiComplex> {
        if f.len() != self.arity || f.iter().any(|&v| v >= m) {
            return Err(Error::ShapeMismatch("total-object map has the wrong shape".into()));
        }
        let sigma = |b: &[i64]| -> Vec<i64> {
            let mut a = vec![0i64; m];
            for (k, &bk) in b.iter().enumerate() {
                a[f[k]] += bk;
            }
            a
        };
        let mut out = MultiComplex::new(self.nvars, m);
        // offsets of each source position inside its target component
        let mut place: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for (b, entries) in &self.terms {
            let a = sigma(b);
            let list = out.terms.entry(a).or_default();
            place.insert(b.clone(), list.len());
            list.extend(entries.iter().cloned());
        }
        for (j, dj) in self.diffs.iter().enumerate() {
            let i = f[j];
            for (b, blocks) in dj {
                let Some(&src_off) = place.get(b) else { continue };
                let tgt_pos = plus_e(b, j, 1);
                let Some(&tgt_off) = place.get(&tgt_pos) else { continue };
                let exp: i64 = (0..j).filter(|&k| f[k] == i).map(|k| b[k]).sum();
                let a = sigma(b);
                let entry = out.diffs[i].entry(a).or_default();
                for (&(t, s), mat) in blocks {
                    let mat = if exp.rem_euclid(2) == 1 { mat.scale(&qi(-1)) } else { mat.clone() };
                    let key = (t + tgt_off, s + src_off);
                    match entry.get_mut(&key) {
                        Some(acc) => *acc = acc.add(&mat)?,
                        None => {
                            entry.insert(key, mat);
                        }
                    }
                }
            }
        }
        for d in &mut out.diffs {
            for blocks in d.values_mut() {
                blocks.retain(|_, m| !m.is_zero());
            }
        }
        Ok(out)
    }

    /// `X (x)_P Y` as an `(n + m)`-complex with commuting differentials
    /// `d_X (x) 1` and `1 (x) d_Y`.
    pub fn tensor(ctx: &Soergel, x: &MultiComplex, y: &MultiComplex) -> Result<MultiComplex> {
        if x.nvars != y.nvars || x.nvars != ctx.nvars() {
            return Err(Error::RealizationMismatch);
        }
        let n = x.arity;
        let mut out = MultiComplex::new(x.nvars, n + y.arity);
        for (p, xe) in &x.terms {
            for (q, ye) in &y.terms {
                let pos: Vec<i64> = p.iter().chain(q.iter()).cloned().collect();
                let list = out.terms.entry(pos).or_default();
                for a in xe {
                    for b in ye {
                        let origin = a.origin.iter().chain(b.origin.iter()).cloned().collect();
                        list.push(Entry { summand: a.summand.tensor(&b.summand), origin });
                    }
                }
            }
        }
        let modules = |e: &[Entry]| -> Result<Vec<BSBimodule>> { e.iter().map(|v| v.summand.module(ctx)).collect() };
        for (p, xe) in &x.terms {
            let xm = modules(xe)?;
            for (q, ye) in &y.terms {
                let ym = modules(ye)?;
                let pos: Vec<i64> = p.iter().chain(q.iter()).cloned().collect();
                let ny = ye.len();
                // d_X (x) id_Y
                for i in 0..n {
                    let Some(blocks) = x.diffs[i].get(p) else { continue };
                    let txe = x.entries(&plus_e(p, i, 1));
                    let txm = modules(txe)?;
                    for (&(t, s), mat) in blocks {
                        for (yi, yb) in ym.iter().enumerate() {
                            let f = BimoduleMap { source: xm[s].clone(), target: txm[t].clone(), matrix: mat.clone() };
                            let g = BimoduleMap::identity(yb);
                            let h = tensor_map(ctx, &f, &g)?;
                            out.set_block(i, pos.clone(), t * ny + yi, s * ny + yi, h.matrix);
                        }
                    }
                }
                // id_X (x) d_Y
                for i in 0..y.arity {
                    let Some(blocks) = y.diffs[i].get(q) else { continue };
                    let tye = y.entries(&plus_e(q, i, 1));
                    let tym = modules(tye)?;
                    let nty = tye.len();
                    for (&(t, s), mat) in blocks {
                        for (xi, xb) in xm.iter().enumerate() {
                            let f = BimoduleMap::identity(xb);
                            let g = BimoduleMap { source: ym[s].clone(), target: tym[t].clone(), matrix: mat.clone() };
                            let h = tensor_map(ctx, &f, &g)?;
                            out.set_block(n + i, pos.clone(), xi * nty + t, xi * ny + s, h.matrix);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `epsilon(c) = sum c_l c_l'` over pairs `l < l'` inverted by `f` and
/// identified by `g f`.
pub fn epsilon_sign(c: &[i64], f: &[usize], g: &[usize]) -> i64 {
    let mut e = 0;
    for l in 0..c.len() {
        for lp in (l + 1)..c.len() {
            if f[l] > f[lp] && g[f[l]] == g[f[lp]] {
                e += c[l] * c[lp];
            }
        }
    }
    e
}

/// A bounded cochain complex of formal sums of Bott-Samelson bimodules with
/// degree-zero differentials `d^j : C^j -> C^{j+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BimoduleComplex {
    nvars: usize,
    terms: BTreeMap<i64, Vec<Summand>>,
    #[serde(with = "diff_serde")]
    diff: BTreeMap<i64, Blocks>,
}

mod diff_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<i64, Blocks>, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|(j, b)| (j, b.iter().collect::<Vec<_>>())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<i64, Blocks>, D::Error> {
        let v: Vec<(i64, Vec<((usize, usize), PolyMatrix)>)> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|(j, b)| (j, b.into_iter().collect())).collect())
    }
}

impl BimoduleComplex {
    pub fn zero(nvars: usize) -> Self {
        BimoduleComplex { nvars, terms: BTreeMap::new(), diff: BTreeMap::new() }
    }

    /// `[P]` in degree 0.
    pub fn unit(nvars: usize) -> Self {
        let mut c = Self::zero(nvars);
        c.terms.insert(0, vec![Summand::new(vec![], 0)]);
        c
    }

    /// `F_s = theta_s<1> -> P<1>` (degrees 0, 1) or
    /// `F_s^{-1} = P<-1> -> theta_s` (degrees -1, 0).
    pub fn elementary(ctx: &Soergel, s: usize, sign: i8) -> Result<Self> {
        let n = ctx.nvars();
        if s >= n {
            return Err(Error::GeneratorOutOfRange(s as i64 + 1, n));
        }
        let mut c = Self::zero(n);
        if sign > 0 {
            c.terms.insert(0, vec![Summand::new(vec![s], 1)]);
            c.terms.insert(1, vec![Summand::new(vec![], 1)]);
            let m = ctx.map_mult(&[], s, 1)?;
            c.diff.entry(0).or_default().insert((0, 0), m.matrix);
        } else {
            c.terms.insert(-1, vec![Summand::new(vec![], -1)]);
            c.terms.insert(0, vec![Summand::new(vec![s], 0)]);
            let e = ctx.map_eta(&[], s, 0)?;
            c.diff.entry(-1).or_default().insert((0, 0), e.matrix);
        }
        Ok(c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn summands(&self, j: i64) -> &[Summand] {
        self.terms.get(&j).map_or(&[], |v| v.as_slice())
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.iter().filter(|(_, v)| !v.is_empty()).map(|(j, _)| *j)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|v| v.is_empty())
    }

    pub fn num_summands(&self) -> usize {
        self.terms.values().map(|v| v.len()).sum()
    }

    /// Total left rank of all terms.
    pub fn total_rank(&self) -> usize {
        self.terms.values().flatten().map(|s| s.dim()).sum()
    }

    pub fn blocks(&self, j: i64) -> Option<&Blocks> {
        self.diff.get(&j)
    }

    /// Generator degrees of `C^j`, concatenated over summands.
    pub fn gen_degrees(&self, j: i64) -> Vec<i64> {
        self.summands(j).iter().flat_map(|s| s.gen_degrees()).collect()
    }

    fn offsets(&self, j: i64) -> Vec<usize> {
        let mut off = vec![0];
        for s in self.summands(j) {
            off.push(off.last().unwrap() + s.dim());
        }
        off
    }

    /// `d^j` as a single matrix over the left bases.
    pub fn differential(&self, j: i64) -> PolyMatrix {
        let src = self.offsets(j);
        let tgt = self.offsets(j + 1);
        let mut m = PolyMatrix::zero(self.nvars, *tgt.last().unwrap(), *src.last().unwrap());
        if let Some(blocks) = self.diff.get(&j) {
            for (&(t, s), b) in blocks {
                m.add_block(tgt[t], src[s], b);
            }
        }
        m
    }

    /// Block-diagonal right action of `x_r` on `C^j`.
    pub fn right_action(&self, ctx: &Soergel, j: i64, r: usize) -> Result<PolyMatrix> {
        let off = self.offsets(j);
        let mut m = PolyMatrix::zero(self.nvars, *off.last().unwrap(), *off.last().unwrap());
        for (k, s) in self.summands(j).iter().enumerate() {
            let ra = ctx.right_action(&s.word)?;
            m.add_block(off[k], off[k], &ra[r]);
        }
        Ok(m)
    }

    /// Checks `d^2 = 0` and that each block is graded of degree 0.
    pub fn validate(&self) -> Result<()> {
        for (&j, blocks) in &self.diff {
            for (&(t, s), b) in blocks {
                let src = &self.summands(j)[s];
                let tgt = &self.summands(j + 1)[t];
                b.check_graded(&src.gen_degrees(), &tgt.gen_degrees())?;
            }
            if let Some(next) = self.diff.get(&(j + 1)) {
                if !compose_blocks(next, blocks)?.is_empty() {
                    return Err(Error::ShapeMismatch(format!("d^2 != 0 at degree {j}")));
                }
            }
        }
        Ok(())
    }

    /// Checks that every block is a bimodule map.
    pub fn validate_bimodule_maps(&self, ctx: &Soergel) -> Result<()> {
        for (&j, blocks) in &self.diff {
            for (&(t, s), b) in blocks {
                let src = self.summands(j)[s].module(ctx)?;
                let tgt = self.summands(j + 1)[t].module(ctx)?;
                BimoduleMap::new(src, tgt, b.clone())?;
            }
        }
        Ok(())
    }

    pub fn to_multi(&self) -> MultiComplex {
        let mut m = MultiComplex::new(self.nvars, 1);
        for (&j, v) in &self.terms {
            for s in v {
                m.push(vec![j], s.clone());
            }
        }
        for (&j, blocks) in &self.diff {
            for (&(t, s), b) in blocks {
                m.set_block(0, vec![j], t, s, b.clone());
            }
        }
        m
    }

    pub fn from_multi(m: &MultiComplex) -> Result<Self> {
        if m.arity() != 1 {
            return Err(Error::ShapeMismatch("expected a simple complex".into()));
        }
        let mut c = Self::zero(m.nvars());
        for (pos, entries) in m.terms() {
            c.terms.insert(pos[0], entries.iter().map(|e| e.summand.clone()).collect());
        }
        for (pos, blocks) in &m.diffs[0] {
            if !blocks.is_empty() {
                c.diff.insert(pos[0], blocks.clone());
            }
        }
        Ok(c)
    }

    /// `C<n>`.
    pub fn shift_internal(&self, n: i64) -> Self {
        let mut c = self.clone();
        for v in c.terms.values_mut() {
            for s in v {
                s.shift += n;
            }
        }
        c
    }

    /// `C[n]`: `C[n]^j = C^{j+n}`, differential scaled by `(-1)^n`.
    pub fn shift_cohomological(&self, n: i64) -> Self {
        let sign = if n.rem_euclid(2) == 1 { qi(-1) } else { qi(1) };
        BimoduleComplex {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(j, v)| (j - n, v.clone())).collect(),
            diff: self
                .diff
                .iter()
                .map(|(j, b)| (j - n, b.iter().map(|(k, m)| (*k, m.scale(&sign))).collect()))
                .collect(),
        }
    }

    /// Class in the Hecke algebra: `sum (-1)^j q^n [theta_w]`.
    pub fn character(&self, hecke: &HeckeAlgebra) -> HeckeElt {
        let mut h = HeckeElt::zero();
        for (&j, v) in &self.terms {
            for s in v {
                h = h.add(&hecke.character(&s.word, s.shift, j));
            }
        }
        h
    }

    /// Sorted `(word length, shift, degree)` data of all summands.
    pub fn summand_profile(&self) -> Vec<(usize, i64, i64)> {
        let mut v: Vec<_> = self.terms.iter().flat_map(|(&j, v)| v.iter().map(move |s| (s.word.len(), s.shift, j))).collect();
        v.sort();
        v
    }

    fn prune(&mut self) {
        self.terms.retain(|_, v| !v.is_empty());
        self.diff.retain(|_, b| {
            b.retain(|_, m| !m.is_zero());
            !b.is_empty()
        });
    }

    /// Removes summand `a` of `C^j` and `b` of `C^{j+1}` joined by the unit
    /// `c * id`, correcting `d^j` by the zig-zag term.
    fn cancel(&mut self, j: i64, a: usize, b: usize, c: &Q) -> Result<()> {
        let inv = Q::one() / c;
        let blocks = self.diff.remove(&j).unwrap_or_default();
        let into_a: Vec<(usize, PolyMatrix)> =
            blocks.iter().filter(|((t, s), _)| *s == a && *t != b).map(|((t, _), m)| (*t, m.clone())).collect();
        let from_b: Vec<(usize, PolyMatrix)> =
            blocks.iter().filter(|((t, s), _)| *t == b && *s != a).map(|((_, s), m)| (*s, m.clone())).collect();
        let mut new: Blocks = BTreeMap::new();
        for ((t, s), m) in blocks {
            if t != b && s != a {
                new.insert((t, s), m);
            }
        }
        for (y, gamma) in &into_a {
            for (x, beta) in &from_b {
                let corr = gamma.mul(beta)?.scale(&inv);
                let key = (*y, *x);
                let val = match new.remove(&key) {
                    Some(m) => m.sub(&corr)?,
                    None => corr.scale(&qi(-1)),
                };
                if !val.is_zero() {
                    new.insert(key, val);
                }
            }
        }
        let reindex = |i: usize, gone: usize| if i > gone { i - 1 } else { i };
        self.diff.insert(j, new.into_iter().map(|((t, s), m)| ((reindex(t, b), reindex(s, a)), m)).collect());
        if let Some(prev) = self.diff.remove(&(j - 1)) {
            let p = prev.into_iter().filter(|((t, _), _)| *t != a).map(|((t, s), m)| ((reindex(t, a), s), m)).collect();
            self.diff.insert(j - 1, p);
        }
        if let Some(next) = self.diff.remove(&(j + 1)) {
            let n = next.into_iter().filter(|((_, s), _)| *s != b).map(|((t, s), m)| ((t, reindex(s, b)), m)).collect();
            self.diff.insert(j + 1, n);
        }
        self.terms.get_mut(&j).unwrap().remove(a);
        self.terms.get_mut(&(j + 1)).unwrap().remove(b);
        self.prune();
        Ok(())
    }

    fn find_unit(&self) -> Option<(i64, usize, usize, Q)> {
        for (&j, blocks) in &self.diff {
            for (&(t, s), m) in blocks {
                if self.summands(j)[s] == self.summands(j + 1)[t] {
                    if let Some(c) = m.as_scalar_identity() {
                        if !c.is_zero() {
                            return Some((j, s, t, c));
                        }
                    }
                }
            }
        }
        None
    }

    /// Cancels unit blocks between identical summands until none remain.
    pub fn gauss_eliminate(&self) -> Result<Self> {
        let mut c = self.clone();
        while let Some((j, a, b, unit)) = c.find_unit() {
            c.cancel(j, a, b, &unit)?;
        }
        Ok(c)
    }

    /// Replaces each summand `BS(w s s)<n>` by `BS(w s)<n> (+) BS(w s)<n-1>`.
    pub fn split_repeats(&self, ctx: &Soergel) -> Result<Self> {
        let mut c = self.clone();
        let degrees: Vec<i64> = c.terms.keys().cloned().collect();
        for j in degrees {
            let mut idx = 0;
            while idx < c.summands(j).len() {
                let w = c.summands(j)[idx].word.clone();
                let k = w.len();
                if k >= 2 && w[k - 1] == w[k - 2] {
                    c.split_one(ctx, j, idx)?;
                    idx += 2;
                } else {
                    idx += 1;
                }
            }
        }
        Ok(c)
    }

    fn split_one(&mut self, ctx: &Soergel, j: i64, idx: usize) -> Result<()> {
        let old = self.summands(j)[idx].clone();
        let k = old.word.len();
        let s = old.word[k - 1];
        let [i1, i2, p1, p2] = ctx.split_maps(&old.word[..k - 2], s)?;
        let short = Summand::new(old.word[..k - 1].to_vec(), old.shift);
        let low = Summand::new(short.word.clone(), old.shift - 1);
        // new indices: idx -> short, idx + 1 -> low, later ones move up by one
        let bump = |i: usize| if i > idx { i + 1 } else { i };
        if let Some(inc) = self.diff.remove(&(j - 1)) {
            let mut out = Blocks::new();
            for ((t, s2), m) in inc {
                if t == idx {
                    out.insert((idx, s2), p1.mul(&m)?);
                    out.insert((idx + 1, s2), p2.mul(&m)?);
                } else {
                    out.insert((bump(t), s2), m);
                }
            }
            out.retain(|_, m| !m.is_zero());
            self.diff.insert(j - 1, out);
        }
        if let Some(outg) = self.diff.remove(&j) {
            let mut out = Blocks::new();
            for ((t, s2), m) in outg {
                if s2 == idx {
                    out.insert((t, idx), m.mul(&i1)?);
                    out.insert((t, idx + 1), m.mul(&i2)?);
                } else {
                    out.insert((t, bump(s2)), m);
                }
            }
            out.retain(|_, m| !m.is_zero());
            self.diff.insert(j, out);
        }
        let v = self.terms.get_mut(&j).unwrap();
        v[idx] = short;
        v.insert(idx + 1, low);
        Ok(())
    }
}

/// `C (x)_P D`, totalized with the sign `(-1)^{deg C}` on `1 (x) d_D`.
pub fn tensor_complexes(ctx: &Soergel, c: &BimoduleComplex, d: &BimoduleComplex) -> Result<BimoduleComplex> {
    if c.nvars != d.nvars {
        return Err(Error::RealizationMismatch);
    }
    let two = MultiComplex::tensor(ctx, &c.to_multi(), &d.to_multi())?;
    BimoduleComplex::from_multi(&two.tot(&[0, 0], 1)?)
}

/// The braid complex of a braid word, folded left to right; with
/// `minimize` each crossing is followed by splitting and elimination.
pub fn braid_complex(ctx: &Soergel, b: &BraidWord, minimize: bool) -> Result<BimoduleComplex> {
    b.validate(ctx.nvars())?;
    let mut c = BimoduleComplex::unit(ctx.nvars());
    for l in &b.letters {
        let f = BimoduleComplex::elementary(ctx, l.gen, l.sign)?;
        c = tensor_complexes(ctx, &c, &f)?;
        if minimize {
            c = c.split_repeats(ctx)?.gauss_eliminate()?;
        }
        log::debug!("after {:?}: {} summands", l, c.num_summands());
    }
    debug_assert!(c.validate().is_ok());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::PolyMatrix;
    use crate::poly::MultiPoly;
    use crate::realization::Realization;
    use rand::{Rng, SeedableRng};

    fn ctx(tag: &str) -> Soergel {
        Soergel::new(&Realization::standard(&tag.parse().unwrap()).unwrap())
    }

    fn word(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn elementary_shapes() {
        let c = ctx("A1");
        let f = braid_complex(&c, &word("1"), true).unwrap();
        assert_eq!(f.summands(0), &[Summand::new(vec![0], 1)]);
        assert_eq!(f.summands(1), &[Summand::new(vec![], 1)]);
        f.validate().unwrap();
        let g = braid_complex(&c, &word("-1"), true).unwrap();
        assert_eq!(g.summands(-1), &[Summand::new(vec![], -1)]);
        assert_eq!(g.summands(0), &[Summand::new(vec![0], 0)]);
        g.validate_bimodule_maps(&c).unwrap();
    }

    #[test]
    fn unit_is_neutral() {
        let c = ctx("A2");
        let f = braid_complex(&c, &word("1 -2"), false).unwrap();
        let u = BimoduleComplex::unit(2);
        assert_eq!(tensor_complexes(&c, &f, &u).unwrap(), f);
        assert_eq!(tensor_complexes(&c, &u, &f).unwrap(), f);
    }

    #[test]
    fn unminimized_product_has_four_terms() {
        let c = ctx("A1");
        let f = braid_complex(&c, &word("1 -1"), false).unwrap();
        assert_eq!(f.num_summands(), 4);
        assert_eq!(f.summands(-1).len(), 1);
        assert_eq!(f.summands(0).len(), 2);
        assert_eq!(f.summands(1).len(), 1);
        f.validate().unwrap();
        f.validate_bimodule_maps(&c).unwrap();
    }

    #[test]
    fn inverse_pair_minimizes_to_unit() {
        for tag in ["A1", "A2", "B2"] {
            let c = ctx(tag);
            let f = braid_complex(&c, &word("1 -1"), true).unwrap();
            assert_eq!(f, BimoduleComplex::unit(c.nvars()), "{tag}");
            let g = braid_complex(&c, &word("-1 1"), true).unwrap();
            assert_eq!(g, BimoduleComplex::unit(c.nvars()), "{tag}");
        }
    }

    #[test]
    fn identity_differential_cancels() {
        let mut c = BimoduleComplex::zero(1);
        c.terms.insert(0, vec![Summand::new(vec![], 0)]);
        c.terms.insert(1, vec![Summand::new(vec![], 0)]);
        c.diff.entry(0).or_default().insert((0, 0), PolyMatrix::identity(1, 1));
        assert!(c.gauss_eliminate().unwrap().is_zero());
    }

    #[test]
    fn braid_relation_profiles_agree() {
        let c = ctx("A2");
        let a = braid_complex(&c, &word("1 2 1"), true).unwrap();
        let b = braid_complex(&c, &word("2 1 2"), true).unwrap();
        assert_eq!(a.summand_profile(), b.summand_profile());
        a.validate_bimodule_maps(&c).unwrap();
    }

    #[test]
    fn minimized_words_stay_valid() {
        let c = ctx("A2");
        for w in ["1 1", "1 1 1", "1 2 -1", "-1 -1 2", "1 2 1 2", "1 -2 1 -2"] {
            let f = braid_complex(&c, &word(w), true).unwrap();
            f.validate().unwrap();
            f.validate_bimodule_maps(&c).unwrap();
        }
    }

    #[test]
    fn character_is_hecke_image() {
        let real = Realization::standard(&"A2".parse().unwrap()).unwrap();
        let c = Soergel::new(&real);
        let h = HeckeAlgebra::new(&real);
        for w in ["1", "-1", "1 1", "1 2 -1", "-2 -1 -2 1"] {
            for min in [false, true] {
                let f = braid_complex(&c, &word(w), min).unwrap();
                assert_eq!(f.character(&h), h.braid_image(&word(w)).unwrap(), "{w} {min}");
            }
        }
    }

    #[test]
    fn shifts_are_invertible() {
        let c = ctx("A1");
        let f = braid_complex(&c, &word("1 1"), true).unwrap();
        assert_eq!(f.shift_internal(1).shift_internal(-1), f);
        assert_eq!(f.shift_cohomological(3).shift_cohomological(-3), f);
        f.shift_cohomological(1).validate().unwrap();
    }

    fn scalar(v: i64) -> PolyMatrix {
        PolyMatrix::scalar_identity(0, 1, &qi(v))
    }

    #[test]
    fn square_of_identities_totalizes() {
        let mut m = MultiComplex::new(0, 2);
        for p in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            m.push(p.to_vec(), Summand::new(vec![], 0));
        }
        m.set_block(0, vec![0, 0], 0, 0, scalar(1));
        m.set_block(0, vec![0, 1], 0, 0, scalar(1));
        m.set_block(1, vec![0, 0], 0, 0, scalar(1));
        m.set_block(1, vec![1, 0], 0, 0, scalar(1));
        m.validate().unwrap();
        let t = m.tot(&[0, 0], 1).unwrap();
        t.validate().unwrap();
        assert_eq!(t.entries(&[1]).len(), 2);
        let same = m.tot(&[0, 1], 2).unwrap();
        assert_eq!(same.terms().len(), 4);
    }

    fn random_scalar(rng: &mut impl Rng, r: usize, c: usize) -> PolyMatrix {
        let rows = (0..r).map(|_| (0..c).map(|_| MultiPoly::constant(0, qi(rng.gen_range(-2..3)))).collect()).collect();
        PolyMatrix::from_rows(0, rows)
    }

    /// `A_1 (x) A_2 (x) A_3` for random two-term complexes of vector spaces.
    fn random_cube(rng: &mut impl Rng) -> MultiComplex {
        let dims: Vec<[usize; 2]> = (0..3).map(|_| [rng.gen_range(1..3), rng.gen_range(1..3)]).collect();
        let phis: Vec<PolyMatrix> = dims.iter().map(|d| random_scalar(rng, d[1], d[0])).collect();
        let mut m = MultiComplex::new(0, 3);
        let cube: Vec<[i64; 3]> = (0..8).map(|k| [k & 1, (k >> 1) & 1, (k >> 2) & 1]).collect();
        for c in &cube {
            let n: usize = (0..3).map(|i| dims[i][c[i] as usize]).product();
            for _ in 0..n {
                m.push(c.to_vec(), Summand::new(vec![], 0));
            }
        }
        // vector index: digits in mixed radix, slot 0 fastest
        let index = |c: &[i64; 3], v: &[usize; 3]| -> usize {
            let mut k = 0;
            for i in (0..3).rev() {
                k = k * dims[i][c[i] as usize] + v[i];
            }
            k
        };
        for c in &cube {
            for i in 0..3 {
                if c[i] == 1 {
                    continue;
                }
                let mut t = *c;
                t[i] = 1;
                let ranges: Vec<usize> = (0..3).map(|k| dims[k][c[k] as usize]).collect();
                for v0 in 0..ranges[0] {
                    for v1 in 0..ranges[1] {
                        for v2 in 0..ranges[2] {
                            let v = [v0, v1, v2];
                            for w in 0..dims[i][1] {
                                let coef = phis[i].get(w, v[i]);
                                if coef.is_zero() {
                                    continue;
                                }
                                let mut u = v;
                                u[i] = w;
                                let mut blk = PolyMatrix::zero(0, 1, 1);
                                blk.set(0, 0, coef);
                                m.set_block(i, c.to_vec(), index(&t, &u), index(c, &v), blk);
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// Matrix of the single differential of a simple complex at `a`, with
    /// rows and columns ordered by origin.
    fn ordered_diff(m: &MultiComplex, a: i64) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, BTreeMap<(usize, usize), Q>) {
        let sort = |p: i64| -> Vec<(usize, Vec<i64>)> {
            let mut v: Vec<_> = m.entries(&[p]).iter().enumerate().map(|(k, e)| (k, e.origin.clone())).collect();
            v.sort_by(|x, y| x.1.cmp(&y.1));
            v
        };
        let src = sort(a);
        let tgt = sort(a + 1);
        let mut out = BTreeMap::new();
        if let Some(b) = m.blocks(0, &[a]) {
            for (&(t, s), mat) in b {
                let r = tgt.iter().position(|x| x.0 == t).unwrap();
                let c = src.iter().position(|x| x.0 == s).unwrap();
                out.insert((r, c), mat.get(0, 0).as_constant().unwrap());
            }
        }
        (src.into_iter().map(|x| x.1).collect(), tgt.into_iter().map(|x| x.1).collect(), out)
    }

    #[test]
    fn composite_totals_agree_up_to_epsilon() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for f in [[1usize, 0, 1], [0, 1, 0], [1, 1, 0], [0, 0, 1]] {
            for _ in 0..4 {
                let x = random_cube(&mut rng);
                x.validate().unwrap();
                let g = [0usize, 0];
                let gf: Vec<usize> = f.iter().map(|&v| g[v]).collect();
                let direct = x.tot(&gf, 1).unwrap();
                let staged = x.tot(&f, 2).unwrap().tot(&g, 1).unwrap();
                direct.validate().unwrap();
                staged.validate().unwrap();
                for a in 0..3 {
                    let (src, tgt, d1) = ordered_diff(&direct, a);
                    let (src2, tgt2, d2) = ordered_diff(&staged, a);
                    assert_eq!(src, src2);
                    assert_eq!(tgt, tgt2);
                    for r in 0..tgt.len() {
                        for c in 0..src.len() {
                            let e = epsilon_sign(&tgt[r], &f, &g) + epsilon_sign(&src[c], &f, &g);
                            let sign = if e % 2 == 0 { qi(1) } else { qi(-1) };
                            let lhs = d1.get(&(r, c)).cloned().unwrap_or_else(Q::zero);
                            let rhs = d2.get(&(r, c)).cloned().unwrap_or_else(Q::zero);
                            assert_eq!(lhs * sign, rhs, "f = {f:?}, degree {a}");
                        }
                    }
                }
            }
        }
    }
}
