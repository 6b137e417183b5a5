//! Bott-Samelson bimodules `theta_{s_1} ... theta_{s_k}<n>` as free left
//! `P`-modules with explicit right-action matrices, and the bimodule maps
//! used to build braid complexes.
//!
//! The left basis of a word of length `k` is indexed by `eps in {0,1}^k`,
//! stored as the integer `sum eps_i 2^i`; basis element `eps` is
//! `1 (x) alpha_{s_1}^{eps_1} (x) ... (x) alpha_{s_k}^{eps_k}` and has degree
//! `|eps| - n`. A matrix `F` of a map has `F[target][source]`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElt};
use crate::matrix::PolyMatrix;
use crate::poly::MultiPoly;
use crate::realization::Realization;
use crate::scalar::{q, qi, Q};

/// Shared constructor state: the realization and a cache of right actions.
pub struct Soergel {
    real: Realization,
    cache: Mutex<HashMap<Vec<usize>, Arc<Vec<PolyMatrix>>>>,
}

#[derive(Clone)]
pub struct BSBimodule {
    word: Vec<usize>,
    shift: i64,
    nvars: usize,
    right: Arc<Vec<PolyMatrix>>,
}

impl std::fmt::Debug for BSBimodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BS({:?})<{}>", self.word, self.shift)
    }
}

impl Soergel {
    pub fn new(real: &Realization) -> Self {
        Soergel { real: real.clone(), cache: Mutex::new(HashMap::new()) }
    }

    pub fn realization(&self) -> &Realization {
        &self.real
    }

    pub fn nvars(&self) -> usize {
        self.real.nvars()
    }

    /// Right-action matrices of every variable on `BS(word)`.
    pub fn right_action(&self, word: &[usize]) -> Result<Arc<Vec<PolyMatrix>>> {
        if let Some(r) = self.cache.lock().unwrap().get(word) {
            return Ok(r.clone());
        }
        let m = self.nvars();
        let out = match word.split_last() {
            None => (0..m).map(|r| PolyMatrix::diagonal(&MultiPoly::var(m, r), 1)).collect(),
            Some((&s, prefix)) => {
                if s >= m {
                    return Err(Error::GeneratorOutOfRange(s as i64 + 1, m));
                }
                let base = self.right_action(prefix)?;
                let dim = base[0].nrows();
                let rs = &base[s];
                let rs2 = rs.mul(rs)?;
                let mut mats = Vec::with_capacity(m);
                for r in 0..m {
                    // x_r = a + c alpha_s with a s-invariant
                    let c = q(self.real.cartan(s, r), 2);
                    let ra = base[r].sub(&rs.scale(&c))?;
                    let mut big = PolyMatrix::zero(m, 2 * dim, 2 * dim);
                    big.add_block(0, 0, &ra);
                    big.add_block(dim, dim, &ra);
                    if !c.is_zero() {
                        big.add_block(0, dim, &rs2.scale(&c));
                        big.add_block(dim, 0, &PolyMatrix::scalar_identity(m, dim, &c));
                    }
                    mats.push(big);
                }
                mats
            }
        };
        let arc = Arc::new(out);
        self.cache.lock().unwrap().insert(word.to_vec(), arc.clone());
        Ok(arc)
    }

    pub fn bott_samelson(&self, word: &[usize], shift: i64) -> Result<BSBimodule> {
        Ok(BSBimodule { word: word.to_vec(), shift, nvars: self.nvars(), right: self.right_action(word)? })
    }

    pub fn regular(&self) -> BSBimodule {
        self.bott_samelson(&[], 0).expect("empty word is always valid")
    }

    /// `m : theta_s -> P` on the last factor, tensored on the left with
    /// `BS(prefix)`.
    pub fn map_mult(&self, prefix: &[usize], s: usize, shift: i64) -> Result<BimoduleMap> {
        let b = self.bott_samelson(prefix, shift)?;
        let mut w = prefix.to_vec();
        w.push(s);
        let src = self.bott_samelson(&w, shift)?;
        let matrix = mult_matrix(&b, s);
        BimoduleMap::new(src, b, matrix)
    }

    /// `eta : P<-1> -> theta_s` on the last factor, tensored on the left with
    /// `BS(prefix)`; the target carries the given shift.
    pub fn map_eta(&self, prefix: &[usize], s: usize, shift: i64) -> Result<BimoduleMap> {
        let b = self.bott_samelson(prefix, shift - 1)?;
        let mut w = prefix.to_vec();
        w.push(s);
        let tgt = self.bott_samelson(&w, shift)?;
        let matrix = eta_matrix(&b, s);
        BimoduleMap::new(b, tgt, matrix)
    }

    /// Maps realizing `BS(w s s)<n> = BS(w s)<n> (+) BS(w s)<n-1>`: returns
    /// `(iota1, iota2, pi1, pi2)` with `pi_k iota_l = delta_kl`.
    pub fn split_maps(&self, prefix: &[usize], s: usize) -> Result<[PolyMatrix; 4]> {
        let x = self.bott_samelson(prefix, 0)?;
        split_matrices(&x, s)
    }

    /// Decategorified class in the Hecke algebra.
    pub fn character(&self, hecke: &HeckeAlgebra, word: &[usize], shift: i64, cohdeg: i64) -> HeckeElt {
        hecke.character(word, shift, cohdeg)
    }

    /// `gamma`: the same word viewed in an ambient realization, recomputed
    /// there; `map` sends generators of the small system to ambient ones.
    pub fn gamma_extend(&self, b: &BSBimodule, ambient: &Soergel, map: &[usize]) -> Result<BSBimodule> {
        if map.len() != self.nvars() || map.iter().any(|&g| g >= ambient.nvars()) {
            return Err(Error::IncompatibleRealization("generator map does not fit".into()));
        }
        for s in 0..self.nvars() {
            for t in 0..self.nvars() {
                if self.real.cartan(s, t) != ambient.real.cartan(map[s], map[t]) {
                    return Err(Error::IncompatibleRealization("Cartan data differ on the parabolic".into()));
                }
            }
        }
        let w: Vec<usize> = b.word.iter().map(|&s| map[s]).collect();
        ambient.bott_samelson(&w, b.shift)
    }
}

impl BSBimodule {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        1 << self.word.len()
    }

    pub fn with_shift(&self, shift: i64) -> Self {
        BSBimodule { shift, ..self.clone() }
    }

    /// Degrees `|eps| - n` of the left basis.
    pub fn gen_degrees(&self) -> Vec<i64> {
        (0..self.dim()).map(|e| i64::from((e as u32).count_ones()) - self.shift).collect()
    }

    /// Right action of the variable `x_r`.
    pub fn right(&self, r: usize) -> &PolyMatrix {
        &self.right[r]
    }

    /// Right action of an arbitrary polynomial (evaluated at the commuting
    /// right-action matrices).
    pub fn right_poly(&self, f: &MultiPoly) -> Result<PolyMatrix> {
        let n = self.dim();
        let mut out = PolyMatrix::zero(self.nvars, n, n);
        let mut powers: Vec<Vec<PolyMatrix>> = (0..self.nvars).map(|_| vec![PolyMatrix::identity(self.nvars, n)]).collect();
        for (mono, c) in f.terms() {
            let mut term = PolyMatrix::scalar_identity(self.nvars, n, c);
            for (r, &e) in mono.iter().enumerate() {
                while powers[r].len() <= e as usize {
                    let next = powers[r].last().unwrap().mul(&self.right[r])?;
                    powers[r].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[r][e as usize])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Hilbert numerator of the left graded rank, `q^{-n} (1+q)^k`.
    pub fn rank_numerator(&self) -> std::collections::BTreeMap<i64, i64> {
        let mut num = std::collections::BTreeMap::new();
        for d in self.gen_degrees() {
            *num.entry(d).or_insert(0) += 1;
        }
        num
    }
}

fn mult_matrix(b: &BSBimodule, s: usize) -> PolyMatrix {
    let d = b.dim();
    let m = b.nvars;
    let mut f = PolyMatrix::zero(m, d, 2 * d);
    f.add_block(0, 0, &PolyMatrix::identity(m, d));
    f.add_block(0, d, b.right(s));
    f
}

fn eta_matrix(b: &BSBimodule, s: usize) -> PolyMatrix {
    let d = b.dim();
    let m = b.nvars;
    let mut f = PolyMatrix::zero(m, 2 * d, d);
    f.add_block(0, 0, b.right(s));
    f.add_block(d, 0, &PolyMatrix::identity(m, d));
    f
}

fn split_matrices(x: &BSBimodule, s: usize) -> Result<[PolyMatrix; 4]> {
    let d = x.dim();
    let m = x.nvars;
    let rs = x.right(s);
    let rs2 = rs.mul(rs)?;
    let one = MultiPoly::one(m);
    // index in BS(w s s): v + d e1 + 2d e2; in BS(w s): v + d e
    let mut iota1 = PolyMatrix::zero(m, 4 * d, 2 * d);
    let mut iota2 = PolyMatrix::zero(m, 4 * d, 2 * d);
    let mut pm = PolyMatrix::zero(m, 2 * d, 4 * d);
    let mut pd = PolyMatrix::zero(m, 2 * d, 4 * d);
    for v in 0..d {
        for e in 0..2 {
            iota1.set(v + 2 * d * e, v + d * e, one.clone());
            iota2.set(v + d + 2 * d * e, v + d * e, one.clone());
            pm.set(v + d * e, v + 2 * d * e, one.clone());
            pd.set(v + d * e, v + d + 2 * d * e, MultiPoly::constant(m, qi(2)));
        }
        pm.set(v + d, v + d, one.clone());
    }
    // v (x) alpha (x) alpha -> (v . alpha^2) (x) 1
    pm.add_block(0, 3 * d, &rs2);
    let half = q(1, 2);
    let pm_i2 = pm.mul(&iota2)?;
    let pi1 = pm.sub(&pm_i2.mul(&pd)?.scale(&half))?;
    let pi2 = pd.scale(&half);
    Ok([iota1, iota2, pi1, pi2])
}

/// A degree-zero map of graded bimodules in left-basis coordinates.
#[derive(Clone, Debug)]
pub struct BimoduleMap {
    pub source: BSBimodule,
    pub target: BSBimodule,
    pub matrix: PolyMatrix,
}

impl BimoduleMap {
    /// Builds a map after checking shape, grading and intertwining.
    pub fn new(source: BSBimodule, target: BSBimodule, matrix: PolyMatrix) -> Result<Self> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for a map {} -> {}",
                matrix.nrows(),
                matrix.ncols(),
                source.dim(),
                target.dim()
            )));
        }
        matrix.check_graded(&source.gen_degrees(), &target.gen_degrees())?;
        let f = BimoduleMap { source, target, matrix };
        f.check_intertwining()?;
        Ok(f)
    }

    pub fn check_intertwining(&self) -> Result<()> {
        for r in 0..self.source.nvars {
            let lhs = self.matrix.mul(self.source.right(r))?;
            let rhs = self.target.right(r).mul(&self.matrix)?;
            if lhs != rhs {
                return Err(Error::IntertwiningViolated(format!("variable a{}", r + 1)));
            }
        }
        Ok(())
    }

    pub fn identity(b: &BSBimodule) -> Self {
        BimoduleMap { source: b.clone(), target: b.clone(), matrix: PolyMatrix::identity(b.nvars, b.dim()) }
    }

    /// `g o self`.
    pub fn then(&self, g: &BimoduleMap) -> Result<BimoduleMap> {
        if g.source.word != self.target.word || g.source.shift != self.target.shift {
            return Err(Error::ShapeMismatch("maps are not composable".into()));
        }
        Ok(BimoduleMap { source: self.source.clone(), target: g.target.clone(), matrix: g.matrix.mul(&self.matrix)? })
    }

    pub fn scale(&self, c: &Q) -> Self {
        BimoduleMap { matrix: self.matrix.scale(c), ..self.clone() }
    }
}

/// `f (x) g` over `P`, for maps between Bott-Samelson bimodules.
pub fn tensor_map(ctx: &Soergel, f: &BimoduleMap, g: &BimoduleMap) -> Result<BimoduleMap> {
    let cat = |a: &BSBimodule, b: &BSBimodule| -> Result<BSBimodule> {
        let mut w = a.word.clone();
        w.extend_from_slice(&b.word);
        ctx.bott_samelson(&w, a.shift + b.shift)
    };
    // (f (x) id_{N'}) o (id_M (x) g)
    let m = &f.source;
    let dm = m.dim();
    let (nr, nc) = g.matrix.shape();
    let mut idg = PolyMatrix::zero(m.nvars, dm * nr, dm * nc);
    for (r, c, p) in g.matrix.entries() {
        idg.add_block(r * dm, c * dm, &m.right_poly(p)?);
    }
    let fid = f.matrix.block_diagonal_power(nr);
    let matrix = fid.mul(&idg)?;
    BimoduleMap::new(cat(&f.source, &g.source)?, cat(&f.target, &g.target)?, matrix)
}
