//! Hecke algebra of a finite Coxeter group in the `T_w` basis, with the
//! quadratic relation `(T_s - 1)(T_s + q) = 0`, and the Ocneanu trace in
//! type A.
//!
//! Group elements are the integer matrices of their action on `V*` in the
//! root basis; `l(ws) > l(w)` iff `w(alpha_s)` is a positive root.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::coxeter::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::{Laurent, RationalSeries};
use crate::realization::Realization;

/// Integer Laurent polynomial in `q`.
pub type QPoly = Laurent<i64, 1>;

/// Trace values: rational functions in `(u, t)` with `u = q^{-1}`, denominators
/// powers of `1 - u`.
pub type TraceValue = RationalSeries<i64, 2>;

pub fn qpow(n: i64) -> QPoly {
    QPoly::monomial([n], 1)
}

/// A Weyl group element as a flattened `n x n` integer matrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct WElt(Vec<i64>);

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct HeckeElt {
    terms: BTreeMap<WElt, QPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WElt, &QPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: WElt, c: &QPoly) {
        let e = self.terms.entry(w.clone()).or_default();
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&QPoly::constant(-1)))
    }

    pub fn scale(&self, c: &QPoly) -> Self {
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &(v * c));
        }
        out
    }

    pub fn coeff(&self, w: &WElt) -> QPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }
}

/// The Hecke algebra `H_(W,S)` of a finite crystallographic system.
pub struct HeckeAlgebra {
    n: usize,
    gens: Vec<Vec<i64>>,
    /// memoised reduced words, keyed by element
    words: Mutex<BTreeMap<WElt, Vec<usize>>>,
    type_a: bool,
}

impl HeckeAlgebra {
    pub fn new(real: &Realization) -> Self {
        let n = real.nvars();
        let gens = (0..n).map(|s| real.dual_matrix(s).into_iter().flatten().collect()).collect();
        HeckeAlgebra { n, gens, words: Mutex::new(BTreeMap::new()), type_a: real.system().type_a_rank().is_some() }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> WElt {
        let mut m = vec![0i64; self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = 1;
        }
        WElt(m)
    }

    fn matmul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.n;
        let mut c = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let v = a[i * n + k];
                if v != 0 {
                    for j in 0..n {
                        c[i * n + j] += v * b[k * n + j];
                    }
                }
            }
        }
        c
    }

    /// `w * s`.
    pub fn times_gen(&self, w: &WElt, s: usize) -> WElt {
        WElt(self.matmul(&w.0, &self.gens[s]))
    }

    /// `s * w`.
    pub fn gen_times(&self, s: usize, w: &WElt) -> WElt {
        WElt(self.matmul(&self.gens[s], &w.0))
    }

    /// Column `s` of `w`: positive iff `l(ws) > l(w)`.
    fn raises_right(&self, w: &WElt, s: usize) -> bool {
        let n = self.n;
        (0..n).any(|i| w.0[i * n + s] > 0)
    }

    /// `l(sw) > l(w)` iff `w^{-1}(alpha_s) > 0`; equivalently row `s` of
    /// `w` read through the inverse, tested via `sw` column signs.
    fn raises_left(&self, s: usize, w: &WElt) -> bool {
        // l(sw) = l(w^{-1} s); use the inverse element
        let inv = self.inverse(w);
        self.raises_right(&inv, s)
    }

    pub fn inverse(&self, w: &WElt) -> WElt {
        let word = self.reduced_word(w);
        let mut out = self.identity();
        for &s in word.iter().rev() {
            out = self.times_gen(&out, s);
        }
        out
    }

    /// A reduced word `s_1 ... s_k` with `w = s_1 ... s_k`.
    pub fn reduced_word(&self, w: &WElt) -> Vec<usize> {
        if let Some(v) = self.words.lock().unwrap().get(w) {
            return v.clone();
        }
        let mut rev = Vec::new();
        let mut cur = w.clone();
        'outer: loop {
            for s in 0..self.n {
                if !self.raises_right(&cur, s) {
                    rev.push(s);
                    cur = self.times_gen(&cur, s);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        self.words.lock().unwrap().insert(w.clone(), rev.clone());
        rev
    }

    pub fn length(&self, w: &WElt) -> usize {
        self.reduced_word(w).len()
    }

    pub fn element(&self, word: &[usize]) -> WElt {
        word.iter().fold(self.identity(), |w, &s| self.times_gen(&w, s))
    }

    pub fn one(&self) -> HeckeElt {
        self.basis(self.identity())
    }

    pub fn basis(&self, w: WElt) -> HeckeElt {
        let mut h = HeckeElt::zero();
        h.add_term(w, &QPoly::one());
        h
    }

    /// `T_s`.
    pub fn t(&self, s: usize) -> HeckeElt {
        self.basis(self.gens_elt(s))
    }

    fn gens_elt(&self, s: usize) -> WElt {
        WElt(self.gens[s].clone())
    }

    /// `T_s^{-1} = q^{-1} T_s + 1 - q^{-1}`.
    pub fn t_inv(&self, s: usize) -> HeckeElt {
        let mut h = self.t(s).scale(&qpow(-1));
        h.add_term(self.identity(), &(&QPoly::one() - &qpow(-1)));
        h
    }

    /// `h * T_s`.
    pub fn mul_gen(&self, h: &HeckeElt, s: usize) -> HeckeElt {
        let mut out = HeckeElt::zero();
        let one_minus_q = &QPoly::one() - &qpow(1);
        for (w, c) in h.terms() {
            let ws = self.times_gen(w, s);
            if self.raises_right(w, s) {
                out.add_term(ws, c);
            } else {
                out.add_term(w.clone(), &(c * &one_minus_q));
                out.add_term(ws, &(c * &qpow(1)));
            }
        }
        out
    }

    pub fn mul(&self, x: &HeckeElt, y: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, c) in y.terms() {
            let mut part = x.scale(c);
            for s in self.reduced_word(w) {
                part = self.mul_gen(&part, s);
            }
            out = out.add(&part);
        }
        out
    }

    /// `prod T_{s_i}^{eps_i}` for a braid word.
    pub fn braid_image(&self, b: &BraidWord) -> Result<HeckeElt> {
        b.validate(self.n)?;
        let mut h = self.one();
        for l in &b.letters {
            let g = if l.sign > 0 { self.t(l.gen) } else { self.t_inv(l.gen) };
            h = self.mul(&h, &g);
        }
        Ok(h)
    }

    /// `q^shift (-1)^cohdeg prod (q^{-1} T_{s_i} + 1)`.
    pub fn character(&self, word: &[usize], shift: i64, cohdeg: i64) -> HeckeElt {
        let mut h = self.one();
        for &s in word {
            let mut f = self.t(s).scale(&qpow(-1));
            f.add_term(self.identity(), &QPoly::one());
            h = self.mul(&h, &f);
        }
        let sign = if cohdeg.rem_euclid(2) == 0 { 1 } else { -1 };
        h.scale(&QPoly::monomial([shift], sign))
    }

    /// The Ocneanu trace in type A, normalized by `tau(1) = 1` on the
    /// rank-0 algebra. `t_plus`, `t_minus` are polynomials in `(u, t)`.
    pub fn ocneanu_trace(&self, h: &HeckeElt, t_plus: &Laurent<i64, 2>, t_minus: &Laurent<i64, 2>) -> Result<TraceValue> {
        if !self.type_a {
            return Err(Error::UnsupportedTypeForHecke("the Ocneanu trace is implemented in type A only".into()));
        }
        // z = (t_- - u t_+) / (1 - u)
        let z = TraceValue::new(t_minus - &t_plus.shift([1, 0]), 1, 1);
        let mut memo = BTreeMap::new();
        let mut total = TraceValue::poly(Laurent::zero(), 1);
        for (w, c) in h.terms() {
            let cu = q_to_u(c);
            let v = self.trace_basis(w, self.n, t_plus, &z, &mut memo);
            total = total.add(&v.mul_poly(&cu));
        }
        Ok(total.reduce())
    }

    /// `tau_r(T_w)` for `w` in the parabolic subgroup on the first `r`
    /// generators.
    fn trace_basis(
        &self,
        w: &WElt,
        r: usize,
        t_plus: &Laurent<i64, 2>,
        z: &TraceValue,
        memo: &mut BTreeMap<(WElt, usize), TraceValue>,
    ) -> TraceValue {
        if r == 0 {
            return TraceValue::poly(Laurent::one(), 1);
        }
        if let Some(v) = memo.get(&(w.clone(), r)) {
            return v.clone();
        }
        let last = r - 1;
        // w = u c with u in W_I, c minimal in W_I c
        let mut u_word = Vec::new();
        let mut c = w.clone();
        'peel: loop {
            for s in 0..last {
                if !self.raises_left(s, &c) {
                    u_word.push(s);
                    c = self.gen_times(s, &c);
                    continue 'peel;
                }
            }
            break;
        }
        let u_elt = self.element(&u_word);
        let value = if c == self.identity() {
            z.mul(&self.trace_basis(&u_elt, last, t_plus, z, memo))
        } else {
            // c = s_last c'' and tau(T_u T_{s_last} T_c'') = t_+ tau(T_c'' T_u)
            let rest = self.gen_times(last, &c);
            let prod = self.mul(&self.basis(rest), &self.basis(u_elt));
            let mut acc = TraceValue::poly(Laurent::zero(), 1);
            for (v, coef) in prod.terms() {
                acc = acc.add(&self.trace_basis(v, last, t_plus, z, memo).mul_poly(&q_to_u(coef)));
            }
            acc.mul_poly(t_plus)
        };
        memo.insert((w.clone(), r), value.clone());
        value
    }
}

/// Rewrites a polynomial in `q` as one in `(u, t)` with `u = q^{-1}`.
pub fn q_to_u(c: &QPoly) -> Laurent<i64, 2> {
    c.map_exponents(|[e]| [-e, 0])
}

/// `t_+ = -t`.
pub fn t_plus_default() -> Laurent<i64, 2> {
    Laurent::monomial([0, 1], -1)
}

/// `t_- = 1`.
pub fn t_minus_default() -> Laurent<i64, 2> {
    Laurent::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(tag: &str) -> HeckeAlgebra {
        HeckeAlgebra::new(&Realization::standard(&tag.parse().unwrap()).unwrap())
    }

    #[test]
    fn quadratic_relation() {
        let h = alg("A1");
        let sq = h.mul(&h.t(0), &h.t(0));
        let mut expect = h.t(0).scale(&(&QPoly::one() - &qpow(1)));
        expect.add_term(h.identity(), &qpow(1));
        assert_eq!(sq, expect);
        assert_eq!(h.mul(&h.t(0), &h.t_inv(0)), h.one());
    }

    #[test]
    fn length_adds() {
        let h = alg("A2");
        let st = h.mul(&h.t(0), &h.t(1));
        assert_eq!(st, h.basis(h.element(&[0, 1])));
        assert_eq!(h.length(&h.element(&[0, 1, 0])), 3);
        assert_eq!(h.element(&[0, 1, 0]), h.element(&[1, 0, 1]));
        assert_eq!(h.length(&h.element(&[0, 0])), 0);
        let g = alg("B2");
        assert_eq!(g.element(&[0, 1, 0, 1]), g.element(&[1, 0, 1, 0]));
        assert_eq!(g.length(&g.element(&[0, 1, 0, 1])), 4);
    }

    #[test]
    fn braid_relation_in_hecke() {
        let h = alg("A2");
        let a = h.braid_image(&"1 2 1".parse().unwrap()).unwrap();
        let b = h.braid_image(&"2 1 2".parse().unwrap()).unwrap();
        assert_eq!(a, b);
        let c = h.braid_image(&"1 -1".parse().unwrap()).unwrap();
        assert_eq!(c, h.one());
    }

    #[test]
    fn character_of_theta_squared() {
        let h = alg("A1");
        let lhs = h.character(&[0, 0], 0, 0);
        let rhs = h.character(&[0], 0, 0).scale(&(&qpow(-1) + &QPoly::one()));
        assert_eq!(lhs, rhs);
        assert_eq!(h.character(&[], 0, 0), h.one());
    }

    #[test]
    fn trace_normalization() {
        let tp = t_plus_default();
        let tm = t_minus_default();
        let h0 = HeckeAlgebra::new(&Realization::standard(&"A0".parse().unwrap()).unwrap());
        assert_eq!(h0.ocneanu_trace(&h0.one(), &tp, &tm).unwrap(), TraceValue::poly(Laurent::one(), 1));
        let h = alg("A1");
        assert_eq!(h.ocneanu_trace(&h.t(0), &tp, &tm).unwrap(), TraceValue::poly(tp.clone(), 1));
        assert_eq!(h.ocneanu_trace(&h.t_inv(0), &tp, &tm).unwrap(), TraceValue::poly(tm.clone(), 1));
        let b2 = alg("B2");
        assert!(b2.ocneanu_trace(&b2.one(), &tp, &tm).is_err());
    }
}
