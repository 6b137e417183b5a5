//! Reflection representations with integral Cartan data, the induced action
//! on the polynomial ring `P = k[V]`, Demazure operators, and parabolic data.
//!
//! The variables of `P` are the simple roots `a1..am` (linear forms on `V`).
//! With `a[s][t] = alpha_t(e_s)` the Cartan matrix, a generator acts on
//! linear forms by `s(alpha_t) = alpha_t - a[s][t] alpha_s`, and on `V` by
//! `s(x) = x - alpha_s(x) e_s`.

use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::matrix::SparseMat;
use crate::poly::{Monomial, MultiPoly};
use crate::scalar::{qi, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Realization {
    system: CoxeterSystem,
    cartan: Vec<Vec<i64>>,
}

impl Realization {
    /// The integral root/coroot realization of a crystallographic system.
    pub fn standard(system: &CoxeterSystem) -> Result<Self> {
        let n = system.rank();
        let mut cartan = vec![vec![0i64; n]; n];
        for s in 0..n {
            cartan[s][s] = 2;
            for t in (s + 1)..n {
                let (ast, ats) = match system.m(s, t) {
                    2 => (0, 0),
                    3 => (-1, -1),
                    4 => (-1, -2),
                    6 => (-1, -3),
                    m => return Err(Error::UnsupportedField(format!("m = {m} has no rational realization"))),
                };
                cartan[s][t] = ast;
                cartan[t][s] = ats;
            }
        }
        Ok(Realization { system: system.clone(), cartan })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    /// Number of variables of `P` (= rank).
    pub fn nvars(&self) -> usize {
        self.cartan.len()
    }

    /// `alpha_t(e_s)`.
    pub fn cartan(&self, s: usize, t: usize) -> i64 {
        self.cartan[s][t]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// The root `alpha_s` as a polynomial.
    pub fn root(&self, s: usize) -> MultiPoly {
        MultiPoly::var(self.nvars(), s)
    }

    /// Matrix of `s` on `V*` in the root basis (column `t` is `s(alpha_t)`).
    pub fn dual_matrix(&self, s: usize) -> Vec<Vec<i64>> {
        let n = self.nvars();
        let mut m = vec![vec![0i64; n]; n];
        for t in 0..n {
            m[t][t] += 1;
            m[s][t] -= self.cartan[s][t];
        }
        m
    }

    /// Coordinates of the coroot `e_s` in the basis of `V` dual to the roots.
    pub fn coroot(&self, s: usize) -> Vec<i64> {
        self.cartan[s].clone()
    }

    /// `s(x)` for `x` in `V` (coordinates dual to the roots).
    pub fn reflect_vector(&self, s: usize, x: &[i64]) -> Vec<i64> {
        let ax = x[s];
        x.iter().zip(&self.cartan[s]).map(|(xi, ei)| xi - ax * ei).collect()
    }

    fn check(&self, f: &MultiPoly) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    /// The ring automorphism of `P` induced by `s`.
    pub fn act(&self, s: usize, f: &MultiPoly) -> Result<MultiPoly> {
        self.check(f)?;
        let n = self.nvars();
        let images: Vec<MultiPoly> = (0..n)
            .map(|t| {
                let mut c = vec![Q::zero(); n];
                c[t] += qi(1);
                c[s] -= qi(self.cartan[s][t]);
                MultiPoly::linear(&c)
            })
            .collect();
        Ok(substitute(f, &images))
    }

    /// `(f - s(f)) / alpha_s`.
    pub fn demazure(&self, s: usize, f: &MultiPoly) -> Result<MultiPoly> {
        let diff = f - &self.act(s, f)?;
        diff.exact_divide(&self.root(s))
    }

    /// `alpha_s`-coefficient split of a linear form `x = a + c alpha_s` with `a`
    /// fixed by `s`: returns `c = x(e_s) / 2`.
    pub fn half_pairing(&self, s: usize, x: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (t, xt) in x.iter().enumerate() {
            acc += xt * qi(self.cartan[s][t]);
        }
        acc / qi(2)
    }

    /// Data for the parabolic subsystem `S \ {dropped}`.
    pub fn parabolic_drop(&self, dropped: usize) -> Result<ParabolicData> {
        let n = self.nvars();
        if dropped >= n {
            return Err(Error::GeneratorOutOfRange(dropped as i64 + 1, n));
        }
        let kept: Vec<usize> = (0..n).filter(|&t| t != dropped).collect();
        let subsystem = self.system.subsystem(&kept)?;
        let sub = Realization {
            system: subsystem,
            cartan: kept.iter().map(|&s| kept.iter().map(|&t| self.cartan[s][t]).collect()).collect(),
        };
        // complement: linear forms killed by every kept coroot
        let mut a = SparseMat::zero(kept.len(), n);
        for (i, &s) in kept.iter().enumerate() {
            for t in 0..n {
                a.set(i, t, qi(self.cartan[s][t]));
            }
        }
        let (_, ker) = a.rank_kernel();
        if ker.len() != 1 {
            return Err(Error::IncompatibleRealization("complement of a corank-one parabolic is not a line".into()));
        }
        let complement: Vec<Q> = (0..n).map(|t| ker[0].get(&t).cloned().unwrap_or_else(Q::zero)).collect();
        Ok(ParabolicData { dropped, kept, sub, complement })
    }
}

/// Substitutes `x_t -> images[t]` into `f`.
pub fn substitute(f: &MultiPoly, images: &[MultiPoly]) -> MultiPoly {
    let nv = images.first().map_or(f.nvars(), |p| p.nvars());
    let mut out = MultiPoly::zero(nv);
    for (m, c) in f.terms() {
        let mut term = MultiPoly::constant(nv, c.clone());
        for (t, e) in m.iter().enumerate() {
            if *e > 0 {
                term = &term * &images[t].pow(*e);
            }
        }
        out += &term;
    }
    out
}

/// A corank-one parabolic `I = S \ {s}` of a realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicData {
    pub dropped: usize,
    /// Ambient indices of the generators in `I`, in order.
    pub kept: Vec<usize>,
    /// Realization of `W_I` on `V_I`.
    pub sub: Realization,
    /// A nonzero `W_I`-invariant linear form spanning the complement of
    /// `span{alpha_t : t in I}` in `V*`.
    pub complement: Vec<Q>,
}

impl ParabolicData {
    /// `rho_I : P -> P_I`, restriction to `V_I` (sends the dropped root to 0).
    pub fn rho(&self, f: &MultiPoly) -> MultiPoly {
        let m = self.sub.nvars();
        let images: Vec<MultiPoly> = (0..f.nvars())
            .map(|t| match self.kept.iter().position(|&k| k == t) {
                Some(i) => MultiPoly::var(m, i),
                None => MultiPoly::zero(m),
            })
            .collect();
        substitute(f, &images)
    }

    /// Inclusion `P_I -> P` identifying the roots of `I` with ambient roots.
    pub fn embed(&self, f: &MultiPoly) -> MultiPoly {
        let n = self.kept.len() + 1;
        let images: Vec<MultiPoly> = self.kept.iter().map(|&k| MultiPoly::var(n, k)).collect();
        if f.nvars() == 0 {
            let c = f.as_constant().unwrap_or_else(Q::zero);
            return MultiPoly::constant(n, c);
        }
        substitute(f, &images)
    }

    /// Maps a generator of `I` (sub-numbering) to its ambient index.
    pub fn ambient_gen(&self, g: usize) -> usize {
        self.kept[g]
    }
}

/// Monomial helper for tests and callers: `prod x_i^{e_i}`.
pub fn mono(e: &[u32]) -> MultiPoly {
    let m: Monomial = e.to_vec();
    MultiPoly::monomial(m, qi(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;
    use proptest::prelude::*;

    fn real(tag: &str) -> Realization {
        Realization::standard(&tag.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_root_is_negated() {
        let r = real("A1");
        let a = r.root(0);
        assert_eq!(r.act(0, &a).unwrap(), -&a);
        assert_eq!(r.cartan(0, 0), 2);
        assert_eq!(r.act(0, &a.pow(2)).unwrap(), a.pow(2));
        let c = MultiPoly::constant(1, qi(7));
        assert_eq!(r.act(0, &c).unwrap(), c);
    }

    #[test]
    fn a2_action() {
        let r = real("A2");
        let (a1, a2) = (r.root(0), r.root(1));
        assert_eq!(r.act(0, &a2).unwrap(), &a1 + &a2);
        let expect = -&(&a1 * &(&a1 + &a2));
        assert_eq!(r.act(0, &(&a1 * &a2)).unwrap(), expect);
        assert_eq!(r.demazure(0, &a2).unwrap(), MultiPoly::constant(2, qi(-1)));
    }

    #[test]
    fn b2_action() {
        let r = real("B2");
        let (a1, a2) = (r.root(0), r.root(1));
        assert_eq!(r.act(0, &a2).unwrap(), &a2 + &a1);
        assert_eq!(r.act(1, &a1).unwrap(), &a1 + &a2.scale(&qi(2)));
    }

    #[test]
    fn demazure_basics() {
        let r = real("A1");
        let a = r.root(0);
        assert_eq!(r.demazure(0, &a).unwrap(), MultiPoly::constant(1, qi(2)));
        assert!(r.demazure(0, &a.pow(2)).unwrap().is_zero());
        assert_eq!(r.act(0, &MultiPoly::var(2, 0)), Err(Error::VariableMismatch));
    }

    #[test]
    fn defining_identity_on_v() {
        for tag in ["A1", "A2", "A3", "B2", "B3", "G2", "D4", "A1xA1"] {
            let r = real(tag);
            let n = r.nvars();
            for s in 0..n {
                let e = r.coroot(s);
                assert_eq!(e[s], 2, "{tag}: alpha_s(e_s) = 2");
                for t in 0..n {
                    let mut x = vec![0i64; n];
                    x[t] = 1;
                    x[(t + 1) % n] -= 3;
                    let sx = r.reflect_vector(s, &x);
                    // s(x) - x is alpha_s(x) times the reflecting vector
                    let lhs: Vec<i64> = sx.iter().zip(&x).map(|(a, b)| a - b).collect();
                    let rhs: Vec<i64> = e.iter().map(|v| -x[s] * v).collect();
                    assert_eq!(lhs, rhs);
                    assert_eq!(r.reflect_vector(s, &sx), x, "{tag}: s^2 = 1");
                }
                let m = r.dual_matrix(s);
                let mut sq = vec![vec![0i64; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        sq[i][j] = (0..n).map(|k| m[i][k] * m[k][j]).sum();
                    }
                }
                for (i, row) in sq.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        assert_eq!(*v, i64::from(i == j));
                    }
                }
            }
        }
    }

    #[test]
    fn type_a_parabolic_kills_last_root() {
        let r = real("A3");
        let p = r.parabolic_drop(2).unwrap();
        assert_eq!(p.kept, vec![0, 1]);
        assert!(p.rho(&r.root(2)).is_zero());
        assert_eq!(p.rho(&r.root(0)), MultiPoly::var(2, 0));
        assert_eq!(p.embed(&MultiPoly::var(2, 1)), r.root(1));
        // the complement form is invariant under the kept generators
        let z = MultiPoly::linear(&p.complement);
        for &t in &p.kept {
            assert_eq!(r.act(t, &z).unwrap(), z);
        }
        assert_eq!(p.sub.system().type_tag(), "A2");
    }

    fn random_poly(coeffs: &[i64], n: usize) -> MultiPoly {
        let mut f = MultiPoly::zero(n);
        for (k, c) in coeffs.iter().enumerate() {
            let e: Vec<u32> = (0..n).map(|i| ((k >> (2 * i)) & 3) as u32).collect();
            f += &MultiPoly::monomial(e, qi(*c));
        }
        f
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn twisted_leibniz(tag in prop::sample::select(vec!["A2", "B2", "G2", "A3"]),
                           fc in prop::collection::vec(-3i64..4, 0..10),
                           gc in prop::collection::vec(-3i64..4, 0..10),
                           s in 0usize..2) {
            let r = real(tag);
            let n = r.nvars();
            let f = random_poly(&fc, n);
            let g = random_poly(&gc, n);
            let lhs = r.demazure(s, &(&f * &g)).unwrap();
            let rhs = &(&r.demazure(s, &f).unwrap() * &g) + &(&r.act(s, &f).unwrap() * &r.demazure(s, &g).unwrap());
            prop_assert_eq!(lhs, rhs);
            let dd = r.demazure(s, &r.demazure(s, &f).unwrap()).unwrap();
            prop_assert!(dd.is_zero());
            prop_assert_eq!(r.act(s, &r.act(s, &f).unwrap()).unwrap(), f);
        }
    }
}
