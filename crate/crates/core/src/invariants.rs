//! Link invariants assembled from trigraded tables, and the verification
//! suites for the Markov moves, the parabolic sum and the skein relation.
//!
//! Grading conventions, with `h = |S| + l(b)`:
//! - `X_b` has the class `(i, j, d)` at `t1^d t2^{(h - 2i)/2} t3^{(2j - h)/2}`;
//!   exponents are stored doubled, `[2d, h - 2i, 2j - h]`.
//! - `Y_b` substitutes `t3^{1/2} = i`, stored as `[2d, h - 2i]`.
//! - the trace value is `sum (-1)^j dim u^d t^i` with `u = q^{-1}`, plain
//!   exponents `[d, i]`.
//! - the half-normalized table moves `(i, j, d)` to `(2i - h, 2j - h, d)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complexes::{braid_complex, BimoduleComplex};
use crate::coxeter::{BraidWord, CoxeterSystem, Letter};
use crate::error::{Error, Result};
use crate::hecke::{t_minus_default, t_plus_default, HeckeAlgebra};
use crate::hochschild::{hh_table, TriGradedTable};
use crate::homfly::{homfly_oracle, skein_coefficient, smoothing_coefficient, Gauss};
use crate::laurent::{Coeff, Laurent};
use crate::realization::Realization;
use crate::scalar::i_pow;
use crate::soergel::Soergel;

/// A truncated series; every coefficient with slot-0 exponent at most
/// `exact_to` is exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantSeries<C, const N: usize> {
    pub series: Laurent<C, N>,
    pub exact_to: i64,
}

impl<C: Coeff, const N: usize> InvariantSeries<C, N> {
    pub fn is_one(&self) -> bool {
        self.series == Laurent::one()
    }

    /// Restriction to a smaller exact window.
    pub fn truncate(&self, bound: i64) -> Self {
        let b = bound.min(self.exact_to);
        InvariantSeries { series: self.series.truncate(0, b), exact_to: b }
    }
}

pub type XSeries = InvariantSeries<i64, 3>;
pub type YSeries = InvariantSeries<Gauss, 2>;
pub type TraceSeries = InvariantSeries<i64, 2>;

/// The grading conventions, reported alongside every result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub degree_of_root: i64,
    pub x_exponents: String,
    pub y_exponents: String,
    pub trace_exponents: String,
    pub half_normalization: String,
    pub t_plus: String,
    pub t_minus: String,
    pub skein: String,
}

pub fn conventions() -> Conventions {
    Conventions {
        degree_of_root: 1,
        x_exponents: "doubled [t1, t2, t3] = [2d, h - 2i, 2j - h], h = |S| + l(b)".into(),
        y_exponents: "doubled [t1, t2] = [2d, h - 2i], coefficient times i^(2j - h)".into(),
        trace_exponents: "[u, t] = [d, i], u = q^-1, sign (-1)^j".into(),
        half_normalization: "(i, j, d) -> (2i - h, 2j - h, d)".into(),
        t_plus: "-t".into(),
        t_minus: "1".into(),
        skein: "t1^(1/2) t2^(-1/2) Y(s) + t1^(-1/2) t2^(1/2) Y(s^-1) = i (t1^(-1/2) - t1^(1/2)) Y(0)".into(),
    }
}

/// Source of trigraded tables for one Coxeter system.
pub trait Tables {
    fn system(&self) -> &CoxeterSystem;
    fn table(&self, b: &BraidWord, cutoff: i64) -> Result<TriGradedTable>;
}

/// Realization, Soergel context and Hecke algebra of one Coxeter system.
pub struct Engine {
    system: CoxeterSystem,
    ctx: Soergel,
    hecke: HeckeAlgebra,
    minimize: bool,
}

impl Engine {
    pub fn new(system: &CoxeterSystem) -> Result<Self> {
        let real = Realization::standard(system)?;
        Ok(Engine { system: system.clone(), ctx: Soergel::new(&real), hecke: HeckeAlgebra::new(&real), minimize: true })
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        Self::new(&tag.parse()?)
    }

    /// Type `A_{strands - 1}`.
    pub fn type_a(strands: usize) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        Self::new(&CoxeterSystem::type_a(strands - 1))
    }

    pub fn with_minimize(mut self, minimize: bool) -> Self {
        self.minimize = minimize;
        self
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn soergel(&self) -> &Soergel {
        &self.ctx
    }

    pub fn hecke(&self) -> &HeckeAlgebra {
        &self.hecke
    }

    pub fn complex(&self, b: &BraidWord) -> Result<BimoduleComplex> {
        braid_complex(&self.ctx, b, self.minimize)
    }

    pub fn table_of(&self, c: &BimoduleComplex, cutoff: i64) -> Result<TriGradedTable> {
        hh_table(&self.ctx, c, cutoff)
    }
}

impl Tables for Engine {
    fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    fn table(&self, b: &BraidWord, cutoff: i64) -> Result<TriGradedTable> {
        self.table_of(&self.complex(b)?, cutoff)
    }
}

/// `|S| + l(b)`.
pub fn grading_shift(rank: usize, b: &BraidWord) -> i64 {
    rank as i64 + b.length()
}

fn require_type_a(system: &CoxeterSystem) -> Result<usize> {
    system.type_a_rank().ok_or_else(|| Error::UnsupportedType(format!("{} (type A only)", system.type_tag())))
}

/// `X_b` from its table.
pub fn x_from_table(table: &TriGradedTable, h: i64) -> XSeries {
    let mut s = Laurent::zero();
    for (&(i, j, d), &v) in &table.dims {
        s.add_term([2 * d, h - 2 * i, 2 * j - h], v as i64);
    }
    InvariantSeries { series: s, exact_to: 2 * table.cutoff }
}

pub fn x_invariant(t: &dyn Tables, b: &BraidWord, cutoff: i64) -> Result<XSeries> {
    let n = require_type_a(t.system())?;
    Ok(x_from_table(&t.table(b, cutoff)?, grading_shift(n, b)))
}

/// `t3^{1/2} = i`.
pub fn y_specialize(x: &XSeries) -> YSeries {
    let mut s = Laurent::zero();
    for ([a, b, c], v) in x.series.terms() {
        s.add_term([a, b], i_pow(c) * Gauss::new(*v, 0));
    }
    InvariantSeries { series: s, exact_to: x.exact_to }
}

pub fn y_invariant(t: &dyn Tables, b: &BraidWord, cutoff: i64) -> Result<YSeries> {
    Ok(y_specialize(&x_invariant(t, b, cutoff)?))
}

/// `sum (-1)^j dim u^d t^i` over the table.
pub fn trace_from_table(table: &TriGradedTable) -> TraceSeries {
    let mut s = Laurent::zero();
    for (&(i, j, d), &v) in &table.dims {
        s.add_term([d, i], if j.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) });
    }
    InvariantSeries { series: s, exact_to: table.cutoff }
}

pub fn markov_trace_value(t: &dyn Tables, b: &BraidWord, cutoff: i64) -> Result<TraceSeries> {
    Ok(trace_from_table(&t.table(b, cutoff)?))
}

/// The table with `(i, j)` recentred by `h`.
pub fn half_normalized(table: &TriGradedTable, h: i64) -> BTreeMap<(i64, i64, i64), u64> {
    table.dims.iter().map(|(&(i, j, d), &v)| ((2 * i - h, 2 * j - h, d), v)).collect()
}

/// Outcome of one verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    pub cutoff: i64,
    pub detail: String,
    pub witness: Option<Witness>,
}

/// First disagreement: the exponent or grading key and both values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub key: Vec<i64>,
    pub left: String,
    pub right: String,
}

fn report(check: &str, cutoff: i64, detail: String, witness: Option<Witness>) -> CheckReport {
    CheckReport { check: check.into(), pass: witness.is_none(), cutoff, detail, witness }
}

fn first_map_difference<K: Ord + Clone, V: PartialEq + Clone + std::fmt::Debug + Default>(
    a: &BTreeMap<K, V>,
    b: &BTreeMap<K, V>,
    key: impl Fn(&K) -> Vec<i64>,
) -> Option<Witness> {
    let keys: std::collections::BTreeSet<&K> = a.keys().chain(b.keys()).collect();
    keys.into_iter().find_map(|k| {
        let (x, y) = (a.get(k).cloned().unwrap_or_default(), b.get(k).cloned().unwrap_or_default());
        (x != y).then(|| Witness { key: key(k), left: format!("{x:?}"), right: format!("{y:?}") })
    })
}

fn table_witness(a: &TriGradedTable, b: &TriGradedTable) -> Option<Witness> {
    a.first_difference(b).map(|((i, j, d), x, y)| Witness { key: vec![i, j, d], left: x.to_string(), right: y.to_string() })
}

/// Tables of `b b'` and `b' b` agree.
pub fn verify_conjugation(t: &dyn Tables, b: &BraidWord, bp: &BraidWord, cutoff: i64) -> Result<CheckReport> {
    let x = t.table(&b.concat(bp), cutoff)?;
    let y = t.table(&bp.concat(b), cutoff)?;
    Ok(report("conjugation", cutoff, format!("{} vs {} in {}", b.concat(bp), bp.concat(b), t.system().type_tag()), table_witness(&x, &y)))
}

/// The generators of `big` other than `s`, in order.
pub fn parabolic_generators(big: &CoxeterSystem, s: usize) -> Result<Vec<usize>> {
    if s >= big.rank() {
        return Err(Error::GeneratorOutOfRange(s as i64 + 1, big.rank()));
    }
    Ok((0..big.rank()).filter(|&g| g != s).collect())
}

fn embed(small: &dyn Tables, big: &dyn Tables, b: &BraidWord, s: usize) -> Result<BraidWord> {
    let kept = parabolic_generators(big.system(), s)?;
    if big.system().subsystem(&kept)? != *small.system() {
        return Err(Error::IncompatibleRealization(format!(
            "{} is not the parabolic subsystem of {} without generator {}",
            small.system().type_tag(),
            big.system().type_tag(),
            s + 1
        )));
    }
    b.validate(kept.len())?;
    Ok(b.relabel(&kept))
}

/// Half-normalized tables of `gamma(b) s^{sign}` and `b` agree.
pub fn verify_stabilization(small: &dyn Tables, big: &dyn Tables, b: &BraidWord, s: usize, sign: i8, cutoff: i64) -> Result<CheckReport> {
    let g = embed(small, big, b, s)?;
    let st = g.stabilize(s, sign);
    let base = half_normalized(&small.table(b, cutoff)?, grading_shift(small.system().rank(), b));
    let top = half_normalized(&big.table(&st, cutoff)?, grading_shift(big.system().rank(), &st));
    let w = first_map_difference(&top, &base, |k| vec![k.0, k.1, k.2]);
    Ok(report("stabilization", cutoff, format!("{st} in {} vs {b} in {}", big.system().type_tag(), small.system().type_tag()), w))
}

/// Table of `gamma(b)` predicted from the table of `b`: one free variable of
/// degree 1 and its Koszul generator.
pub fn parabolic_prediction(base: &TriGradedTable, cutoff: i64) -> TriGradedTable {
    let mut out = TriGradedTable::new(base.nvars + 1, cutoff);
    for (&(i, j, d0), &v) in &base.dims {
        for (di, start) in [(0, d0), (1, d0 + 1)] {
            for d in start..=cutoff {
                *out.dims.entry((i + di, j, d)).or_insert(0) += v;
            }
        }
    }
    out
}

pub fn verify_parabolic_sum(small: &dyn Tables, big: &dyn Tables, b: &BraidWord, s: usize, cutoff: i64) -> Result<CheckReport> {
    let g = embed(small, big, b, s)?;
    let predicted = parabolic_prediction(&small.table(b, cutoff)?, cutoff);
    let actual = big.table(&g, cutoff)?;
    Ok(report("parabolic", cutoff, format!("{g} in {} from {b} in {}", big.system().type_tag(), small.system().type_tag()), table_witness(&actual, &predicted)))
}

/// `c_- Y(b s_r^{-1} b') + c_+ Y(b s_r b') = i (t1^{-1/2} - t1^{1/2}) Y(b b')`
/// on the common exact window (doubled `t1` exponent at most `2D - 1`).
pub fn verify_skein(t: &dyn Tables, b: &BraidWord, bp: &BraidWord, r: usize, cutoff: i64) -> Result<CheckReport> {
    if cutoff < 1 {
        return Err(Error::WindowTooSmall(format!("cutoff {cutoff} leaves no common window")));
    }
    let with = |sign: i8| b.concat(&BraidWord::new(vec![Letter::new(r, sign)])).concat(bp);
    let (wp, wm, w0) = (with(1), with(-1), b.concat(bp));
    let yp = y_invariant(t, &wp, cutoff)?;
    let ym = y_invariant(t, &wm, cutoff)?;
    let y0 = y_invariant(t, &w0, cutoff)?;
    let window = 2 * cutoff - 1;
    let lhs = (&(&ym.series * &skein_coefficient(-1)) + &(&yp.series * &skein_coefficient(1))).truncate(0, window);
    let rhs = (&y0.series * &smoothing_coefficient()).truncate(0, window);
    let diff = &lhs - &rhs;
    let witness = diff.terms().next().map(|(e, _)| Witness {
        key: e.to_vec(),
        left: format!("{:?}", lhs.coeff(e)),
        right: format!("{:?}", rhs.coeff(e)),
    });
    Ok(report("skein", cutoff, format!("{wm} / {wp} / {w0}, doubled t1 exponent <= {window}"), witness))
}

/// `Y_b` from homology against the skein oracle, on the window `d <= D`.
pub fn verify_homfly(t: &dyn Tables, b: &BraidWord, cutoff: i64, budget: usize) -> Result<CheckReport> {
    let n = require_type_a(t.system())?;
    let y = y_invariant(t, b, cutoff)?;
    let oracle = homfly_oracle(b, n + 1, budget)?.expand(2 * cutoff);
    let w = first_map_difference(&series_map(&y.series), &series_map(&oracle), |k| k.clone());
    Ok(report("homfly", cutoff, format!("{b} on {} strands", n + 1), w))
}

fn series_map<C: Coeff + Default, const N: usize>(s: &Laurent<C, N>) -> BTreeMap<Vec<i64>, C> {
    s.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect()
}

/// Character of the complex against the Hecke image of `b`, and in type A
/// the trace of the table against the Ocneanu trace.
pub fn decategorify_check(e: &Engine, b: &BraidWord, cutoff: i64) -> Result<CheckReport> {
    let c = e.complex(b)?;
    let expected = e.hecke.braid_image(b)?;
    if c.character(&e.hecke) != expected {
        return Ok(report("decat", cutoff, format!("{b}: character"), Some(Witness { key: vec![], left: "character".into(), right: "braid image".into() })));
    }
    if e.system.type_a_rank().is_none() {
        return Ok(report("decat", cutoff, format!("{b}: character only ({})", e.system.type_tag()), None));
    }
    let tr = trace_from_table(&e.table_of(&c, cutoff)?).series;
    let oracle = e.hecke.ocneanu_trace(&expected, &t_plus_default(), &t_minus_default())?.expand(cutoff).truncate(0, cutoff);
    let w = first_map_difference(&series_map(&tr), &series_map(&oracle), |k| k.clone());
    Ok(report("decat", cutoff, format!("{b}: character and trace"), w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn unknot_presentations_are_one() {
        let a0 = Engine::type_a(1).unwrap();
        assert!(x_invariant(&a0, &w(""), 6).unwrap().is_one());
        let a1 = Engine::type_a(2).unwrap();
        assert!(x_invariant(&a1, &w("1"), 6).unwrap().is_one());
        assert!(x_invariant(&a1, &w("-1"), 6).unwrap().is_one());
    }

    #[test]
    fn x_is_type_a_only() {
        let b2 = Engine::from_tag("B2").unwrap();
        assert!(matches!(x_invariant(&b2, &w("1"), 2), Err(Error::UnsupportedType(_))));
        assert!(markov_trace_value(&b2, &w("1"), 2).is_ok());
    }

    #[test]
    fn y_signs() {
        let x = InvariantSeries { series: Laurent::monomial([0, 0, 2], 3i64), exact_to: 0 };
        assert_eq!(y_specialize(&x).series, Laurent::monomial([0, 0], Gauss::new(-3, 0)));
    }

    #[test]
    fn trace_of_elementary_braids() {
        let a1 = Engine::type_a(2).unwrap();
        assert_eq!(markov_trace_value(&a1, &w("1"), 4).unwrap().series, t_plus_default());
        assert_eq!(markov_trace_value(&Engine::type_a(1).unwrap(), &w(""), 4).unwrap().series, Laurent::one());
    }

    #[test]
    fn parabolic_prediction_of_trivial() {
        let a0 = Engine::type_a(1).unwrap();
        let p = parabolic_prediction(&a0.table(&w(""), 3).unwrap(), 3);
        for d in 0..=3 {
            assert_eq!(p.get(0, 0, d), 1);
            assert_eq!(p.get(1, 0, d), u64::from(d >= 1));
        }
    }

    #[test]
    fn small_checks_pass() {
        let a0 = Engine::type_a(1).unwrap();
        let a1 = Engine::type_a(2).unwrap();
        assert!(verify_stabilization(&a0, &a1, &w(""), 0, 1, 4).unwrap().pass);
        assert!(verify_stabilization(&a0, &a1, &w(""), 0, -1, 4).unwrap().pass);
        assert!(verify_parabolic_sum(&a0, &a1, &w(""), 0, 4).unwrap().pass);
        assert!(verify_skein(&a1, &w(""), &w(""), 0, 4).unwrap().pass);
        assert!(verify_homfly(&a1, &w("1 1"), 4, 1000).unwrap().pass);
        assert!(decategorify_check(&a1, &w("1 1 -1"), 4).unwrap().pass);
        assert!(matches!(verify_skein(&a1, &w(""), &w(""), 0, 0), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn wrong_subsystem_is_rejected() {
        let a1 = Engine::type_a(2).unwrap();
        let b2 = Engine::from_tag("B2").unwrap();
        assert!(verify_parabolic_sum(&b2, &a1, &w(""), 0, 2).is_err());
    }
}
