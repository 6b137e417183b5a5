//! Skein-recursion HOMFLYPT oracle on braid closures, independent of the
//! homological pipeline.
//!
//! Values live in `Z[i][t1^{±1/2}, t2^{±1/2}]` localized at `1 - t1`, with
//! exponents stored doubled: slot 0 is `2 * exp(t1)`, slot 1 is `2 * exp(t2)`.
//! The rewriting rule is
//!
//! `c_+ Y(b s b') + c_- Y(b s^{-1} b') = i (t1^{-1/2} - t1^{1/2}) Y(b b')`
//!
//! with `c_+ = t1^{1/2} t2^{-1/2}` and `c_- = t1^{-1/2} t2^{1/2}`. Descending
//! diagrams are unlinks; a `c`-component unlink has value `mu^{c-1}` with
//! `mu = -i (t2^{1/2} + t1 t2^{-1/2}) / (1 - t1)`, the value of the trivial
//! braid on two strands.

use std::collections::HashMap;

use num_complex::Complex;

use crate::coxeter::{BraidWord, Letter};
use crate::error::{Error, Result};
use crate::laurent::{Laurent, RationalSeries};

pub type Gauss = Complex<i64>;
pub type SkeinPoly = Laurent<Gauss, 2>;
pub type SkeinValue = RationalSeries<Gauss, 2>;

const I: Gauss = Complex { re: 0, im: 1 };

fn mono(e: [i64; 2], c: Gauss) -> SkeinPoly {
    Laurent::monomial(e, c)
}

/// `c_+` for sign `+1`, `c_-` for sign `-1`.
pub fn skein_coefficient(sign: i8) -> SkeinPoly {
    if sign > 0 {
        mono([1, -1], Gauss::new(1, 0))
    } else {
        mono([-1, 1], Gauss::new(1, 0))
    }
}

/// `i (t1^{-1/2} - t1^{1/2})`.
pub fn smoothing_coefficient() -> SkeinPoly {
    &mono([-1, 0], I) - &mono([1, 0], I)
}

/// Value of the two-component unlink.
pub fn unlink_factor() -> SkeinValue {
    RationalSeries::new(&mono([0, 1], -I) + &mono([2, -1], -I), 1, 2)
}

/// The mirror substitution `t2^{1/2} -> t1 t2^{-1/2}`, which swaps `c_+` and
/// `c_-` and fixes the other constants.
pub fn mirror_substitution(v: &SkeinValue) -> SkeinValue {
    RationalSeries::new(v.num.map_exponents(|[a, b]| [a + 2 * b, -b]), v.den, v.step)
}

/// Memoized skein evaluator with a bound on the number of rewriting steps.
pub struct HomflyOracle {
    budget: usize,
    steps: usize,
    memo: HashMap<(usize, Vec<i64>), SkeinValue>,
}

impl HomflyOracle {
    pub fn new(budget: usize) -> Self {
        HomflyOracle { budget, steps: 0, memo: HashMap::new() }
    }

    /// The value of the closure of `b` on `strands` strands.
    pub fn evaluate(&mut self, b: &BraidWord, strands: usize) -> Result<SkeinValue> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        b.validate(strands - 1)?;
        self.eval(&b.letters, strands)
    }

    fn eval(&mut self, word: &[Letter], strands: usize) -> Result<SkeinValue> {
        let key = (strands, word.iter().map(|l| (l.gen as i64 + 1) * i64::from(l.sign)).collect::<Vec<_>>());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::RecursionBudgetExceeded);
        }
        let value = match traverse(word, strands) {
            Traversal::Descending(c) => {
                let mut v = RationalSeries::poly(Laurent::one(), 2);
                for _ in 1..c {
                    v = v.mul(&unlink_factor());
                }
                v
            }
            Traversal::Bad(k) => {
                let eps = word[k].sign;
                let mut switched = word.to_vec();
                switched[k] = word[k].inverse();
                let mut smoothed = word.to_vec();
                smoothed.remove(k);
                let y0 = self.eval(&smoothed, strands)?;
                let ys = self.eval(&switched, strands)?;
                // Y(eps) = [smooth * Y0 - c_{-eps} Y(-eps)] / c_eps
                let c = skein_coefficient(eps);
                let inv = c.map_exponents(|[a, b]| [-a, -b]);
                y0.mul_poly(&smoothing_coefficient()).sub(&ys.mul_poly(&skein_coefficient(-eps))).mul_poly(&inv).reduce()
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

/// Convenience wrapper with a fresh oracle.
pub fn homfly_oracle(b: &BraidWord, strands: usize, budget: usize) -> Result<SkeinValue> {
    HomflyOracle::new(budget).evaluate(b, strands)
}

enum Traversal {
    /// number of components
    Descending(usize),
    /// the first crossing met first from below
    Bad(usize),
}

/// Walks the closure component by component, starting each at the lowest
/// unvisited top position. A positive letter at `k` carries the strand from
/// position `k` over the one from `k + 1`.
fn traverse(word: &[Letter], strands: usize) -> Traversal {
    let mut seen = vec![false; word.len()];
    let mut started = vec![false; strands];
    let mut components = 0;
    for start in 0..strands {
        if started[start] {
            continue;
        }
        components += 1;
        let mut pos = start;
        loop {
            started[pos] = true;
            for (idx, l) in word.iter().enumerate() {
                let over = if pos == l.gen {
                    pos += 1;
                    l.sign > 0
                } else if pos == l.gen + 1 {
                    pos -= 1;
                    l.sign < 0
                } else {
                    continue;
                };
                if !seen[idx] {
                    seen[idx] = true;
                    if !over {
                        return Traversal::Bad(idx);
                    }
                }
            }
            if pos == start {
                break;
            }
        }
    }
    Traversal::Descending(components)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(w: &str, n: usize) -> SkeinValue {
        homfly_oracle(&w.parse().unwrap(), n, 10_000).unwrap()
    }

    fn one() -> SkeinValue {
        RationalSeries::poly(Laurent::one(), 2)
    }

    #[test]
    fn unknot_presentations() {
        assert_eq!(y("", 1), one());
        assert_eq!(y("1", 2), one());
        assert_eq!(y("-1", 2), one());
        assert_eq!(y("1 2", 3), one());
        assert_eq!(y("1 -2", 3), one());
    }

    #[test]
    fn unlinks() {
        assert_eq!(y("", 2), unlink_factor());
        assert_eq!(y("1 -1", 2), unlink_factor());
        assert_eq!(y("", 3), unlink_factor().mul(&unlink_factor()));
    }

    #[test]
    fn skein_rule_on_hopf() {
        let (p, m, z) = (y("1 1", 2), y("1 -1", 2), y("1", 2));
        let lhs = p.mul_poly(&skein_coefficient(1)).add(&m.mul_poly(&skein_coefficient(-1)));
        assert_eq!(lhs, z.mul_poly(&smoothing_coefficient()));
    }

    #[test]
    fn trefoil_mirror() {
        let t = y("1 1 1", 2);
        let m = y("-1 -1 -1", 2);
        assert_ne!(t, m);
        assert_eq!(mirror_substitution(&t), m);
    }

    #[test]
    fn budget_is_enforced() {
        let r = homfly_oracle(&"1 1 1 1 1".parse().unwrap(), 2, 2);
        assert_eq!(r.unwrap_err(), Error::RecursionBudgetExceeded);
    }
}
