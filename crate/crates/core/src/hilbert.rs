//! Graded dimension vectors and Hilbert numerators over `(1-q)^m`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::binomial;

/// Dimensions by internal degree, exact for every degree `<= cutoff`.
/// Missing degrees below the cutoff are zero; above it nothing is asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub dims: BTreeMap<i64, u64>,
    pub cutoff: i64,
}

impl GradedDims {
    pub fn new(cutoff: i64) -> Self {
        GradedDims { dims: BTreeMap::new(), cutoff }
    }

    pub fn from_slice(start: i64, values: &[u64]) -> Self {
        let mut g = GradedDims::new(start + values.len() as i64 - 1);
        for (k, v) in values.iter().enumerate() {
            if *v != 0 {
                g.dims.insert(start + k as i64, *v);
            }
        }
        g
    }

    pub fn get(&self, d: i64) -> u64 {
        self.dims.get(&d).copied().unwrap_or(0)
    }
}

/// A Laurent polynomial in one variable with integer coefficients, keyed by exponent.
pub type Numerator = BTreeMap<i64, i64>;

/// Finds `N(q)` with `N(q) / (1-q)^m` matching `dims` through the cutoff.
///
/// The numerator must vanish on the top `margin` degrees below the cutoff,
/// otherwise the cutoff is too small to trust the fit.
pub fn hilbert_fit(dims: &GradedDims, m: usize, margin: i64) -> Result<Numerator> {
    assert!(margin >= 1, "fit margin must be at least 1");
    let Some(&lo) = dims.dims.keys().next() else {
        return Ok(Numerator::new());
    };
    let hi = dims.cutoff;
    if hi - lo + 1 < margin {
        return Err(Error::FitUnstable(format!("window [{lo}, {hi}] shorter than margin {margin}")));
    }
    // N = dims * (1-q)^m, exact through the cutoff
    let mut num = Numerator::new();
    for d in lo..=hi {
        let mut acc: i64 = 0;
        for k in 0..=(m as i64).min(d - lo) {
            let c = binomial(m as u64, k as u64) as i64;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            acc += sign * c * dims.get(d - k) as i64;
        }
        if acc != 0 {
            num.insert(d, acc);
        }
    }
    if let Some((&top, _)) = num.iter().next_back() {
        if top > hi - margin {
            return Err(Error::FitUnstable(format!(
                "numerator has a term in degree {top}, within {margin} of cutoff {hi}"
            )));
        }
    }
    Ok(num)
}

/// Expands `N(q) / (1-q)^m` through degree `cutoff`.
pub fn expand_numerator(num: &Numerator, m: usize, cutoff: i64) -> GradedDims {
    let mut out = GradedDims::new(cutoff);
    for (&e, &c) in num {
        for d in e..=cutoff {
            // coefficient of q^(d-e) in (1-q)^-m is C(d-e+m-1, m-1)
            let k = d - e;
            let mult = if m == 0 { u64::from(k == 0) as i64 } else { binomial(k as u64 + m as u64 - 1, m as u64 - 1) as i64 };
            let v = out.dims.get(&d).copied().unwrap_or(0) as i64 + c * mult;
            assert!(v >= 0, "numerator expansion produced a negative dimension");
            if v == 0 {
                out.dims.remove(&d);
            } else {
                out.dims.insert(d, v as u64);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn polynomial_ring_in_one_variable() {
        let dims = GradedDims::from_slice(0, &[1; 10]);
        assert_eq!(hilbert_fit(&dims, 1, 3).unwrap(), Numerator::from([(0, 1)]));
    }

    #[test]
    fn polynomial_ring_in_two_variables() {
        let v: Vec<u64> = (1..=10).collect();
        let dims = GradedDims::from_slice(0, &v);
        assert_eq!(hilbert_fit(&dims, 2, 3).unwrap(), Numerator::from([(0, 1)]));
    }

    #[test]
    fn rank_of_theta_s() {
        let mut v = vec![2u64; 10];
        v[0] = 1;
        let dims = GradedDims::from_slice(0, &v);
        assert_eq!(hilbert_fit(&dims, 1, 3).unwrap(), Numerator::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn finite_module() {
        let dims = GradedDims::from_slice(0, &[1, 0, 0, 0, 0]);
        assert_eq!(hilbert_fit(&dims, 1, 2).unwrap(), Numerator::from([(0, 1), (1, -1)]));
    }

    #[test]
    fn unstable_fit() {
        let dims = GradedDims::from_slice(0, &[1, 2, 3, 5]);
        assert!(matches!(hilbert_fit(&dims, 1, 2), Err(Error::FitUnstable(_))));
    }

    proptest! {
        #[test]
        fn expansion_round_trip(coeffs in prop::collection::vec(0i64..4, 1..4), m in 0usize..3, lo in -2i64..2) {
            let num: Numerator = coeffs.iter().enumerate().filter(|(_, c)| **c != 0)
                .map(|(k, c)| (lo + k as i64, *c)).collect();
            let dims = expand_numerator(&num, m, lo + 12);
            if num.is_empty() {
                prop_assert!(dims.dims.is_empty());
            } else {
                prop_assert_eq!(hilbert_fit(&dims, m, 3).unwrap(), num);
            }
        }
    }
}
