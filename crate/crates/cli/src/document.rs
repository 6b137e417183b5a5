//! The structured result document and its human-readable rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use braidhom_core::invariants::{TraceSeries, XSeries, YSeries};
use braidhom_core::{CheckReport, Conventions, Laurent, Numerator, TriGradedTable};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// The echoed part of the configuration; nothing here depends on where or
/// how fast the computation ran.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub type_tag: String,
    pub strands: Option<usize>,
    pub braid: String,
    pub cutoff: i64,
    pub margin: i64,
    pub minimize: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckInput {
    pub which: String,
    pub b: Option<String>,
    pub bp: Option<String>,
    pub r: Option<usize>,
    pub sign: Option<i8>,
    pub generator: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub summands: usize,
    pub total_rank: usize,
    /// `(word length, internal shift, homological degree)` per summand
    pub profile: Vec<(usize, i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertEntry {
    pub i: i64,
    pub j: i64,
    pub numerator: Option<Numerator>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub command: String,
    pub input: RunConfig,
    pub check_input: Option<CheckInput>,
    pub conventions: Conventions,
    pub complex: Option<ComplexSummary>,
    pub table: Option<TriGradedTable>,
    pub hilbert: Vec<HilbertEntry>,
    pub x: Option<XSeries>,
    pub y: Option<YSeries>,
    pub x_status: Option<String>,
    pub trace: Option<TraceSeries>,
    pub checks: Vec<CheckReport>,
    pub pass: Option<bool>,
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl ResultDocument {
    pub fn new(command: &str, input: RunConfig, conventions: Conventions) -> Self {
        ResultDocument {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            input,
            check_input: None,
            conventions,
            complex: None,
            table: None,
            hilbert: Vec::new(),
            x: None,
            y: None,
            x_status: None,
            trace: None,
            checks: Vec::new(),
            pass: None,
            timings_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let inp = &self.input;
        let _ = writeln!(out, "{} {} braid \"{}\" cutoff {}", self.command, inp.type_tag, inp.braid, inp.cutoff);
        if let Some(c) = &self.complex {
            let _ = writeln!(out, "complex: {} summands, total rank {}", c.summands, c.total_rank);
        }
        if let Some(t) = &self.table {
            let _ = writeln!(out, "table (i, j, d) -> dim, d <= {}:", t.cutoff);
            for ((i, j, d), v) in &t.dims {
                let _ = writeln!(out, "  ({i}, {j}, {d}) {v}");
            }
        }
        for h in &self.hilbert {
            match (&h.numerator, &h.error) {
                (Some(n), _) => {
                    let _ = writeln!(out, "hilbert ({}, {}): {}", h.i, h.j, render_numerator(n));
                }
                (None, Some(e)) => {
                    let _ = writeln!(out, "hilbert ({}, {}): {e}", h.i, h.j);
                }
                _ => {}
            }
        }
        if let Some(x) = &self.x {
            let _ = writeln!(out, "X (doubled exponents t1 t2 t3, exact to {}): {}", x.exact_to, render(&x.series));
        }
        if let Some(s) = &self.x_status {
            let _ = writeln!(out, "X: {s}");
        }
        if let Some(y) = &self.y {
            let _ = writeln!(out, "Y (doubled exponents t1 t2): {}", render(&y.series));
        }
        if let Some(t) = &self.trace {
            let _ = writeln!(out, "trace (exponents u t, exact to {}): {}", t.exact_to, render(&t.series));
        }
        for c in &self.checks {
            let _ = writeln!(out, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.check, c.detail);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "  first difference at {:?}: {} vs {}", w.key, w.left, w.right);
            }
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                let _ = writeln!(out, "time {k}: {v} ms");
            }
        }
        out
    }
}

fn render<C: braidhom_core::laurent::Coeff + std::fmt::Display, const N: usize>(s: &Laurent<C, N>) -> String {
    if s.is_empty() {
        return "0".into();
    }
    s.terms().map(|(e, c)| format!("({c}){e:?}")).collect::<Vec<_>>().join(" + ")
}

fn render_numerator(n: &Numerator) -> String {
    if n.is_empty() {
        return "0".into();
    }
    n.iter().map(|(e, c)| format!("{c}q^{e}")).collect::<Vec<_>>().join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use braidhom_core::invariants::conventions;

    #[test]
    fn json_round_trip() {
        let input = RunConfig { type_tag: "A1".into(), strands: Some(2), braid: "1".into(), cutoff: 3, margin: 1, minimize: true };
        let mut doc = ResultDocument::new("invariant", input, conventions());
        let mut t = TriGradedTable::new(1, 3);
        t.dims.insert((1, 1, 0), 1);
        doc.table = Some(t);
        doc.hilbert.push(HilbertEntry { i: 1, j: 1, numerator: Some(Numerator::from([(0, 1), (1, -1)])), error: None });
        let s = doc.to_json();
        assert_eq!(ResultDocument::from_json(&s).unwrap(), doc);
    }
}
