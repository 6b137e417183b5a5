//! Coxeter systems and braid words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Irreducible finite crystallographic types supported by the engine.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Irreducible {
    A(usize),
    B(usize),
    D(usize),
    G2,
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irreducible::A(n) => write!(f, "A{n}"),
            Irreducible::B(n) => write!(f, "B{n}"),
            Irreducible::D(n) => write!(f, "D{n}"),
            Irreducible::G2 => write!(f, "G2"),
        }
    }
}

impl Irreducible {
    pub fn rank(&self) -> usize {
        match self {
            Irreducible::A(n) | Irreducible::B(n) | Irreducible::D(n) => *n,
            Irreducible::G2 => 2,
        }
    }

    /// Coxeter matrix in the standard (Bourbaki) numbering.
    fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut edge = |i: usize, j: usize, v: u32| {
            m[i][j] = v;
            m[j][i] = v;
        };
        match self {
            Irreducible::A(_) => (1..n).for_each(|i| edge(i - 1, i, 3)),
            Irreducible::B(_) => {
                (1..n).for_each(|i| edge(i - 1, i, 3));
                if n >= 2 {
                    edge(n - 2, n - 1, 4);
                }
            }
            Irreducible::D(_) => {
                (1..n - 1).for_each(|i| edge(i - 1, i, 3));
                edge(n - 3, n - 1, 3);
            }
            Irreducible::G2 => edge(0, 1, 6),
        }
        m
    }
}

/// A finite Coxeter system `(W, S)` with generators `0..rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterSystem {
    matrix: Vec<Vec<u32>>,
    /// Irreducible components with the generators they contain, ordered by
    /// smallest generator.
    components: Vec<(Irreducible, Vec<usize>)>,
}

impl CoxeterSystem {
    /// Validates a Coxeter matrix and recognizes its type. An entry of 0
    /// stands for `m_st = infinity`.
    pub fn from_matrix(matrix: Vec<Vec<u32>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::NonSymmetric);
        }
        for i in 0..n {
            if matrix[i][i] != 1 {
                return Err(Error::BadDiagonal);
            }
            for j in 0..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NonSymmetric);
                }
                if i != j && matrix[i][j] == 1 {
                    return Err(Error::BadDiagonal);
                }
            }
        }
        let components = classify(&matrix)?;
        Ok(CoxeterSystem { matrix, components })
    }

    /// Type A_n: the braid group on `n + 1` strands.
    pub fn type_a(n: usize) -> Self {
        Self::from_irreducibles(&[Irreducible::A(n)])
    }

    pub fn from_irreducibles(parts: &[Irreducible]) -> Self {
        let n: usize = parts.iter().map(|p| p.rank()).sum();
        let mut m = vec![vec![2u32; n]; n];
        let mut off = 0;
        for p in parts {
            let pm = p.coxeter_matrix();
            for i in 0..p.rank() {
                for j in 0..p.rank() {
                    m[off + i][off + j] = pm[i][j];
                }
            }
            off += p.rank();
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        Self::from_matrix(m).expect("standard Coxeter matrices are valid")
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn m(&self, s: usize, t: usize) -> u32 {
        self.matrix[s][t]
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn components(&self) -> &[(Irreducible, Vec<usize>)] {
        &self.components
    }

    /// Type tag such as `A2`, `B3` or `A1xA1`; `A0` for the empty system.
    pub fn type_tag(&self) -> String {
        if self.components.is_empty() {
            return "A0".into();
        }
        self.components.iter().map(|(t, _)| t.to_string()).collect::<Vec<_>>().join("x")
    }

    /// `Some(n)` when this is type A_n (including A_0), i.e. the Artin braid
    /// group on `n + 1` strands in the standard numbering.
    pub fn type_a_rank(&self) -> Option<usize> {
        match self.components.as_slice() {
            [] => Some(0),
            [(Irreducible::A(n), gens)] if gens.iter().enumerate().all(|(i, g)| i == *g) => {
                // standard numbering means consecutive generators form the path
                (1..*n).all(|i| self.matrix[i - 1][i] == 3).then_some(*n)
            }
            _ => None,
        }
    }

    /// The subsystem on `gens` (kept in the given order) as a new system.
    pub fn subsystem(&self, gens: &[usize]) -> Result<Self> {
        let m = gens.iter().map(|&s| gens.iter().map(|&t| self.matrix[s][t]).collect()).collect();
        Self::from_matrix(m)
    }
}

impl FromStr for CoxeterSystem {
    type Err = Error;

    /// Parses tags like `A3`, `B2`, `D4`, `G2`, `I2(4)` or products `A1xB2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "A0" || s.is_empty() {
            return Ok(Self::from_irreducibles(&[]));
        }
        let mut parts = Vec::new();
        for part in s.split(['x', '*']) {
            let part = part.trim();
            let irr = if let Some(rest) = part.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
                match rest.parse::<u32>() {
                    Ok(2) => {
                        parts.push(Irreducible::A(1));
                        Irreducible::A(1)
                    }
                    Ok(3) => Irreducible::A(2),
                    Ok(4) => Irreducible::B(2),
                    Ok(6) => Irreducible::G2,
                    Ok(m) => return Err(Error::UnsupportedType(format!("I2({m}) needs an irrational realization"))),
                    Err(_) => return Err(Error::Parse(format!("bad dihedral tag {part}"))),
                }
            } else {
                let (letter, num) = part.split_at(part.chars().next().map_or(0, |c| c.len_utf8()));
                let n: usize = num.parse().map_err(|_| Error::Parse(format!("bad Coxeter type tag {part:?}")))?;
                match (letter, n) {
                    ("A", n) if n >= 1 => Irreducible::A(n),
                    ("B" | "C", 1) => Irreducible::A(1),
                    ("B" | "C", n) if n >= 2 => Irreducible::B(n),
                    ("D", n) if n >= 4 => Irreducible::D(n),
                    ("G", 2) => Irreducible::G2,
                    _ => return Err(Error::UnsupportedType(part.to_string())),
                }
            };
            parts.push(irr);
        }
        Ok(Self::from_irreducibles(&parts))
    }
}

fn classify(m: &[Vec<u32>]) -> Result<Vec<(Irreducible, Vec<usize>)>> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let s = comp[k];
            for t in 0..n {
                if t != s && m[s][t] != 2 && !seen[t] {
                    seen[t] = true;
                    comp.push(t);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push((classify_connected(m, &comp)?, comp));
    }
    Ok(out)
}

fn classify_connected(m: &[Vec<u32>], comp: &[usize]) -> Result<Irreducible> {
    let k = comp.len();
    let mut edges = Vec::new();
    for (a, &s) in comp.iter().enumerate() {
        for &t in &comp[a + 1..] {
            match m[s][t] {
                2 => {}
                0 => return Err(Error::UnsupportedType("infinite Coxeter group".into())),
                3 | 4 | 6 => edges.push((s, t, m[s][t])),
                v => {
                    return Err(Error::UnsupportedType(format!(
                        "m = {v} needs an irrational realization (real quadratic field)"
                    )))
                }
            }
        }
    }
    if k == 1 {
        return Ok(Irreducible::A(1));
    }
    if edges.len() != k - 1 {
        return Err(Error::UnsupportedType("Coxeter graph has a cycle (infinite group)".into()));
    }
    let degree = |s: usize| edges.iter().filter(|(a, b, _)| *a == s || *b == s).count();
    let max_deg = comp.iter().map(|&s| degree(s)).max().unwrap_or(0);
    let labels: Vec<u32> = edges.iter().map(|e| e.2).collect();
    let n_big = labels.iter().filter(|&&v| v > 3).count();
    if max_deg <= 2 {
        // a path
        if n_big == 0 {
            return Ok(Irreducible::A(k));
        }
        if n_big == 1 {
            let (s, t, v) = *edges.iter().find(|e| e.2 > 3).unwrap();
            if v == 6 {
                return if k == 2 { Ok(Irreducible::G2) } else { Err(Error::UnsupportedType("infinite Coxeter group".into())) };
            }
            if degree(s) == 1 || degree(t) == 1 {
                return Ok(Irreducible::B(k));
            }
            if k == 4 {
                return Err(Error::UnsupportedType("F4".into()));
            }
        }
        return Err(Error::UnsupportedType("infinite Coxeter group".into()));
    }
    if max_deg == 3 && n_big == 0 {
        let branch = *comp.iter().find(|&&s| degree(s) == 3).unwrap();
        let mut arms: Vec<usize> = Vec::new();
        for &(a, b, _) in edges.iter().filter(|(a, b, _)| *a == branch || *b == branch) {
            let mut prev = branch;
            let mut cur = if a == branch { b } else { a };
            let mut len = 1;
            loop {
                let next = edges.iter().find_map(|&(x, y, _)| {
                    if x == cur && y != prev {
                        Some(y)
                    } else if y == cur && x != prev {
                        Some(x)
                    } else {
                        None
                    }
                });
                match next {
                    Some(nx) => {
                        prev = cur;
                        cur = nx;
                        len += 1;
                    }
                    None => break,
                }
            }
            arms.push(len);
        }
        arms.sort_unstable();
        if arms[0] == 1 && arms[1] == 1 {
            return Ok(Irreducible::D(k));
        }
        return Err(Error::UnsupportedType(format!("E-type or affine graph with arms {arms:?}")));
    }
    Err(Error::UnsupportedType("unrecognized Coxeter graph".into()))
}

/// One crossing: a generator (0-based) with sign +1 or -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub sign: i8,
}

impl Letter {
    pub fn new(gen: usize, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1);
        Letter { gen, sign }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, sign: -self.sign }
    }
}

/// A word `sigma_{i1}^{e1} ... sigma_{ir}^{er}` in a braid group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    pub letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BraidWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// From signed 1-based generator indices, e.g. `[1, 1, -2]`.
    pub fn from_signed(v: &[i64]) -> Result<Self> {
        let mut letters = Vec::with_capacity(v.len());
        for &x in v {
            if x == 0 {
                return Err(Error::Parse("generator index 0 (indices are 1-based)".into()));
            }
            letters.push(Letter::new(x.unsigned_abs() as usize - 1, if x > 0 { 1 } else { -1 }));
        }
        Ok(BraidWord { letters })
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| (l.gen as i64 + 1) * l.sign as i64).collect()
    }

    /// Exponent sum.
    pub fn length(&self) -> i64 {
        self.letters.iter().map(|l| l.sign as i64).sum()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let n = letters.len();
            letters.rotate_left(k % n);
        }
        BraidWord { letters }
    }

    /// Appends the crossing `sigma_gen^sign` (Markov stabilization when `gen`
    /// is a new generator).
    pub fn stabilize(&self, gen: usize, sign: i8) -> Self {
        let mut letters = self.letters.clone();
        letters.push(Letter::new(gen, sign));
        BraidWord { letters }
    }

    /// Cancels adjacent `s s^-1` pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { letters: out }
    }

    /// The mirror word (every crossing sign flipped).
    pub fn mirror(&self) -> Self {
        BraidWord { letters: self.letters.iter().map(|l| l.inverse()).collect() }
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn validate(&self, rank: usize) -> Result<()> {
        match self.letters.iter().find(|l| l.gen >= rank) {
            Some(l) => Err(Error::GeneratorOutOfRange(l.gen as i64 + 1, rank)),
            None => Ok(()),
        }
    }

    /// Renumbers generators through `map` (used for parabolic embeddings).
    pub fn relabel(&self, map: &[usize]) -> Self {
        BraidWord { letters: self.letters.iter().map(|l| Letter::new(map[l.gen], l.sign)).collect() }
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Space- or comma-separated signed 1-based indices: `"1 1 -2"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut v = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let x: i64 = tok.parse().map_err(|_| Error::Parse(format!("bad letter {tok:?}")))?;
            v.push(x);
        }
        Self::from_signed(&v)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.to_signed().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", v.join(" "))
    }
}
