//! Shared workloads for the benchmarks.

use braidhom_core::BraidWord;

/// `(type tag, braid, cutoff)`.
pub const WORKLOADS: &[(&str, &str, i64)] = &[
    ("A1", "1 1 1", 12),
    ("A2", "1 -2 1 -2", 8),
    ("A2", "1 2 1 2 1 2", 6),
    ("B2", "1 2 1 2", 8),
];

pub fn braid(s: &str) -> BraidWord {
    s.parse().expect("workload braid parses")
}
