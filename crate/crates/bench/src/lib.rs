//! Criterion benchmarks for the K(k) solvers live in `benches/`.
