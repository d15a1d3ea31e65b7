//! Criterion benchmarks for exttype-core live in `benches/`.
