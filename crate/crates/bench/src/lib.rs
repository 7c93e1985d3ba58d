//! Criterion benchmarks for `bongle-core`. See `benches/`.
