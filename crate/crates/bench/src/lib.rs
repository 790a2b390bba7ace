//! Criterion benchmarks for the stackoid pipeline live in `benches/`.
