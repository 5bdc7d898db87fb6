//! Criterion benchmarks for the embedding pipeline live in `benches/`.
