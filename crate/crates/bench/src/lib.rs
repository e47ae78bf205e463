//! Criterion benchmarks for the ietkit pipeline live in `benches/pipeline.rs`.
