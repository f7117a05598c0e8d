//! Criterion benchmarks for `eit-core` live in `benches/numerics.rs`.
