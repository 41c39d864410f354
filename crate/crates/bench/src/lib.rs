//! Benchmarks for the summation engine; see `benches/summation.rs`.
