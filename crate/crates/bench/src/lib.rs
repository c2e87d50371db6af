//! Benchmarks for redei-core; see `benches/`.
