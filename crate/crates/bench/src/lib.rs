//! Criterion benchmarks for the reliability kernels live in `benches/`.
