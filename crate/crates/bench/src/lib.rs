//! Criterion benchmarks for `monalg`; see `benches/kernels.rs`.
