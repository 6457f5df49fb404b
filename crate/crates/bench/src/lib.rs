//! Criterion benchmarks for `inose-core`; see `benches/`.
