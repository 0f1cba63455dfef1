//! Criterion benchmarks for `tropsing-core`; see `benches/`.
