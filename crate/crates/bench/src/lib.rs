//! Criterion benchmarks for `satclock-core`; see `benches/`.
