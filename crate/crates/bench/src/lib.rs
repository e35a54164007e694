//! Benchmark harness for solvcoh; see `benches/`.
