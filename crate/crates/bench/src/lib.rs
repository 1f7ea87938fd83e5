//! Criterion benchmarks for the search, depth and construction paths; see `benches/`.
