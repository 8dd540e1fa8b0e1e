//! Criterion benchmarks for the clique-tree pipelines live under `benches/`;
//! this crate exists only to host them.
