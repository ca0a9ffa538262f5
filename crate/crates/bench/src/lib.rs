//! Benchmarks for the flow solvers and analyses; see `benches/flow.rs`.
