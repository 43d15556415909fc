//! Criterion benchmarks for the census kernels; see `benches/kernels.rs`.
//!
//! ```text
//! cargo bench -p cospec-bench
//! ```
