//! Criterion benchmarks for the simulator; see `benches/pipeline.rs`.
//!
//! ```text
//! cargo bench -p noon-sim-bench
//! ```
