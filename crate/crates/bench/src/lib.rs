//! Benchmark-only crate; see `benches/mode_numerics.rs`.
