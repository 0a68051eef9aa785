//! Benchmark-only crate; see the `decide` bench target.
