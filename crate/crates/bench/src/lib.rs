//! Benchmark-only crate; the measurements live in `benches/identities.rs`.
//!
//! Kept separate from the library so criterion and its dependency tree
//! never enter the build graph of consumers.
