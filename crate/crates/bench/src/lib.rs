//! Benchmarks for superh-core; see `benches/`.

/// Cells used across the benchmarks: one classical, one window, one generic.
pub const CELLS: [(usize, usize, usize); 3] = [(3, 0, 6), (2, 1, 4), (4, 2, 4)];
