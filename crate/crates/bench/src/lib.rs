//! Shared instances for the benchmarks.

/// `(k, n, ell)` triples exercised by the pipeline benches.
pub const INSTANCES: &[(u32, u32, u32)] = &[(3, 6, 3), (3, 6, 4), (4, 8, 2), (5, 10, 5), (4, 12, 3)];
