//! Construction of `ρ^ℓ`-symmetric maximal weakly separated collections.
//!
//! The generator works on plain sorted element lists rather than [`KSubset`]
//! because the folding case runs on the lifted ground set `[dℓ]`, which can
//! exceed [`crate::MAX_N`] even when `n` does not.

mod fold;
mod formal;
mod informal;
mod oracle;
mod order;

pub use fold::{fold_map_apply, fold_map_invert, generate, generate_with_trace, FoldMap};
pub use formal::{
    build_b_s, build_l_s, generate_divisible, generate_divisible_trace, ground_sets, index_window, interval_i,
    predicted_sizes, successor, DivisibleInstance, GeneratorTrace, Prediction, StageTrace,
};
pub use informal::{informal_generate, informal_walks, InformalWalk};
pub use oracle::{oracle_enumerate, OracleMode, OracleOptions};
pub use order::OrbitOrder;

use crate::error::Result;
use crate::subset::{Collection, KSubset};

/// Sorted, duplicate-free elements of some ground set `[m]`.
pub type Elems = Vec<u32>;

pub(crate) fn shift_elems(e: &[u32], t: u32, n: u32) -> Elems {
    let mut out: Elems = e.iter().map(|&x| (x - 1 + t) % n + 1).collect();
    out.sort_unstable();
    out
}

pub(crate) fn to_collection<'a, I: IntoIterator<Item = &'a Elems>>(n: u32, k: u32, sets: I) -> Result<Collection> {
    let members = sets
        .into_iter()
        .map(|e| KSubset::new(n, e.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    Collection::new(n, k, members)
}
