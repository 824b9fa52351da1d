//! Cyclically symmetric maximal weakly separated collections, their plabic
//! tilings and graphs, and the weaves obtained from them by iterated T-shifts.

mod cmap;
pub mod error;
pub mod generator;
pub mod io;
pub mod params;
pub mod plabic;
pub mod render;
pub mod separation;
pub mod subset;
pub mod weave;

pub use error::{Error, Result};
pub use generator::{generate, generate_with_trace, GeneratorTrace, OrbitOrder};
pub use params::{feasibility, Feasibility, Params};
pub use separation::{is_maximal, is_rho_symmetric, is_weakly_separated, is_ws_collection, separation_witness};
pub use subset::{cyclic_shift_subset, rho_orbit, wrap, Collection, KSubset, MAX_N};
pub use plabic::{build_tiling, cliques, dual_plabic_graph, make_trivalent, PlabicGraph, PlabicTiling, ResolutionPolicy};
pub use weave::{build_weave, symmetric_weave_pipeline, t_shift, BraidWord, PipelineReport, WeaveGraph};
