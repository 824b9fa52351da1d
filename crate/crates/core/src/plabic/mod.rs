//! Cliques, plabic tilings, plabic graphs and the moves between them.

mod clique;
mod dual;
mod graph;
pub(crate) use graph::Draft;
mod moves;
mod resolve;
mod symmetry;
mod tiling;

pub use clique::{cliques, Clique};
pub use dual::dual_plabic_graph;
pub use graph::{Color, Faces, Labeling, LabeledFace, PlabicGraph, VertexKind};
pub use moves::{apply_move, square_faces, square_move_label, Move};
pub use resolve::{make_trivalent, ResolutionPolicy, ResolutionSite, Resolved};
pub use symmetry::{rotational_symmetry_certificate, Certificate, RotationalSymmetry};
pub use tiling::{build_tiling, PlabicTiling, TilingFace};
