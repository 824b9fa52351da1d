use thiserror::Error;

use crate::subset::KSubset;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("(k={k}, n={n}, ell={ell}) is infeasible: k mod d = {residue} with d = {d}, need 0, 1 or d-1")]
    Infeasible {
        k: u32,
        n: u32,
        ell: u32,
        d: u32,
        residue: u32,
    },

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("malformed subset: {0}")]
    MalformedSubset(String),

    #[error("duplicate member {0} in collection")]
    DuplicateMember(KSubset),

    #[error("collection is not weakly separated ({0} failing pairs)")]
    NotWeaklySeparated(usize),

    #[error("collection is not maximal: {0}")]
    NotMaximal(String),

    #[error("invalid orbit order: {0}")]
    InvalidOrder(String),

    #[error("{0} is not in the given set")]
    NotAMember(u32),

    #[error("stage {s} out of range 1..={max}")]
    StageOutOfRange { s: u32, max: u32 },

    #[error("instance too large for exhaustive search: {0}")]
    OverBudget(String),

    #[error("malformed tiling: {0}")]
    MalformedTiling(String),

    #[error("malformed plabic graph: {0}")]
    MalformedGraph(String),

    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),

    #[error("input graph is not trivalent: vertex {vertex} has degree {degree}")]
    NotTrivalent { vertex: usize, degree: usize },

    #[error("weave assembly failed: {0}")]
    LayerMismatch(String),

    #[error("boundary endpoint without slot: {0}")]
    UnslottedEndpoint(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("unsupported artifact: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
