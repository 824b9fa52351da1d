//! Trivalent resolution that commutes with the rotation.
//!
//! A vertex of degree `m > 3` is combed into a caterpillar of `m - 3`
//! splits starting at one of its darts. The dart is chosen from the labels
//! of the faces around the vertex in a way that only depends on those labels
//! up to a common cyclic shift, so the images of a vertex under the rotation
//! get the images of its tree.

use serde::Serialize;

use super::graph::{Color, PlabicGraph};
use crate::error::{Error, Result};
use crate::subset::KSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResolutionPolicy {
    pub ell: u32,
    /// Shift applied to the labels before breaking ties at vertices whose
    /// surroundings are invariant under some rotation.
    pub tie_shift: u32,
}

impl ResolutionPolicy {
    pub fn equivariant(ell: u32) -> Self {
        ResolutionPolicy { ell, tie_shift: 0 }
    }

    /// The policy the rotated graph would use: ties broken after shifting by `ell`.
    pub fn rotated(self) -> Self {
        ResolutionPolicy { tie_shift: self.ell, ..self }
    }
}

/// A vertex of degree at least four and the tree chosen for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionSite {
    pub color: Color,
    /// Face labels around the vertex, counterclockwise, starting at the
    /// face left of the first dart of the caterpillar.
    pub faces: Vec<KSubset>,
    /// More than one starting dart was canonical.
    pub tied: bool,
    /// The face labels around the vertex are permuted by `+ ell`.
    pub fixed: bool,
}

#[derive(Debug, Clone)]
pub struct Resolved {
    pub graph: PlabicGraph,
    pub sites: Vec<ResolutionSite>,
    /// Input vertex to output vertex; `usize::MAX` for smoothed vertices.
    pub vertex_map: Vec<usize>,
    /// Input dart to output dart; `usize::MAX` for darts that were merged away.
    pub dart_map: Vec<usize>,
}

fn sorted_shift(keys: &[KSubset], t: i64) -> Vec<KSubset> {
    let mut v: Vec<KSubset> = keys.iter().map(|k| k.shift(t)).collect();
    v.sort_unstable();
    v
}

/// Picks the dart at which the caterpillar starts: `key` are the face
/// labels left of each dart in rotation order. Returns the index, whether
/// it was a tie and whether the site is fixed by `+ ell`.
pub(crate) fn choose_start(keys: &[KSubset], n: u32, policy: ResolutionPolicy) -> (usize, bool, bool) {
    let normal: Vec<Vec<KSubset>> = (0..n as i64).map(|t| sorted_shift(keys, -t)).collect();
    let best = normal.iter().min().expect("n > 0");
    let shifts: Vec<i64> = (0..n as i64).filter(|&t| normal[t as usize] == *best).collect();
    let value = |k: &KSubset| shifts.iter().map(|&t| k.shift(-t)).min().expect("some shift attains the minimum");
    let values: Vec<KSubset> = keys.iter().map(value).collect();
    let low = *values.iter().min().expect("vertex has darts");
    let tied: Vec<usize> = (0..keys.len()).filter(|&i| values[i] == low).collect();
    let pick = *tied
        .iter()
        .min_by_key(|&&i| keys[i].shift(-(policy.tie_shift as i64)))
        .expect("at least one candidate");
    let fixed = sorted_shift(keys, policy.ell as i64) == sorted_shift(keys, 0);
    (pick, tied.len() > 1, fixed)
}

/// Removes bivalent vertices and expands every vertex of degree `m > 3`
/// into a caterpillar of trivalent vertices. Face labels are unchanged.
pub fn make_trivalent(g: &PlabicGraph, policy: ResolutionPolicy) -> Result<Resolved> {
    let labeling = g.labeling()?;
    let mut draft = g.clone().into_draft();
    let mut plans = Vec::new();
    for v in g.internal_vertices() {
        match g.degree(v) {
            0 | 1 => {
                return Err(Error::MalformedGraph(format!("internal vertex {v} has degree {}", g.degree(v))));
            }
            2 => draft.smooth(v)?,
            3 => {}
            _ => {
                let keys: Vec<KSubset> = g
                    .rotation(v)
                    .iter()
                    .map(|&d| {
                        labeling.left_label(d).ok_or_else(|| Error::MalformedGraph(format!("dart {d} faces the outside")))
                    })
                    .collect::<Result<_>>()?;
                let (start, tied, fixed) = choose_start(&keys, g.n(), policy);
                let m = keys.len();
                let faces = (0..m).map(|i| keys[(start + i) % m]).collect();
                let color = g.kind(v).color().expect("internal");
                plans.push((v, g.rotation(v)[start], ResolutionSite { color, faces, tied, fixed }));
            }
        }
    }
    let mut sites = Vec::with_capacity(plans.len());
    for (v, first, site) in plans {
        let at = draft.rot[v].iter().position(|&d| d == first).expect("dart still at its vertex");
        draft.split(v, at, 2)?;
        while draft.rot[v].len() > 3 {
            draft.split(v, 0, 2)?;
        }
        sites.push(site);
    }
    let (graph, vertex_map, dart_map) = draft.finish_mapped()?;
    Ok(Resolved { graph, sites, vertex_map, dart_map })
}
