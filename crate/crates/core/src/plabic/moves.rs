use serde::Serialize;

use super::graph::{Color, Labeling, PlabicGraph, VertexKind};
use crate::error::{Error, Result};
use crate::subset::KSubset;

/// A local rewrite at a named site. Vertices and darts are indices into
/// the graph the move is applied to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Removes an internal vertex of degree two.
    DeleteBivalent { vertex: usize },
    /// Contracts the edge of `dart` when both ends are internal and share a color.
    ContractSameColor { dart: usize },
    /// Inverse of a contraction: `len` consecutive darts of `vertex`,
    /// starting at rotation index `start`, move onto a new vertex of the same
    /// color joined to `vertex`.
    Expand { vertex: usize, start: usize, len: usize },
    /// Recolors the four corners of the square face with this label.
    SquareMove { face: KSubset },
}

pub fn apply_move(g: &PlabicGraph, mv: &Move) -> Result<PlabicGraph> {
    let na = |m: String| Err(Error::MoveNotApplicable(m));
    match *mv {
        Move::DeleteBivalent { vertex } => {
            if vertex >= g.num_vertices() || g.kind(vertex).color().is_none() {
                return na(format!("{vertex} is not an internal vertex"));
            }
            let mut draft = g.clone().into_draft();
            draft.smooth(vertex)?;
            draft.finish()
        }
        Move::ContractSameColor { dart } => {
            if dart >= g.num_darts() {
                return na(format!("no dart {dart}"));
            }
            let (u, v) = (g.tail(dart), g.head(dart));
            match (g.kind(u).color(), g.kind(v).color()) {
                (Some(a), Some(b)) if a == b => {}
                _ => return na(format!("dart {dart} does not join two internal vertices of one color")),
            }
            if g.rotation(u).iter().filter(|&&d| g.head(d) == v).count() > 1 {
                return na(format!("vertices {u} and {v} are joined twice"));
            }
            let back = g.twin(dart);
            let mut draft = g.clone().into_draft();
            let rv = draft.rot[v].clone();
            let at = rv.iter().position(|&d| d == back).expect("twin at head");
            let inserted: Vec<usize> = (1..rv.len()).map(|i| rv[(at + i) % rv.len()]).collect();
            for &d in &inserted {
                draft.tail[d] = u;
            }
            let pos = draft.rot[u].iter().position(|&d| d == dart).expect("dart at tail");
            draft.rot[u].splice(pos..=pos, inserted);
            draft.live[dart] = false;
            draft.live[back] = false;
            draft.remove_vertex(v);
            draft.finish()
        }
        Move::Expand { vertex, start, len } => {
            if vertex >= g.num_vertices() || g.kind(vertex).color().is_none() {
                return na(format!("{vertex} is not an internal vertex"));
            }
            let mut draft = g.clone().into_draft();
            draft.split(vertex, start, len)?;
            draft.finish()
        }
        Move::SquareMove { face } => {
            let labeling = g.labeling()?;
            let corners = square_corners(g, &labeling, &face)?;
            let mut draft = g.clone().into_draft();
            for v in corners {
                draft.kinds[v] = draft.kinds[v].map(|k| match k {
                    VertexKind::Internal(c) => VertexKind::Internal(c.flip()),
                    b => b,
                });
            }
            draft.finish()
        }
    }
}

/// Corners of a square face: four trivalent internal vertices of
/// alternating color.
fn square_corners(g: &PlabicGraph, labeling: &Labeling, face: &KSubset) -> Result<Vec<usize>> {
    let na = |m: String| Err(Error::MoveNotApplicable(m));
    let Some(f) = labeling.face_with_label(face) else {
        return na(format!("no face labeled {face:?}"));
    };
    let walk = &labeling.faces.walks[f];
    if walk.len() != 4 || walk.iter().any(|&d| d >= g.num_darts()) {
        return na(format!("face {face:?} is not an interior square"));
    }
    let corners: Vec<usize> = walk.iter().map(|&d| g.tail(d)).collect();
    let colors: Vec<Option<Color>> = corners.iter().map(|&v| g.kind(v).color()).collect();
    let alternating = (0..4).all(|i| matches!((colors[i], colors[(i + 1) % 4]), (Some(a), Some(b)) if a != b));
    if !alternating {
        return na(format!("corners of {face:?} do not alternate in color"));
    }
    if let Some(&v) = corners.iter().find(|&&v| g.degree(v) != 3) {
        return na(format!("corner {v} of {face:?} is not trivalent"));
    }
    let mut distinct = corners.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 4 {
        return na(format!("face {face:?} repeats a corner"));
    }
    Ok(corners)
}

/// The label the square face takes after the move: with `S` the common
/// part and `U` the union of the four neighbouring labels, the old label
/// `S ∪ {a, c}` becomes `U ∖ {a, c}`.
pub fn square_move_label(g: &PlabicGraph, face: &KSubset) -> Result<KSubset> {
    let labeling = g.labeling()?;
    square_corners(g, &labeling, face)?;
    let f = labeling.face_with_label(face).expect("checked above");
    let neighbours: Vec<KSubset> = labeling.faces.walks[f]
        .iter()
        .map(|&d| {
            labeling
                .left_label(g.twin(d))
                .ok_or_else(|| Error::MoveNotApplicable(format!("face {face:?} touches the outside")))
        })
        .collect::<Result<_>>()?;
    let common = neighbours.iter().skip(1).fold(neighbours[0], |acc, s| acc.intersection(s));
    let union = neighbours.iter().skip(1).fold(neighbours[0], |acc, s| acc.union(s));
    Ok(union.difference(&face.difference(&common)))
}

/// Labels of the faces where a square move applies.
pub fn square_faces(g: &PlabicGraph) -> Result<Vec<KSubset>> {
    let labeling = g.labeling()?;
    Ok(labeling.labels().into_iter().filter(|s| square_corners(g, &labeling, s).is_ok()).collect())
}
