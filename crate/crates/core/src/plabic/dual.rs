use std::collections::BTreeMap;

use super::graph::{Draft, PlabicGraph, VertexKind};
use super::tiling::PlabicTiling;
use crate::error::{Error, Result};
use crate::subset::KSubset;

/// `G_D`: one vertex per nontrivial clique, one edge per tiling edge. An
/// outer tiling edge `I_i — I_{i+1}` belongs to a two-member clique, which
/// becomes a bivalent vertex between the face vertex and marked point `i`
/// and is then removed by the deletion move.
pub fn dual_plabic_graph(t: &PlabicTiling) -> Result<PlabicGraph> {
    let n = t.n;
    let mut draft = Draft::new(n);
    let fv: Vec<usize> =
        t.faces.iter().map(|f| draft.add_vertex(VertexKind::Internal(f.color))).collect();

    let mut slots: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (fi, f) in t.faces.iter().enumerate() {
        let m = f.boundary.len();
        for j in 0..m {
            let (a, b) = (f.boundary[j], f.boundary[(j + 1) % m]);
            slots.entry((a.min(b), a.max(b))).or_default().push((fi, j));
        }
    }
    let marked_of: BTreeMap<(usize, usize), u32> = (1..=n)
        .map(|i| {
            let a = interval_index(t, i)?;
            let b = interval_index(t, i % n + 1)?;
            Ok(((a.min(b), a.max(b)), i))
        })
        .collect::<Result<_>>()?;

    let mut dart_at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut bivalent = Vec::new();
    for (edge, owners) in &slots {
        match owners.as_slice() {
            [(f1, j1), (f2, j2)] => {
                let (d1, d2) = draft.add_edge(fv[*f1], fv[*f2]);
                dart_at.insert((*f1, *j1), d1);
                dart_at.insert((*f2, *j2), d2);
            }
            [(f, j)] => {
                let i = *marked_of
                    .get(edge)
                    .ok_or_else(|| Error::MalformedTiling(format!("edge {edge:?} borders one face but is not outer")))?;
                let trivial = draft.add_vertex(VertexKind::Internal(t.faces[*f].color.flip()));
                let (to_face_from_b, to_b_from_face) = draft.add_edge(trivial, fv[*f]);
                let (to_b_from_mark, to_mark) = draft.add_edge(draft_marked(i), trivial);
                draft.rot[draft_marked(i)] = vec![to_b_from_mark];
                draft.rot[trivial] = vec![to_mark, to_face_from_b];
                dart_at.insert((*f, *j), to_b_from_face);
                bivalent.push(trivial);
            }
            _ => return Err(Error::MalformedTiling(format!("edge {edge:?} borders {} faces", owners.len()))),
        }
    }
    for (fi, f) in t.faces.iter().enumerate() {
        draft.rot[fv[fi]] = (0..f.boundary.len()).map(|j| dart_at[&(fi, j)]).collect();
    }
    for b in bivalent {
        draft.smooth(b)?;
    }
    draft.finish()
}

fn draft_marked(i: u32) -> usize {
    i as usize - 1
}

fn interval_index(t: &PlabicTiling, i: u32) -> Result<usize> {
    let iv = KSubset::interval(t.n, i, t.k)?;
    t.index_of(&iv).ok_or_else(|| Error::MalformedTiling(format!("interval {iv} missing")))
}
