use serde::Serialize;

use crate::error::{Error, Result};
use crate::plabic::{make_trivalent, Color, PlabicGraph, ResolutionPolicy, ResolutionSite, VertexKind};

/// Where a black vertex of the input went: it becomes a white vertex of
/// the shifted graph, whose darts point into the faces left of the old darts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub black: usize,
    pub white: usize,
    /// `(d, e)` in the rotation order of `black`: `e` leaves `white` into
    /// the face left of `d`.
    pub darts: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct TShift {
    pub graph: PlabicGraph,
    pub provenance: Vec<Provenance>,
    pub sites: Vec<ResolutionSite>,
}

/// `G↓`. Every black vertex turns white, every face gets a black vertex
/// joined to the black corners of the face in boundary order, and the
/// boundary face after marked point `m` also joins the new point `m′`,
/// which replaces `m`. Old white vertices, old edges and old marked points
/// are dropped. Bivalent black vertices are smoothed and higher ones
/// expanded with `policy`.
pub fn t_shift(g: &PlabicGraph, policy: ResolutionPolicy) -> Result<TShift> {
    if let Some(v) = g.internal_vertices().find(|&v| g.degree(v) != 3) {
        return Err(Error::NotTrivalent { vertex: v, degree: g.degree(v) });
    }
    let n = g.n();
    let faces = g.faces();
    let nd = g.num_darts();
    let mut draft = crate::plabic::Draft::new(n);

    let blacks: Vec<usize> = g.internal_vertices().filter(|&v| g.kind(v) == VertexKind::Internal(Color::Black)).collect();
    let mut white_of = vec![usize::MAX; g.num_vertices()];
    for &v in &blacks {
        white_of[v] = draft.add_vertex(VertexKind::Internal(Color::White));
    }
    let mut center = vec![usize::MAX; faces.walks.len()];
    for f in 0..faces.walks.len() {
        if f != faces.outer {
            center[f] = draft.add_vertex(VertexKind::Internal(Color::Black));
        }
    }
    // Dart of the new edge at the face center, keyed by the old dart whose
    // left face it lies in.
    let mut at_center = vec![usize::MAX; nd];
    let mut spokes = Vec::with_capacity(blacks.len());
    for &v in &blacks {
        let mut darts = Vec::with_capacity(3);
        for &d in g.rotation(v) {
            let (e, back) = draft.add_edge(white_of[v], center[faces.face_of[d]]);
            at_center[d] = back;
            darts.push((d, e));
        }
        draft.rot[white_of[v]] = darts.iter().map(|&(_, e)| e).collect();
        spokes.push(darts);
    }
    for (f, walk) in faces.walks.iter().enumerate() {
        if f == faces.outer {
            continue;
        }
        let mut rot = Vec::new();
        for &x in walk {
            if x < nd {
                if at_center[x] != usize::MAX {
                    rot.push(at_center[x]);
                }
            } else if (x - nd).is_multiple_of(2) {
                let m = (x - nd) / 2;
                let (to_point, from_point) = draft.add_edge(center[f], m);
                draft.rot[m] = vec![from_point];
                rot.push(to_point);
            }
        }
        if rot.len() < 2 {
            return Err(Error::MalformedGraph(format!("face {f} would get a center of degree {}", rot.len())));
        }
        draft.rot[center[f]] = rot;
    }
    let (mid, vmap, dmap) = draft.finish_mapped()?;
    let resolved = make_trivalent(&mid, policy)?;
    let provenance = blacks
        .iter()
        .zip(spokes)
        .map(|(&v, darts)| Provenance {
            black: v,
            white: resolved.vertex_map[vmap[white_of[v]]],
            darts: darts.into_iter().map(|(d, e)| (d, resolved.dart_map[dmap[e]])).collect(),
        })
        .collect();
    Ok(TShift { graph: resolved.graph, provenance, sites: resolved.sites })
}
