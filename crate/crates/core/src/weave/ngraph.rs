use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::tshift::{t_shift, Provenance};
use crate::error::{Error, Result};
use crate::plabic::{Color, PlabicGraph, ResolutionPolicy, ResolutionSite, VertexKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeaveVertex {
    /// Three `σ_layer` edges. `color` is the vertex color in that layer's
    /// plabic graph.
    Trivalent { layer: u32, color: Color },
    /// Six edges alternating `σ_lower`, `σ_{lower+1}`: a black vertex of
    /// layer `lower` merged with the white vertex it becomes one layer up.
    Hexavalent { lower: u32 },
    /// Endpoint of layer `layer` at boundary slot `(point, layer)`.
    Boundary { point: u32, layer: u32 },
}

/// Union of the layers `G_1, …, G_{k-1}` as one rotation system. Every
/// dart carries the index of its layer, i.e. of its Artin generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeaveGraph {
    pub n: u32,
    /// Rank of the graph the weave was built from; the layers are `1..k`.
    pub k: u32,
    pub vertices: Vec<WeaveVertex>,
    /// Counterclockwise darts at each vertex.
    pub rot: Vec<Vec<usize>>,
    pub tail: Vec<usize>,
    pub twin: Vec<usize>,
    pub layer: Vec<u32>,
}

/// A positive braid word; entries are Artin generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BraidWord(pub Vec<u32>);

impl BraidWord {
    /// `(σ_1 … σ_{k-1})^n`.
    pub fn torus(k: u32, n: u32) -> Self {
        BraidWord((0..n).flat_map(|_| 1..k).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|t| {
                t.strip_prefix('s')
                    .and_then(|x| x.parse::<u32>().ok())
                    .filter(|&x| x > 0)
                    .ok_or_else(|| Error::Schema(format!("bad braid letter {t:?}")))
            })
            .collect::<Result<_>>()
            .map(BraidWord)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.0.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", letters.join(" "))
    }
}

impl From<BraidWord> for String {
    fn from(b: BraidWord) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for BraidWord {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        BraidWord::parse(&s)
    }
}

/// The layers of a weave with the bookkeeping of each shift.
#[derive(Debug, Clone)]
pub struct Layers {
    /// `G_1, …, G_{k-1}`.
    pub graphs: Vec<PlabicGraph>,
    /// `provenance[i]` relates the blacks of `graphs[i - 1]` (or of the
    /// input for `i = 0`) to the whites of `graphs[i]`.
    pub provenance: Vec<Vec<Provenance>>,
    /// Resolution sites of each shift.
    pub sites: Vec<Vec<ResolutionSite>>,
}

/// `G_1 = G↓, G_2 = G_1↓, …, G_{k-1}`.
pub fn shift_layers(g: &PlabicGraph, policy: ResolutionPolicy) -> Result<Layers> {
    let k = g.rank()?;
    let mut layers = Layers { graphs: Vec::new(), provenance: Vec::new(), sites: Vec::new() };
    let mut current = g.clone();
    for _ in 1..k {
        let shifted = t_shift(&current, policy)?;
        current = shifted.graph.clone();
        layers.graphs.push(shifted.graph);
        layers.provenance.push(shifted.provenance);
        layers.sites.push(shifted.sites);
    }
    Ok(layers)
}

/// Assembles `𝔴(G)` from a trivalent graph of rank `k ≥ 2`.
pub fn build_weave(g: &PlabicGraph, policy: ResolutionPolicy) -> Result<WeaveGraph> {
    let layers = shift_layers(g, policy)?;
    assemble(g.n(), &layers)
}

pub(crate) fn assemble(n: u32, layers: &Layers) -> Result<WeaveGraph> {
    let depth = layers.graphs.len();
    if depth == 0 {
        return Err(Error::LayerMismatch("need rank at least 2".into()));
    }
    let k = depth as u32 + 1;
    let mut w = WeaveGraph { n, k, vertices: Vec::new(), rot: Vec::new(), tail: Vec::new(), twin: Vec::new(), layer: Vec::new() };

    // Darts of layer i (0-based) start at offset[i].
    let mut offset = Vec::with_capacity(depth);
    for (i, g) in layers.graphs.iter().enumerate() {
        offset.push(w.tail.len());
        for d in 0..g.num_darts() {
            w.tail.push(usize::MAX);
            w.twin.push(offset[i] + g.twin(d));
            w.layer.push(i as u32 + 1);
        }
    }

    let mut vid: Vec<Vec<usize>> = layers.graphs.iter().map(|g| vec![usize::MAX; g.num_vertices()]).collect();
    for (i, g) in layers.graphs.iter().enumerate() {
        let layer = i as u32 + 1;
        for v in 0..g.num_vertices() {
            let kind = match g.kind(v) {
                VertexKind::Boundary(m) => WeaveVertex::Boundary { point: m, layer },
                VertexKind::Internal(Color::White) if i > 0 => continue,
                VertexKind::Internal(Color::Black) if i + 1 < depth => WeaveVertex::Hexavalent { lower: layer },
                VertexKind::Internal(color) => WeaveVertex::Trivalent { layer, color },
            };
            vid[i][v] = w.vertices.len();
            w.vertices.push(kind);
            w.rot.push(g.rotation(v).iter().map(|&d| offset[i] + d).collect());
        }
    }

    for i in 1..depth {
        let upper = &layers.graphs[i];
        let lower = &layers.graphs[i - 1];
        let mut claimed = vec![false; upper.num_vertices()];
        for p in &layers.provenance[i] {
            let h = vid[i - 1][p.black];
            if h == usize::MAX || lower.kind(p.black) != VertexKind::Internal(Color::Black) {
                return Err(Error::LayerMismatch(format!("vertex {} of layer {i} is not black", p.black)));
            }
            if upper.kind(p.white) != VertexKind::Internal(Color::White) || std::mem::replace(&mut claimed[p.white], true) {
                return Err(Error::LayerMismatch(format!("white vertex {} of layer {} claimed twice", p.white, i + 1)));
            }
            if p.darts.len() != 3 || p.darts.iter().map(|&(d, _)| d).ne(lower.rotation(p.black).iter().copied()) {
                return Err(Error::LayerMismatch(format!("darts of black vertex {} out of order", p.black)));
            }
            w.rot[h] = p.darts.iter().flat_map(|&(d, e)| [offset[i - 1] + d, offset[i] + e]).collect();
            vid[i][p.white] = h;
        }
        if let Some(v) = upper.internal_vertices().find(|&v| upper.kind(v) == VertexKind::Internal(Color::White) && !claimed[v]) {
            return Err(Error::LayerMismatch(format!("white vertex {v} of layer {} has no black vertex below", i + 1)));
        }
    }

    for (i, g) in layers.graphs.iter().enumerate() {
        for d in 0..g.num_darts() {
            w.tail[offset[i] + d] = vid[i][g.tail(d)];
        }
    }
    Ok(w)
}

impl WeaveGraph {
    pub fn num_layers(&self) -> u32 {
        self.k - 1
    }

    pub fn count_hexavalent(&self) -> usize {
        self.vertices.iter().filter(|v| matches!(v, WeaveVertex::Hexavalent { .. })).count()
    }

    pub fn count_trivalent(&self) -> usize {
        self.vertices.iter().filter(|v| matches!(v, WeaveVertex::Trivalent { .. })).count()
    }

    /// Boundary endpoints as `(point, layer, vertex)` in counterclockwise slot order.
    pub fn slots(&self) -> Vec<(u32, u32, usize)> {
        let mut s: Vec<(u32, u32, usize)> = self
            .vertices
            .iter()
            .enumerate()
            .filter_map(|(v, k)| match k {
                WeaveVertex::Boundary { point, layer } => Some((*point, *layer, v)),
                _ => None,
            })
            .collect();
        s.sort_unstable();
        s
    }

    /// Recovers layer `j` as a plabic graph.
    pub fn layer_graph(&self, j: u32) -> Result<PlabicGraph> {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut points = vec![usize::MAX; self.n as usize];
        let mut internal = Vec::new();
        for (v, kind) in self.vertices.iter().enumerate() {
            let color = match *kind {
                WeaveVertex::Boundary { point, layer } if layer == j => {
                    if point == 0 || point > self.n || points[point as usize - 1] != usize::MAX {
                        return Err(Error::UnslottedEndpoint(format!("layer {j} point {point}")));
                    }
                    points[point as usize - 1] = v;
                    continue;
                }
                WeaveVertex::Trivalent { layer, color } if layer == j => color,
                WeaveVertex::Hexavalent { lower } if lower == j => Color::Black,
                WeaveVertex::Hexavalent { lower } if lower + 1 == j => Color::White,
                _ => continue,
            };
            internal.push((v, color));
        }
        if let Some(m) = points.iter().position(|&v| v == usize::MAX) {
            return Err(Error::UnslottedEndpoint(format!("layer {j} has no endpoint at point {}", m + 1)));
        }
        let mut kinds = Vec::new();
        for (m, &v) in points.iter().enumerate() {
            vmap[v] = kinds.len();
            kinds.push(VertexKind::Boundary(m as u32 + 1));
        }
        for &(v, c) in &internal {
            vmap[v] = kinds.len();
            kinds.push(VertexKind::Internal(c));
        }
        let darts: Vec<usize> = (0..self.tail.len()).filter(|&d| self.layer[d] == j).collect();
        let mut dmap = vec![usize::MAX; self.tail.len()];
        for (i, &d) in darts.iter().enumerate() {
            dmap[d] = i;
        }
        let tail = darts.iter().map(|&d| vmap[self.tail[d]]).collect::<Vec<_>>();
        let twin = darts.iter().map(|&d| dmap[self.twin[d]]).collect::<Vec<_>>();
        if tail.iter().chain(&twin).any(|&x| x == usize::MAX) {
            return Err(Error::LayerMismatch(format!("layer {j} has an edge leaving the layer")));
        }
        let mut rot = vec![Vec::new(); kinds.len()];
        for (v, ds) in self.rot.iter().enumerate() {
            if vmap[v] != usize::MAX {
                rot[vmap[v]] = ds.iter().filter(|&&d| self.layer[d] == j).map(|&d| dmap[d]).collect();
            }
        }
        PlabicGraph::from_parts(self.n, kinds, rot, tail, twin)
    }
}

impl crate::cmap::DartMap for WeaveGraph {
    fn dart_count(&self) -> usize {
        self.tail.len()
    }

    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn dart_tail(&self, d: usize) -> usize {
        self.tail[d]
    }

    fn dart_twin(&self, d: usize) -> usize {
        self.twin[d]
    }

    fn dart_next(&self, d: usize) -> usize {
        let r = &self.rot[self.tail[d]];
        let i = r.iter().position(|&x| x == d).expect("dart in its rotation");
        r[(i + 1) % r.len()]
    }
}

/// Checks the local N-graph conditions, the rotation system and the
/// planarity of every layer. Returns the violations found.
pub fn validate_ngraph(w: &WeaveGraph) -> Vec<String> {
    let mut out = Vec::new();
    let nd = w.tail.len();
    if w.twin.len() != nd || w.layer.len() != nd || w.rot.len() != w.vertices.len() {
        out.push("array lengths disagree".to_string());
        return out;
    }
    let mut seen = vec![0u32; nd];
    for (v, ds) in w.rot.iter().enumerate() {
        for &d in ds {
            if d >= nd || w.tail[d] != v {
                out.push(format!("dart {d} misplaced at vertex {v}"));
            } else {
                seen[d] += 1;
            }
        }
    }
    for d in 0..nd {
        if seen[d] != 1 {
            out.push(format!("dart {d} appears {} times in rotations", seen[d]));
        }
        let t = w.twin[d];
        if t >= nd || t == d || w.twin[t] != d {
            out.push(format!("dart {d} has an invalid twin"));
        } else if w.layer[t] != w.layer[d] {
            out.push(format!("edge of dart {d} changes label"));
        }
        if w.layer[d] == 0 || w.layer[d] >= w.k {
            out.push(format!("dart {d} has label σ_{} outside 1..{}", w.layer[d], w.k - 1));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (v, kind) in w.vertices.iter().enumerate() {
        let labels: Vec<u32> = w.rot[v].iter().map(|&d| w.layer[d]).collect();
        match *kind {
            WeaveVertex::Trivalent { layer, .. } => {
                if labels.len() != 3 || labels.iter().any(|&l| l != layer) {
                    out.push(format!("trivalent vertex {v} (σ_{layer}) has labels {labels:?}"));
                }
            }
            WeaveVertex::Hexavalent { lower } => {
                let alternating = labels.len() == 6
                    && (0..6).all(|i| {
                        let (a, b) = (labels[i], labels[(i + 1) % 6]);
                        (a == lower && b == lower + 1) || (a == lower + 1 && b == lower)
                    });
                if !alternating {
                    out.push(format!("hexavalent vertex {v} (σ_{lower}, σ_{}) has labels {labels:?}", lower + 1));
                }
            }
            WeaveVertex::Boundary { point, layer } => {
                if labels != [layer] {
                    out.push(format!("endpoint ({point}, {layer}) has labels {labels:?}"));
                }
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for j in 1..w.k {
        if let Err(e) = w.layer_graph(j) {
            out.push(format!("layer {j}: {e}"));
        }
    }
    out
}

/// Generators of the boundary endpoints read counterclockwise from slot `(1, 1)`.
pub fn boundary_braid(w: &WeaveGraph) -> Result<BraidWord> {
    let slots = w.slots();
    let mut seen = BTreeMap::new();
    for &(p, j, v) in &slots {
        if p == 0 || p > w.n || j == 0 || j >= w.k {
            return Err(Error::UnslottedEndpoint(format!("endpoint {v} at ({p}, {j})")));
        }
        if let Some(other) = seen.insert((p, j), v) {
            return Err(Error::UnslottedEndpoint(format!("endpoints {other} and {v} share slot ({p}, {j})")));
        }
    }
    slots
        .iter()
        .map(|&(_, _, v)| match w.rot[v].as_slice() {
            [d] => Ok(w.layer[*d]),
            _ => Err(Error::UnslottedEndpoint(format!("endpoint {v} has degree {}", w.rot[v].len()))),
        })
        .collect::<Result<_>>()
        .map(BraidWord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plabic::{build_tiling, dual_plabic_graph, make_trivalent};
    use crate::subset::Collection;

    fn weave(d: &Collection, ell: u32) -> WeaveGraph {
        let p = ResolutionPolicy::equivariant(ell);
        let g = dual_plabic_graph(&build_tiling(d).unwrap()).unwrap();
        build_weave(&make_trivalent(&g, p).unwrap().graph, p).unwrap()
    }

    #[test]
    fn hexagon_weave() {
        let d = Collection::parse("123 234 345 456 156 126 136 236 346 356", 6, 3).unwrap();
        let w = weave(&d, 3);
        assert_eq!(w.num_layers(), 2);
        assert_eq!(validate_ngraph(&w), Vec::<String>::new());
        assert_eq!(boundary_braid(&w).unwrap(), BraidWord::torus(3, 6));
        assert_eq!(boundary_braid(&w).unwrap().to_string(), "s1 s2 s1 s2 s1 s2 s1 s2 s1 s2 s1 s2");
        assert!(w.count_hexavalent() > 0);
    }

    #[test]
    fn single_layer_has_no_hexavalent() {
        let d = Collection::parse("12 23 34 45 15 13 14", 5, 2).unwrap();
        let w = weave(&d, 5);
        assert_eq!(w.count_hexavalent(), 0);
        assert_eq!(boundary_braid(&w).unwrap().to_string(), "s1 s1 s1 s1 s1");
        assert!(validate_ngraph(&w).is_empty());
    }

    #[test]
    fn corrupted_hexavalent_is_reported() {
        let d = Collection::parse("123 234 345 456 156 126 136 236 346 356", 6, 3).unwrap();
        let mut w = weave(&d, 3);
        let h = w.vertices.iter().position(|v| matches!(v, WeaveVertex::Hexavalent { .. })).unwrap();
        // σ1 σ1 σ2 σ2 σ1 σ2 instead of alternating.
        let r = w.rot[h].clone();
        w.rot[h] = vec![r[0], r[2], r[1], r[3], r[4], r[5]];
        let v = validate_ngraph(&w);
        assert!(v.iter().any(|m| m.contains("hexavalent")), "{v:?}");
    }

    #[test]
    fn braid_word_text() {
        let b = BraidWord::parse("s1 s2 s1").unwrap();
        assert_eq!(b.0, vec![1, 2, 1]);
        assert!(BraidWord::parse("s0").is_err());
        assert!(BraidWord::parse("x1").is_err());
    }
}
