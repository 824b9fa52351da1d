//! Plabic graphs as combinatorial maps.
//!
//! Every edge is a pair of darts. Each vertex keeps its outgoing darts in
//! counterclockwise order. Marked point `m` is vertex `m - 1` and has exactly
//! one dart. Faces are traced with the boundary circle added as `2n` virtual
//! arc darts, so the disk closes up into a sphere whose extra face is the
//! outside.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{wrap, KSubset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    /// Marked point `m` on the boundary circle.
    Boundary(u32),
    Internal(Color),
}

impl VertexKind {
    pub fn color(&self) -> Option<Color> {
        match self {
            VertexKind::Internal(c) => Some(*c),
            VertexKind::Boundary(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct PlabicGraph {
    n: u32,
    kinds: Vec<VertexKind>,
    rot: Vec<Vec<usize>>,
    tail: Vec<usize>,
    twin: Vec<usize>,
}

/// Serialized form: the raw arrays, validated on the way back in.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: u32,
    kinds: Vec<VertexKind>,
    rotations: Vec<Vec<usize>>,
    tails: Vec<usize>,
    twins: Vec<usize>,
}

impl From<PlabicGraph> for GraphRepr {
    fn from(g: PlabicGraph) -> Self {
        GraphRepr { n: g.n, kinds: g.kinds, rotations: g.rot, tails: g.tail, twins: g.twin }
    }
}

impl TryFrom<GraphRepr> for PlabicGraph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        PlabicGraph::from_parts(r.n, r.kinds, r.rotations, r.tails, r.twins)
    }
}

/// Faces of a graph, including the outside face of the closed-up sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Faces {
    /// Face to the left of each dart; virtual arc darts follow the real ones.
    pub face_of: Vec<usize>,
    /// Boundary walk of each face, face on the left.
    pub walks: Vec<Vec<usize>>,
    pub outer: usize,
}

/// One face with its strand label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledFace {
    pub walk: Vec<usize>,
    pub label: KSubset,
    /// Marked point `m` when the face is the boundary face between `m` and `m + 1`.
    pub boundary_after: Option<u32>,
}

/// Face labels of a graph; `faces[f]` for every face but the outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub faces: Faces,
    pub labeled: Vec<Option<LabeledFace>>,
}

impl Labeling {
    pub fn label_of_face(&self, f: usize) -> Option<KSubset> {
        self.labeled[f].as_ref().map(|lf| lf.label)
    }

    /// Label of the face to the left of a real dart.
    pub fn left_label(&self, dart: usize) -> Option<KSubset> {
        self.label_of_face(self.faces.face_of[dart])
    }

    pub fn labels(&self) -> BTreeSet<KSubset> {
        self.labeled.iter().flatten().map(|lf| lf.label).collect()
    }

    pub fn face_with_label(&self, label: &KSubset) -> Option<usize> {
        self.labeled.iter().position(|lf| lf.as_ref().is_some_and(|lf| lf.label == *label))
    }
}

impl PlabicGraph {
    /// Validates the raw map: darts pair up, rotations list each dart at its
    /// tail exactly once, marked points come first with degree one, the
    /// underlying graph is connected and the face count fits a disk.
    pub fn from_parts(n: u32, kinds: Vec<VertexKind>, rot: Vec<Vec<usize>>, tail: Vec<usize>, twin: Vec<usize>) -> Result<Self> {
        let bad = |m: String| Err(Error::MalformedGraph(m));
        if n < 2 || kinds.len() < n as usize || rot.len() != kinds.len() {
            return bad(format!("need {n} marked points and one rotation per vertex"));
        }
        if tail.len() != twin.len() {
            return bad("tail and twin lengths differ".into());
        }
        for (v, kind) in kinds.iter().enumerate() {
            match kind {
                VertexKind::Boundary(m) if v < n as usize && *m == v as u32 + 1 => {
                    if rot[v].len() != 1 {
                        return bad(format!("marked point {m} has degree {}", rot[v].len()));
                    }
                }
                VertexKind::Internal(_) if v >= n as usize => {}
                _ => return bad(format!("vertex {v} has kind {kind:?} out of place")),
            }
        }
        let mut seen = vec![false; tail.len()];
        for (v, ds) in rot.iter().enumerate() {
            for &d in ds {
                if d >= tail.len() || tail[d] != v || std::mem::replace(&mut seen[d], true) {
                    return bad(format!("dart {d} misplaced in rotation of vertex {v}"));
                }
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return bad(format!("dart {d} is in no rotation"));
        }
        for d in 0..twin.len() {
            if twin[d] >= twin.len() || twin[d] == d || twin[twin[d]] != d {
                return bad(format!("dart {d} has an invalid twin"));
            }
        }
        let g = PlabicGraph { n, kinds, rot, tail, twin };
        for d in 0..g.tail.len() {
            if let (VertexKind::Boundary(a), VertexKind::Boundary(b)) = (g.kind(g.tail[d]), g.kind(g.head(d))) {
                return bad(format!("marked points {a} and {b} are joined directly"));
            }
            if g.tail[d] == g.head(d) {
                return bad(format!("loop at vertex {}", g.tail[d]));
            }
        }
        if !g.is_connected() {
            return bad("graph is disconnected".into());
        }
        let faces = g.faces();
        // Sphere: V - (E + n) + F = 2.
        let euler = g.num_vertices() as i64 - (g.num_edges() + g.n as usize) as i64 + faces.walks.len() as i64;
        if euler != 2 {
            return bad(format!("rotation system is not planar (Euler characteristic {euler})"));
        }
        Ok(g)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.kinds.len()
    }

    pub fn num_darts(&self) -> usize {
        self.tail.len()
    }

    pub fn num_edges(&self) -> usize {
        self.tail.len() / 2
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn tail(&self, d: usize) -> usize {
        self.tail[d]
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail[self.twin[d]]
    }

    pub fn twin(&self, d: usize) -> usize {
        self.twin[d]
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.n as usize..self.kinds.len()
    }

    /// Vertex of marked point `m`.
    pub fn marked(&self, m: u32) -> usize {
        m as usize - 1
    }

    /// The single dart leaving marked point `m`.
    pub fn pendant(&self, m: u32) -> usize {
        self.rot[m as usize - 1][0]
    }

    fn position(&self, d: usize) -> usize {
        self.rot[self.tail[d]].iter().position(|&x| x == d).expect("dart in its rotation")
    }

    pub fn next_ccw(&self, d: usize) -> usize {
        let r = &self.rot[self.tail[d]];
        r[(self.position(d) + 1) % r.len()]
    }

    pub fn prev_ccw(&self, d: usize) -> usize {
        let r = &self.rot[self.tail[d]];
        r[(self.position(d) + r.len() - 1) % r.len()]
    }

    pub fn is_trivalent(&self) -> bool {
        self.internal_vertices().all(|v| self.degree(v) == 3)
    }

    pub fn count_color(&self, c: Color) -> usize {
        self.kinds.iter().filter(|k| **k == VertexKind::Internal(c)).count()
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.kinds.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &d in &self.rot[v] {
                let w = self.head(d);
                if !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Arc from `j` to `j + 1` (forward) or back, as an extended dart id.
    pub fn arc(&self, j: u32, forward: bool) -> usize {
        self.num_darts() + 2 * (j as usize - 1) + usize::from(!forward)
    }

    fn ext_tail(&self, d: usize) -> usize {
        if d < self.num_darts() {
            return self.tail[d];
        }
        let a = d - self.num_darts();
        let j = (a / 2) as u32 + 1;
        if a.is_multiple_of(2) {
            j as usize - 1
        } else {
            wrap(j as i64 + 1, self.n) as usize - 1
        }
    }

    fn ext_twin(&self, d: usize) -> usize {
        if d < self.num_darts() {
            self.twin[d]
        } else {
            self.num_darts() + ((d - self.num_darts()) ^ 1)
        }
    }

    /// Counterclockwise darts at `v` with the arcs at marked points.
    fn ext_rotation(&self, v: usize) -> Vec<usize> {
        match self.kinds[v] {
            VertexKind::Boundary(m) => {
                let prev = wrap(m as i64 - 1, self.n);
                vec![self.arc(m, true), self.rot[v][0], self.arc(prev, false)]
            }
            VertexKind::Internal(_) => self.rot[v].clone(),
        }
    }

    pub fn faces(&self) -> Faces {
        let total = self.num_darts() + 2 * self.n as usize;
        let rots: Vec<Vec<usize>> = (0..self.kinds.len()).map(|v| self.ext_rotation(v)).collect();
        let mut pos = vec![0usize; total];
        for r in &rots {
            for (i, &d) in r.iter().enumerate() {
                pos[d] = i;
            }
        }
        let next = |d: usize| {
            let t = self.ext_twin(d);
            let r = &rots[self.ext_tail(t)];
            r[(pos[t] + r.len() - 1) % r.len()]
        };
        let mut face_of = vec![usize::MAX; total];
        let mut walks = Vec::new();
        for start in 0..total {
            if face_of[start] != usize::MAX {
                continue;
            }
            let f = walks.len();
            let mut walk = Vec::new();
            let mut d = start;
            while face_of[d] == usize::MAX {
                face_of[d] = f;
                walk.push(d);
                d = next(d);
            }
            walks.push(walk);
        }
        let outer = face_of[self.arc(1, false)];
        Faces { face_of, walks, outer }
    }

    /// Follows the zig-zag strand leaving marked point `i`: maximal right
    /// turn at black vertices, maximal left turn at white ones. Returns the
    /// darts used and the marked point reached.
    pub fn trip(&self, i: u32) -> Result<(Vec<usize>, u32)> {
        let mut d = self.pendant(i);
        let mut path = vec![d];
        for _ in 0..=2 * self.num_darts() {
            let v = self.head(d);
            let back = self.twin(d);
            d = match self.kinds[v] {
                VertexKind::Boundary(j) => return Ok((path, j)),
                VertexKind::Internal(Color::Black) => self.next_ccw(back),
                VertexKind::Internal(Color::White) => self.prev_ccw(back),
            };
            path.push(d);
        }
        Err(Error::MalformedGraph(format!("strand from {i} does not terminate")))
    }

    /// `i ↦` the marked point where the strand from `i` ends.
    pub fn trip_permutation(&self) -> Result<Vec<u32>> {
        (1..=self.n).map(|i| self.trip(i).map(|t| t.1)).collect()
    }

    /// Labels every face by the set of strand sources `i` whose strand has
    /// the face on its left.
    pub fn labeling(&self) -> Result<Labeling> {
        let faces = self.faces();
        let nf = faces.walks.len();
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); nf];
        for i in 1..=self.n {
            let (path, _) = self.trip(i)?;
            let mut on_trip = vec![false; self.num_darts()];
            for &d in &path {
                on_trip[d] = true;
                on_trip[self.twin(d)] = true;
            }
            let mut side = vec![false; nf];
            let mut stack: Vec<usize> = path.iter().map(|&d| faces.face_of[d]).collect();
            while let Some(f) = stack.pop() {
                if f == faces.outer || std::mem::replace(&mut side[f], true) {
                    continue;
                }
                for &d in &faces.walks[f] {
                    if d < self.num_darts() && !on_trip[d] {
                        stack.push(faces.face_of[self.twin(d)]);
                    }
                }
            }
            for (f, s) in side.iter().enumerate() {
                if *s {
                    members[f].push(i);
                }
            }
        }
        let labeled = (0..nf)
            .map(|f| {
                if f == faces.outer {
                    return Ok(None);
                }
                let label = KSubset::new(self.n, members[f].iter().copied())?;
                let boundary_after = faces.walks[f]
                    .iter()
                    .find(|&&d| d >= self.num_darts())
                    .map(|&d| ((d - self.num_darts()) / 2) as u32 + 1);
                Ok(Some(LabeledFace { walk: faces.walks[f].clone(), label, boundary_after }))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Labeling { faces, labeled })
    }

    /// `ℱ(G)`.
    pub fn face_labels(&self) -> Result<BTreeSet<KSubset>> {
        Ok(self.labeling()?.labels())
    }

    /// The common size of the face labels; errors if they differ.
    pub fn rank(&self) -> Result<u32> {
        let labels = self.face_labels()?;
        let sizes: BTreeSet<u32> = labels.iter().map(|l| l.len()).collect();
        match sizes.len() {
            1 => Ok(*sizes.iter().next().unwrap()),
            _ => Err(Error::MalformedGraph(format!("face labels have sizes {sizes:?}"))),
        }
    }

    pub(crate) fn into_draft(self) -> Draft {
        let nd = self.tail.len();
        Draft {
            n: self.n,
            kinds: self.kinds.into_iter().map(Some).collect(),
            rot: self.rot,
            tail: self.tail,
            twin: self.twin,
            live: vec![true; nd],
        }
    }
}

/// Mutable working copy used by moves and rewrites. Removed vertices and
/// darts are dropped by [`Draft::finish`], which renumbers what is left.
#[derive(Debug, Clone)]
pub(crate) struct Draft {
    pub n: u32,
    pub kinds: Vec<Option<VertexKind>>,
    pub rot: Vec<Vec<usize>>,
    pub tail: Vec<usize>,
    pub twin: Vec<usize>,
    pub live: Vec<bool>,
}

impl Draft {
    pub fn new(n: u32) -> Self {
        let kinds = (1..=n).map(|m| Some(VertexKind::Boundary(m))).collect();
        Draft { n, kinds, rot: vec![Vec::new(); n as usize], tail: vec![], twin: vec![], live: vec![] }
    }

    pub fn add_vertex(&mut self, kind: VertexKind) -> usize {
        self.kinds.push(Some(kind));
        self.rot.push(Vec::new());
        self.kinds.len() - 1
    }

    /// New edge `u — v`; the darts are not yet placed in any rotation.
    pub fn add_edge(&mut self, u: usize, v: usize) -> (usize, usize) {
        let a = self.tail.len();
        self.tail.extend([u, v]);
        self.twin.extend([a + 1, a]);
        self.live.extend([true, true]);
        (a, a + 1)
    }

    pub fn remove_vertex(&mut self, v: usize) {
        self.kinds[v] = None;
        self.rot[v].clear();
    }

    /// Removes a degree-two vertex, joining its neighbours directly.
    pub fn smooth(&mut self, v: usize) -> Result<()> {
        if self.rot[v].len() != 2 {
            return Err(Error::MoveNotApplicable(format!("vertex {v} has degree {}", self.rot[v].len())));
        }
        let (a, b) = (self.rot[v][0], self.rot[v][1]);
        let (ta, tb) = (self.twin[a], self.twin[b]);
        if self.tail[ta] == v || self.tail[ta] == self.tail[tb] {
            return Err(Error::MoveNotApplicable(format!("removing vertex {v} would leave a loop")));
        }
        self.twin[ta] = tb;
        self.twin[tb] = ta;
        self.live[a] = false;
        self.live[b] = false;
        self.remove_vertex(v);
        Ok(())
    }

    /// Moves `len` consecutive darts of `v`, starting at rotation index
    /// `start`, onto a new vertex of the same kind joined to `v`.
    pub fn split(&mut self, v: usize, start: usize, len: usize) -> Result<usize> {
        let deg = self.rot[v].len();
        if len < 2 || len >= deg {
            return Err(Error::MoveNotApplicable(format!("cannot split {len} of {deg} darts at vertex {v}")));
        }
        let kind = self.kinds[v].ok_or_else(|| Error::MoveNotApplicable(format!("vertex {v} was removed")))?;
        let w = self.add_vertex(kind);
        let moved: Vec<usize> = (0..len).map(|i| self.rot[v][(start + i) % deg]).collect();
        let kept: Vec<usize> = (len..deg).map(|i| self.rot[v][(start + i) % deg]).collect();
        let (to_w, to_v) = self.add_edge(v, w);
        let mut rv = vec![to_w];
        rv.extend(kept);
        self.rot[v] = rv;
        for &d in &moved {
            self.tail[d] = w;
        }
        let mut rw = moved;
        rw.push(to_v);
        self.rot[w] = rw;
        Ok(w)
    }

    pub fn finish(self) -> Result<PlabicGraph> {
        self.finish_mapped().map(|(g, _, _)| g)
    }

    /// Like [`Draft::finish`], also returning where each vertex and dart
    /// went (`usize::MAX` if removed).
    pub fn finish_mapped(self) -> Result<(PlabicGraph, Vec<usize>, Vec<usize>)> {
        let mut vmap = vec![usize::MAX; self.kinds.len()];
        let mut kinds = Vec::new();
        for (v, k) in self.kinds.iter().enumerate() {
            if let Some(k) = k {
                vmap[v] = kinds.len();
                kinds.push(*k);
            }
        }
        let mut dmap = vec![usize::MAX; self.tail.len()];
        let mut count = 0;
        for (d, live) in self.live.iter().enumerate() {
            if *live {
                dmap[d] = count;
                count += 1;
            }
        }
        let mut tail = vec![0; count];
        let mut twin = vec![0; count];
        for d in 0..self.tail.len() {
            if self.live[d] {
                tail[dmap[d]] = vmap[self.tail[d]];
                twin[dmap[d]] = dmap[self.twin[d]];
            }
        }
        let rot = self
            .kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| k.is_some())
            .map(|(v, _)| self.rot[v].iter().map(|&d| dmap[d]).collect())
            .collect();
        let g = PlabicGraph::from_parts(self.n, kinds, rot, tail, twin)?;
        Ok((g, vmap, dmap))
    }
}

impl crate::cmap::DartMap for PlabicGraph {
    fn dart_count(&self) -> usize {
        self.num_darts()
    }

    fn vertex_count(&self) -> usize {
        self.num_vertices()
    }

    fn dart_tail(&self, d: usize) -> usize {
        self.tail[d]
    }

    fn dart_twin(&self, d: usize) -> usize {
        self.twin[d]
    }

    fn dart_next(&self, d: usize) -> usize {
        self.next_ccw(d)
    }
}
