use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::clique::{cliques, Clique};
use super::graph::Color;
use crate::error::{Error, Result};
use crate::separation::is_maximal;
use crate::subset::{Collection, KSubset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TilingFace {
    pub color: Color,
    pub core: KSubset,
    /// Vertex indices in counterclockwise order.
    pub boundary: Vec<usize>,
}

/// The plabic tiling `Σ(D)` as a labeled cell complex. Coordinates are not
/// stored; [`PlabicTiling::position`] computes them for rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TilingRepr")]
pub struct PlabicTiling {
    pub n: u32,
    pub k: u32,
    /// The members of `D` in canonical order.
    pub vertices: Vec<KSubset>,
    /// Sorted index pairs `(a, b)` with `a < b`.
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<TilingFace>,
}

impl PlabicTiling {
    pub fn index_of(&self, s: &KSubset) -> Option<usize> {
        self.vertices.binary_search(s).ok()
    }

    /// Faces containing the edge `{a, b}`.
    pub fn faces_on_edge(&self, a: usize, b: usize) -> Vec<usize> {
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, f)| {
                let m = f.boundary.len();
                (0..m).any(|i| {
                    let (x, y) = (f.boundary[i], f.boundary[(i + 1) % m]);
                    (x, y) == (a, b) || (x, y) == (b, a)
                })
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// `V_S = Σ_{i ∈ S} v_i` with `v_i` on the unit circle, counterclockwise.
    pub fn position(&self, v: usize) -> (f64, f64) {
        label_position(&self.vertices[v])
    }

    pub fn collection(&self) -> Collection {
        Collection::new(self.n, self.k, self.vertices.iter().copied()).expect("tiling vertices share (n, k)")
    }

    /// `V - E + F`; one for a disk.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }
}

#[derive(Deserialize)]
struct FaceRepr {
    color: Color,
    core: Vec<u32>,
    boundary: Vec<usize>,
}

#[derive(Deserialize)]
struct TilingRepr {
    n: u32,
    k: u32,
    vertices: Vec<Vec<u32>>,
    edges: Vec<(usize, usize)>,
    faces: Vec<FaceRepr>,
}

impl TryFrom<TilingRepr> for PlabicTiling {
    type Error = Error;

    /// Rebuilds the tiling from its vertices and insists on an exact match.
    fn try_from(r: TilingRepr) -> Result<Self> {
        let vertices = r.vertices.into_iter().map(|v| KSubset::new(r.n, v)).collect::<Result<Vec<_>>>()?;
        let faces = r
            .faces
            .into_iter()
            .map(|f| Ok(TilingFace { color: f.color, core: KSubset::new(r.n, f.core)?, boundary: f.boundary }))
            .collect::<Result<Vec<_>>>()?;
        let given = PlabicTiling { n: r.n, k: r.k, vertices, edges: r.edges, faces };
        let rebuilt = build_tiling(&Collection::from_distinct(r.n, r.k, given.vertices.iter().copied())?)?;
        if rebuilt != given {
            return Err(Error::MalformedTiling("cells do not match the tiling of the vertex set".into()));
        }
        Ok(given)
    }
}

pub fn label_position(s: &KSubset) -> (f64, f64) {
    let n = s.n() as f64;
    s.iter().fold((0.0, 0.0), |(x, y), i| {
        let t = std::f64::consts::TAU * (i as f64 - 1.0) / n;
        (x + t.cos(), y + t.sin())
    })
}

/// Builds `Σ(D)` and checks that it tiles the `n`-gon: every interior edge
/// borders one white and one black face, the edges bordering a single face are
/// exactly the `n` steps between consecutive intervals, and `V - E + F = 1`.
pub fn build_tiling(d: &Collection) -> Result<PlabicTiling> {
    let (n, k) = (d.n(), d.k());
    if n < 3 {
        return Err(Error::MalformedTiling(format!("the {n}-gon is degenerate")));
    }
    let report = is_maximal(d)?;
    if !report.maximal {
        return Err(Error::NotMaximal(format!("{} members, expected {}", report.size, report.expected_size)));
    }
    let vertices = d.to_vec();
    let index = |s: &KSubset| vertices.binary_search(s).expect("clique members are in D");
    let faces: Vec<TilingFace> = cliques(d)
        .into_iter()
        .filter(Clique::is_nontrivial)
        .map(|c| TilingFace { color: c.color, core: c.core, boundary: c.members.iter().map(index).collect() })
        .collect();

    let mut sides: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for f in &faces {
        let m = f.boundary.len();
        for i in 0..m {
            let (a, b) = (f.boundary[i], f.boundary[(i + 1) % m]);
            let e = sides.entry((a.min(b), a.max(b))).or_default();
            match f.color {
                Color::White => e.0 += 1,
                Color::Black => e.1 += 1,
            }
        }
    }
    let mut outer = Vec::new();
    for (&(a, b), &(w, bl)) in &sides {
        match (w, bl) {
            (1, 1) => {}
            (1, 0) | (0, 1) => outer.push((a, b)),
            _ => {
                return Err(Error::MalformedTiling(format!(
                    "edge {}–{} borders {w} white and {bl} black faces",
                    vertices[a], vertices[b]
                )))
            }
        }
    }
    let mut expected: Vec<(usize, usize)> = (1..=n)
        .map(|i| {
            let a = index_of_interval(&vertices, n, i, k)?;
            let b = index_of_interval(&vertices, n, i % n + 1, k)?;
            Ok((a.min(b), a.max(b)))
        })
        .collect::<Result<_>>()?;
    expected.sort_unstable();
    if outer != expected {
        return Err(Error::MalformedTiling("the outer edges are not the interval steps".into()));
    }
    let tiling = PlabicTiling { n, k, vertices, edges: sides.keys().copied().collect(), faces };
    let used: std::collections::BTreeSet<usize> = tiling.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    if used.len() != tiling.vertices.len() {
        return Err(Error::MalformedTiling("some members lie on no edge".into()));
    }
    if tiling.euler_characteristic() != 1 {
        return Err(Error::MalformedTiling(format!("V - E + F = {}", tiling.euler_characteristic())));
    }
    Ok(tiling)
}

fn index_of_interval(vertices: &[KSubset], n: u32, i: u32, k: u32) -> Result<usize> {
    let iv = KSubset::interval(n, i, k)?;
    vertices.binary_search(&iv).map_err(|_| Error::MalformedTiling(format!("interval {iv} missing")))
}
