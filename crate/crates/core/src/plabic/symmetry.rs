use std::collections::BTreeSet;

use serde::Serialize;

use super::graph::{PlabicGraph, VertexKind};
use super::tiling::PlabicTiling;
use crate::cmap::propagate;
use crate::subset::{wrap, KSubset};

/// Outcome of checking that relabeling by `I ↦ I +_n ell` is an
/// automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Certificate {
    /// `vertex_map[v]` is the image of vertex `v`; `cell_map` sends faces
    /// of a tiling, or darts of a graph, to their images.
    Symmetric { ell: u32, vertex_map: Vec<usize>, cell_map: Vec<usize> },
    Broken { ell: u32, witness: String },
}

impl Certificate {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, Certificate::Symmetric { .. })
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Certificate::Broken { witness, .. } => Some(witness),
            Certificate::Symmetric { .. } => None,
        }
    }
}

pub trait RotationalSymmetry {
    fn rotational_symmetry_certificate(&self, ell: u32) -> Certificate;
}

pub fn rotational_symmetry_certificate<T: RotationalSymmetry + ?Sized>(x: &T, ell: u32) -> Certificate {
    x.rotational_symmetry_certificate(ell)
}

fn subscript(n: u32) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap_or(0)).unwrap_or(c)).collect()
}

fn shifted_witness(s: &KSubset, ell: u32) -> String {
    format!("{s:?} +{} {ell} = {:?} ∉ D", subscript(s.n()), s.shift(ell as i64))
}

impl RotationalSymmetry for PlabicTiling {
    fn rotational_symmetry_certificate(&self, ell: u32) -> Certificate {
        let broken = |witness: String| Certificate::Broken { ell, witness };
        let mut vertex_map = Vec::with_capacity(self.vertices.len());
        for s in &self.vertices {
            match self.index_of(&s.shift(ell as i64)) {
                Some(i) => vertex_map.push(i),
                None => return broken(shifted_witness(s, ell)),
            }
        }
        let edges: BTreeSet<(usize, usize)> = self.edges.iter().copied().collect();
        for &(a, b) in &self.edges {
            let (x, y) = (vertex_map[a], vertex_map[b]);
            if !edges.contains(&(x.min(y), x.max(y))) {
                return broken(format!(
                    "edge {:?}–{:?} goes to the non-edge {:?}–{:?}",
                    self.vertices[a], self.vertices[b], self.vertices[x], self.vertices[y]
                ));
            }
        }
        let mut cell_map = Vec::with_capacity(self.faces.len());
        for f in &self.faces {
            let core = f.core.shift(ell as i64);
            let image: Vec<usize> = f.boundary.iter().map(|&v| vertex_map[v]).collect();
            let target = self.faces.iter().position(|g| g.color == f.color && g.core == core);
            match target {
                Some(j) if same_cycle(&image, &self.faces[j].boundary) => cell_map.push(j),
                _ => return broken(format!("{:?} face with core {:?} has no image", f.color, f.core)),
            }
        }
        Certificate::Symmetric { ell, vertex_map, cell_map }
    }
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..b.len()).any(|r| (0..a.len()).all(|i| a[i] == b[(i + r) % b.len()])))
}

impl RotationalSymmetry for PlabicGraph {
    fn rotational_symmetry_certificate(&self, ell: u32) -> Certificate {
        self.rotation_certificate_to(self, ell)
    }
}

impl PlabicGraph {
    /// Checks that rotating `self` by `ell`, with labels shifted to match,
    /// gives exactly `other`.
    pub fn rotation_certificate_to(&self, other: &PlabicGraph, ell: u32) -> Certificate {
        let broken = |witness: String| Certificate::Broken { ell, witness };
        if self.n() != other.n() {
            return broken(format!("{} vs {} marked points", self.n(), other.n()));
        }
        let (la, lb) = match (self.labeling(), other.labeling()) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return broken(e.to_string()),
        };
        let n = self.n();
        let seeds: Vec<(usize, usize)> =
            (1..=n).map(|i| (self.pendant(i), other.pendant(wrap(i as i64 + ell as i64, n)))).collect();
        let vertex_ok = |u: usize, v: usize| match (self.kind(u), other.kind(v)) {
            (VertexKind::Boundary(a), VertexKind::Boundary(b)) if b == wrap(a as i64 + ell as i64, n) => Ok(()),
            (VertexKind::Internal(a), VertexKind::Internal(b)) if a == b => Ok(()),
            (a, b) => Err(format!("vertex {u} ({a:?}) would go to vertex {v} ({b:?})")),
        };
        let dart_ok = |x: usize, y: usize| {
            let (a, b) = (la.left_label(x), lb.left_label(y));
            if a.map(|s| s.shift(ell as i64)) == b {
                Ok(())
            } else {
                Err(format!("face {a:?} would go to face {b:?}"))
            }
        };
        match propagate(self, other, &seeds, vertex_ok, dart_ok) {
            Ok(iso) => Certificate::Symmetric { ell, vertex_map: iso.vertices, cell_map: iso.darts },
            Err(w) => broken(w),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plabic::{build_tiling, dual_plabic_graph, make_trivalent, ResolutionPolicy};
    use crate::subset::Collection;

    fn hexagon() -> PlabicTiling {
        build_tiling(&Collection::parse("123 234 345 456 156 126 136 236 346 356", 6, 3).unwrap()).unwrap()
    }

    #[test]
    fn hexagon_tiling_has_half_turn() {
        let t = hexagon();
        assert!(t.rotational_symmetry_certificate(3).is_symmetric());
        let c = t.rotational_symmetry_certificate(1);
        assert_eq!(c.witness(), Some("136 +₆ 1 = 124 ∉ D"));
    }

    #[test]
    fn full_turn_is_identity() {
        let t = hexagon();
        match t.rotational_symmetry_certificate(6) {
            Certificate::Symmetric { vertex_map, cell_map, .. } => {
                assert!(vertex_map.iter().enumerate().all(|(i, &j)| i == j));
                assert!(cell_map.iter().enumerate().all(|(i, &j)| i == j));
            }
            c => panic!("{c:?}"),
        }
        let g = dual_plabic_graph(&t).unwrap();
        match g.rotational_symmetry_certificate(6) {
            Certificate::Symmetric { vertex_map, .. } => assert!(vertex_map.iter().enumerate().all(|(i, &j)| i == j)),
            c => panic!("{c:?}"),
        }
    }

    #[test]
    fn graph_certificate_survives_resolution() {
        let g = dual_plabic_graph(&hexagon()).unwrap();
        assert!(g.rotational_symmetry_certificate(3).is_symmetric());
        assert!(!g.rotational_symmetry_certificate(2).is_symmetric());
        let r = make_trivalent(&g, ResolutionPolicy::equivariant(3)).unwrap();
        assert!(r.graph.rotational_symmetry_certificate(3).is_symmetric());
    }
}
