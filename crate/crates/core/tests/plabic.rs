mod common;

use std::collections::{BTreeSet, VecDeque};

use common::{cyclic_interval, feasible_instances, members};
use wsweave::generator::{oracle_enumerate, OracleMode, OracleOptions};
use wsweave::plabic::{apply_move, square_faces, square_move_label, Color, Move};
use wsweave::{
    build_tiling, cliques, dual_plabic_graph, generate, make_trivalent, Collection, KSubset, PlabicGraph,
    ResolutionPolicy,
};

fn hexagon() -> Collection {
    Collection::parse("123 234 345 456 156 126 136 236 346 356", 6, 3).unwrap()
}

fn subsets(text: &str, n: u32) -> BTreeSet<KSubset> {
    text.split_whitespace().map(|s| KSubset::parse(s, n).unwrap()).collect()
}

fn g_d(d: &Collection) -> PlabicGraph {
    dual_plabic_graph(&build_tiling(d).unwrap()).unwrap()
}

#[test]
fn hexagon_cliques() {
    let cs = cliques(&hexagon());
    let cores = |c: Color| -> BTreeSet<KSubset> {
        cs.iter().filter(|q| q.color == c && q.is_nontrivial()).map(|q| q.core).collect()
    };
    assert_eq!(cores(Color::White), subsets("23 56 16 34 36", 6));
    assert_eq!(cores(Color::Black), subsets("1236 3456 2346 1356", 6));
    let find = |core: &str| {
        let core = KSubset::parse(core, 6).unwrap();
        cs.iter().find(|q| q.core == core).unwrap().members.iter().copied().collect::<BTreeSet<_>>()
    };
    assert_eq!(find("36"), subsets("136 236 346 356", 6));
    assert_eq!(find("1356"), subsets("136 156 356", 6));
}

#[test]
fn hexagon_tiling() {
    let t = build_tiling(&hexagon()).unwrap();
    assert_eq!(t.vertices.len(), 10);
    let whites = t.faces.iter().filter(|f| f.color == Color::White).count();
    let blacks = t.faces.len() - whites;
    assert_eq!((whites, blacks), (5, 4));
    assert_eq!(t.euler_characteristic(), 1);
}

#[test]
fn star_has_one_white_clique() {
    let d = Collection::parse("1 2 3 4 5", 5, 1).unwrap();
    let cs = cliques(&d);
    let nontrivial: Vec<_> = cs.iter().filter(|c| c.is_nontrivial()).collect();
    assert_eq!(nontrivial.len(), 1);
    assert_eq!(nontrivial[0].color, Color::White);
    assert!(nontrivial[0].core.is_empty());
    assert_eq!(nontrivial[0].members.len(), 5);
}

/// Tiling checks and `ℱ(G_D) = D` on the whole generator sweep.
#[test]
fn duality_round_trip() {
    for (k, n, ell) in feasible_instances(12) {
        let d = generate(k, n, ell, None).unwrap();
        let t = build_tiling(&d).unwrap();
        assert_eq!(t.euler_characteristic(), 1, "({k},{n},{ell})");
        // Edges on exactly one face are the boundary steps between intervals.
        let mut outer = BTreeSet::new();
        for &(a, b) in &t.edges {
            match t.faces_on_edge(a, b).len() {
                1 => {
                    outer.insert((a, b));
                }
                2 => {}
                m => panic!("({k},{n},{ell}) edge on {m} faces"),
            }
        }
        if k > 1 && k < n - 1 {
            let expected: BTreeSet<(usize, usize)> = (1..=n)
                .map(|i| {
                    let ix = |v: Vec<u32>| t.index_of(&KSubset::new(n, v).unwrap()).unwrap();
                    let (a, b) = (ix(cyclic_interval(i, k, n)), ix(cyclic_interval(i % n + 1, k, n)));
                    (a.min(b), a.max(b))
                })
                .collect();
            assert_eq!(outer, expected, "({k},{n},{ell})");
        }
        let g = dual_plabic_graph(&t).unwrap();
        let labels: BTreeSet<KSubset> = g.face_labels().unwrap();
        assert_eq!(labels, d.iter().copied().collect(), "({k},{n},{ell})");
    }
}

/// With counterclockwise marked points the strand from `i` ends at `i - k`.
#[test]
fn trip_permutation_is_a_shift() {
    for (k, n, ell) in feasible_instances(10) {
        let d = generate(k, n, ell, None).unwrap();
        let g = g_d(&d);
        let expected: Vec<u32> = (1..=n).map(|i| (i + n - 1 - k) % n + 1).collect();
        assert_eq!(g.trip_permutation().unwrap(), expected, "({k},{n},{ell})");
        let t = make_trivalent(&g, ResolutionPolicy::equivariant(ell)).unwrap().graph;
        assert!(t.is_trivalent());
        assert_eq!(t.trip_permutation().unwrap(), expected);
        assert_eq!(t.face_labels().unwrap(), g.face_labels().unwrap());
    }
}

/// Expands the corners of the face labeled `x` until they are trivalent,
/// keeping the two darts on the face at the old vertex. `None` unless the
/// face is an interior quadrilateral.
fn squared(mut g: PlabicGraph, x: &KSubset) -> Option<PlabicGraph> {
    loop {
        let lab = g.labeling().unwrap();
        let walk = &lab.faces.walks[lab.face_with_label(x)?];
        if walk.len() != 4 || walk.iter().any(|&d| d >= g.num_darts()) {
            return None;
        }
        let Some(j) = (0..4).find(|&j| g.degree(g.tail(walk[j])) > 3) else {
            return Some(g);
        };
        let d = walk[j];
        let v = g.tail(d);
        let m = g.degree(v);
        let i = g.rotation(v).iter().position(|&e| e == d).unwrap();
        g = apply_move(&g, &Move::Expand { vertex: v, start: (i + 2) % m, len: m - 2 }).unwrap();
    }
}

type Family = BTreeSet<Vec<Vec<u32>>>;

fn exchange_graph(k: u32, n: u32) -> (Family, Family) {
    let all: Family = oracle_enumerate(k, n, OracleMode::All, OracleOptions::default())
        .unwrap()
        .iter()
        .map(members)
        .collect();
    let start = all.iter().next().unwrap().clone();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        let d = Collection::new(n, k, m.iter().map(|s| KSubset::new(n, s.iter().copied()).unwrap())).unwrap();
        let base = g_d(&d);
        for x in d.iter() {
            let Some(g) = squared(base.clone(), x) else { continue };
            assert_eq!(g.face_labels().unwrap(), base.face_labels().unwrap());
            assert!(square_faces(&g).unwrap().contains(x));
            let y = square_move_label(&g, x).unwrap();
            let h = apply_move(&g, &Move::SquareMove { face: *x }).unwrap();
            let mut expected: BTreeSet<KSubset> = d.iter().copied().collect();
            expected.remove(x);
            expected.insert(y);
            assert_eq!(h.face_labels().unwrap(), expected, "square move at {x}");
            let next: Vec<Vec<u32>> = expected.iter().map(|s| s.elements()).collect();
            assert!(all.contains(&next), "square move at {x} leaves the oracle's list");
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    (all, seen)
}

/// Square moves stay inside the set of maximal collections and connect all of it.
#[test]
fn square_moves_against_oracle() {
    for (k, n) in [(2, 6), (3, 6), (2, 7)] {
        let (all, reached) = exchange_graph(k, n);
        assert_eq!(reached, all, "({k},{n})");
    }
}

#[test]
fn half_turn_certificates() {
    use wsweave::plabic::rotational_symmetry_certificate;
    let t = build_tiling(&hexagon()).unwrap();
    assert!(rotational_symmetry_certificate(&t, 3).is_symmetric());
    let c = rotational_symmetry_certificate(&t, 1);
    assert_eq!(c.witness(), Some("136 +₆ 1 = 124 ∉ D"));
    let g = g_d(&hexagon());
    assert!(rotational_symmetry_certificate(&g, 3).is_symmetric());
    assert!(!rotational_symmetry_certificate(&g, 1).is_symmetric());
}

/// Every tiling edge `{S, T}` lies on the white clique of `S ∩ T` and the
/// black clique of `S ∪ T`, at most one of which is trivial.
#[test]
fn edges_have_one_white_and_one_black_clique() {
    for (k, n, ell) in feasible_instances(10) {
        let d = generate(k, n, ell, None).unwrap();
        let t = build_tiling(&d).unwrap();
        for &(a, b) in &t.edges {
            let (s, u) = (t.vertices[a], t.vertices[b]);
            let faces = t.faces_on_edge(a, b);
            let whites: Vec<_> = faces.iter().filter(|&&f| t.faces[f].color == Color::White).collect();
            let blacks: Vec<_> = faces.iter().filter(|&&f| t.faces[f].color == Color::Black).collect();
            assert!(whites.len() <= 1 && blacks.len() <= 1 && !faces.is_empty(), "({k},{n},{ell}) {s} {u}");
            for &&f in &whites {
                assert_eq!(t.faces[f].core, s.intersection(&u));
            }
            for &&f in &blacks {
                assert_eq!(t.faces[f].core, s.union(&u));
            }
        }
    }
}

/// With the boundary arcs added, every rotation system is a sphere.
#[test]
fn rotation_systems_are_planar() {
    for (k, n, ell) in feasible_instances(10) {
        let d = generate(k, n, ell, None).unwrap();
        let g = g_d(&d);
        let r = make_trivalent(&g, ResolutionPolicy::equivariant(ell)).unwrap().graph;
        for h in [&g, &r] {
            let v = h.num_vertices() as i64;
            let e = (h.num_edges() + n as usize) as i64;
            let f = h.faces().walks.len() as i64;
            assert_eq!(v - e + f, 2, "({k},{n},{ell})");
        }
    }
}
