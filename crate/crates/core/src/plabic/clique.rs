use std::collections::BTreeMap;

use serde::Serialize;

use super::graph::Color;
use crate::subset::{Collection, KSubset};

/// A white clique `𝒲(K)` (members containing the `(k-1)`-set `K`) or a black
/// clique `ℬ(L)` (members inside the `(k+1)`-set `L`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clique {
    pub color: Color,
    pub core: KSubset,
    /// Sorted by the distinguishing element, which is also the
    /// counterclockwise order of the boundary.
    pub members: Vec<KSubset>,
}

impl Clique {
    pub fn is_nontrivial(&self) -> bool {
        self.members.len() >= 3
    }

    /// The element telling a member apart from the core.
    pub fn distinguishing(&self, member: &KSubset) -> u32 {
        let diff = match self.color {
            Color::White => member.difference(&self.core),
            Color::Black => self.core.difference(member),
        };
        diff.elements()[0]
    }

    /// Consecutive member pairs around the cycle; a single pair for a
    /// two-member clique.
    pub fn boundary(&self) -> Vec<(KSubset, KSubset)> {
        let m = self.members.len();
        if m == 2 {
            return vec![(self.members[0], self.members[1])];
        }
        (0..m).map(|i| (self.members[i], self.members[(i + 1) % m])).collect()
    }
}

/// All white and black cliques with at least two members, whites first,
/// each color ordered by core.
pub fn cliques(d: &Collection) -> Vec<Clique> {
    let mut white: BTreeMap<KSubset, Vec<KSubset>> = BTreeMap::new();
    let mut black: BTreeMap<KSubset, Vec<KSubset>> = BTreeMap::new();
    for s in d.iter() {
        for x in s.iter() {
            white.entry(s.without(x)).or_default().push(*s);
        }
        for x in s.complement().iter() {
            black.entry(s.with(x)).or_default().push(*s);
        }
    }
    let mut out = Vec::new();
    for (color, map) in [(Color::White, white), (Color::Black, black)] {
        for (core, members) in map {
            if members.len() < 2 {
                continue;
            }
            let mut c = Clique { color, core, members };
            let key: Vec<u32> = c.members.iter().map(|m| c.distinguishing(m)).collect();
            let mut order: Vec<usize> = (0..key.len()).collect();
            order.sort_by_key(|&i| key[i]);
            c.members = order.into_iter().map(|i| c.members[i]).collect();
            out.push(c);
        }
    }
    out
}
