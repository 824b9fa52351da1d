//! Exhaustive search for maximal weakly separated collections at small sizes.
//!
//! Cliques of the compatibility graph are enumerated with Bron–Kerbosch
//! (pivoting), seeded with the cyclic intervals. Maximality is decided by
//! inclusion, never by cardinality, so the search stays independent of the
//! size theorem it is used to test.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::separation::separated_bits;
use crate::subset::{Collection, KSubset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleMode {
    /// Every maximal weakly separated collection.
    All,
    /// Only `ρ^ell`-symmetric ones; branching is over whole orbits.
    Symmetric { ell: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOptions {
    /// Largest accepted `k(n-k)`.
    pub budget: u32,
    /// Stop after the first collection found.
    pub first_only: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { budget: 16, first_only: false }
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn and_not(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }
    fn or(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a | b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.0.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                out.push(wi * 64 + rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
        out
    }
}

fn k_subsets(n: u32, k: u32) -> Vec<u64> {
    let mut out = Vec::new();
    let limit = if n == 64 { u64::MAX } else { 1u64 << n };
    let mut v: u64 = (1u64 << k) - 1;
    loop {
        out.push(v);
        // Gosper's hack.
        let c = v & v.wrapping_neg();
        let r = v + c;
        if r >= limit || r == 0 {
            break;
        }
        v = (((r ^ v) >> 2) / c) | r;
        if v >= limit {
            break;
        }
    }
    out.sort_by_key(|&b| KSubset::from_bits_unchecked(n, b));
    out
}

struct Graph {
    vertices: Vec<Vec<u64>>,
    adj: Vec<Bits>,
}

fn compatible(a: &[u64], b: &[u64]) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| separated_bits(x, y)))
}

fn build_graph(n: u32, candidates: &[u64], mode: OracleMode) -> Graph {
    let vertices: Vec<Vec<u64>> = match mode {
        OracleMode::All => candidates.iter().map(|&b| vec![b]).collect(),
        OracleMode::Symmetric { ell } => {
            let mut seen = std::collections::HashSet::new();
            let mut out = Vec::new();
            for &b in candidates {
                if seen.contains(&b) {
                    continue;
                }
                let mut orbit = Vec::new();
                let mut cur = KSubset::from_bits_unchecked(n, b);
                loop {
                    orbit.push(cur.bits());
                    cur = cur.shift(ell as i64);
                    if cur.bits() == b {
                        break;
                    }
                }
                seen.extend(orbit.iter().copied());
                if compatible(&orbit, &orbit) {
                    out.push(orbit);
                }
            }
            out
        }
    };
    let m = vertices.len();
    let adj: Vec<Bits> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut b = Bits::new(m);
            for j in 0..m {
                if i != j && compatible(&vertices[i], &vertices[j]) {
                    b.set(j);
                }
            }
            b
        })
        .collect();
    Graph { vertices, adj }
}

fn bron_kerbosch(g: &Graph, r: &mut Vec<usize>, p: Bits, mut x: Bits, stop: &AtomicBool, emit: &mut dyn FnMut(&[usize])) {
    if stop.load(Ordering::Relaxed) {
        return;
    }
    if p.is_empty() {
        if x.is_empty() {
            emit(r);
        }
        return;
    }
    let px = p.or(&x);
    let pivot = px.ones().into_iter().max_by_key(|&u| (p.and(&g.adj[u]).count(), std::cmp::Reverse(u))).unwrap();
    let mut p = p;
    for v in p.and_not(&g.adj[pivot]).ones() {
        r.push(v);
        bron_kerbosch(g, r, p.and(&g.adj[v]), x.and(&g.adj[v]), stop, emit);
        r.pop();
        p.clear(v);
        x.set(v);
    }
}

/// Enumerates maximal weakly separated collections of `k`-subsets of `[n]`,
/// in canonical order.
pub fn oracle_enumerate(k: u32, n: u32, mode: OracleMode, opts: OracleOptions) -> Result<Vec<Collection>> {
    let ell = match mode {
        OracleMode::All => 1,
        OracleMode::Symmetric { ell } => ell,
    };
    Params::new(k, n, ell)?;
    let cost = k * (n - k);
    if cost > opts.budget {
        return Err(Error::OverBudget(format!("k(n-k) = {cost} exceeds budget {}", opts.budget)));
    }
    let all = k_subsets(n, k);
    let seeds: Vec<u64> = (1..=n).map(|i| KSubset::interval(n, i, k).map(|s| s.bits())).collect::<Result<_>>()?;
    let candidates: Vec<u64> =
        all.iter().copied().filter(|b| !seeds.contains(b) && compatible(&[*b], &seeds)).collect();
    let g = build_graph(n, &candidates, mode);
    let m = g.vertices.len();

    let accept = |clique: &[usize]| -> Option<Collection> {
        let mut members: Vec<u64> = seeds.clone();
        for &v in clique {
            members.extend(g.vertices[v].iter().copied());
        }
        if let OracleMode::Symmetric { .. } = mode {
            let extendable = candidates.iter().any(|c| !members.contains(c) && compatible(&[*c], &members));
            if extendable {
                return None;
            }
        }
        Collection::new(n, k, members.into_iter().map(|b| KSubset::from_bits_unchecked(n, b))).ok()
    };

    let stop = AtomicBool::new(false);
    let branch = |i: usize| -> Vec<Collection> {
        let mut found = Vec::new();
        let mut p = Bits::new(m);
        let mut x = Bits::new(m);
        for j in g.adj[i].ones() {
            if j > i {
                p.set(j);
            } else {
                x.set(j);
            }
        }
        let mut r = vec![i];
        bron_kerbosch(&g, &mut r, p, x, &stop, &mut |c| {
            if let Some(col) = accept(c) {
                found.push(col);
                if opts.first_only {
                    stop.store(true, Ordering::Relaxed);
                }
            }
        });
        found
    };

    let mut out: Vec<Collection> = if m == 0 {
        accept(&[]).into_iter().collect()
    } else if opts.first_only {
        (0..m).map(branch).find(|f| !f.is_empty()).unwrap_or_default()
    } else {
        (0..m).into_par_iter().flat_map_iter(branch).collect()
    };
    out.sort_by(|a, b| a.members().iter().cmp(b.members().iter()));
    if opts.first_only {
        out.truncate(1);
    }
    Ok(out)
}
