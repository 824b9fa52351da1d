//! Brute-force oracles shared by the integration tests. They work on plain
//! sorted vectors and share no code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use wsweave::{feasibility, Collection};

pub fn members(d: &Collection) -> Vec<Vec<u32>> {
    d.iter().map(|s| s.elements()).collect()
}

/// Direct transcription of the definition: no `a < b < c < d` with `a, c`
/// in `S ∖ T` and `b, d` in `T ∖ S`, or the other way round.
pub fn naive_separated(s: &[u32], t: &[u32]) -> bool {
    let only_s: Vec<u32> = s.iter().copied().filter(|x| !t.contains(x)).collect();
    let only_t: Vec<u32> = t.iter().copied().filter(|x| !s.contains(x)).collect();
    let alternates = |p: &[u32], q: &[u32]| {
        for &a in p {
            for &b in q.iter().filter(|&&b| b > a) {
                for &c in p.iter().filter(|&&c| c > b) {
                    if q.iter().any(|&d| d > c) {
                        return true;
                    }
                }
            }
        }
        false
    };
    !alternates(&only_s, &only_t) && !alternates(&only_t, &only_s)
}

pub fn naive_collection_separated(d: &[Vec<u32>]) -> bool {
    (0..d.len()).all(|i| (i + 1..d.len()).all(|j| naive_separated(&d[i], &d[j])))
}

pub fn rotate(s: &[u32], t: u32, n: u32) -> Vec<u32> {
    let mut r: Vec<u32> = s.iter().map(|&x| (x - 1 + t) % n + 1).collect();
    r.sort_unstable();
    r
}

pub fn cyclic_interval(i: u32, k: u32, n: u32) -> Vec<u32> {
    rotate(&(1..=k).collect::<Vec<_>>(), i - 1, n)
}

/// Every feasible `(k, n, ell)` with `3 <= n <= nmax`, `k <= n/2`.
pub fn feasible_instances(nmax: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for n in 3..=nmax {
        for k in 1..=n / 2 {
            for ell in 1..n {
                if feasibility(k, n, ell).unwrap().feasible {
                    out.push((k, n, ell));
                }
            }
        }
    }
    out
}

/// All triangulations of a convex `n`-gon with vertices `0..n`, each as a
/// set of diagonals. Recursion on the apex of the triangle over edge `(0, n-1)`.
pub fn triangulations(n: usize) -> Vec<BTreeSet<(usize, usize)>> {
    fn go(lo: usize, hi: usize) -> Vec<BTreeSet<(usize, usize)>> {
        if hi - lo < 2 {
            return vec![BTreeSet::new()];
        }
        let mut out = Vec::new();
        for apex in lo + 1..hi {
            for left in go(lo, apex) {
                for right in go(apex, hi) {
                    let mut t: BTreeSet<(usize, usize)> = left.union(&right).copied().collect();
                    if apex - lo >= 2 {
                        t.insert((lo, apex));
                    }
                    if hi - apex >= 2 {
                        t.insert((apex, hi));
                    }
                    out.push(t);
                }
            }
        }
        out
    }
    go(0, n - 1)
}
