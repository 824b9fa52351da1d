//! The left-removal / right-append walk. Kept as a differential check against
//! the formal construction, not as a production path.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::formal::{stage, DivisibleInstance};
use super::{shift_elems, to_collection, Elems, OrbitOrder};
use crate::error::Result;
use crate::params::Params;
use crate::subset::Collection;

/// One walk of stage `s`: the sequences it emitted, in order and unsorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InformalWalk {
    pub s: u32,
    pub steps: Vec<Vec<u32>>,
}

fn first_after(p: &[u32], x: u32, excl: &dyn Fn(u32) -> bool) -> Option<u32> {
    let i = p.iter().position(|&y| y == x)?;
    (1..=p.len()).map(|j| p[(i + j) % p.len()]).find(|&y| !excl(y))
}

fn cyclic_run(p: &[u32], start: usize, k: u32) -> Vec<u32> {
    (0..k as usize).map(|j| p[(start + j) % p.len()]).collect()
}

fn walk(p: &[u32], a: u32, class: &[u32], start: Vec<u32>, budget: usize) -> Vec<Vec<u32>> {
    let in_class = |y: u32| class.contains(&y);
    let mut seq = start;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for _ in 0..budget {
        if !seen.insert(seq.clone()) {
            break;
        }
        out.push(seq.clone());
        let right = seq
            .iter()
            .position(|&y| y == a)
            .and_then(|pa| (pa + 1..seq.len()).rev().find(|&q| in_class(seq[q])));
        if let Some(q) = right {
            seq.remove(q);
            let last = *seq.last().unwrap_or(&a);
            let cur = seq.clone();
            match first_after(p, last, &|y| cur.contains(&y) || in_class(y)) {
                Some(y) => seq.push(y),
                None => break,
            }
            continue;
        }
        let x = seq[0];
        if x == a {
            break;
        }
        seq.remove(0);
        let base = if seq.contains(&a) { a } else { *seq.last().unwrap_or(&x) };
        let cur = seq.clone();
        let drop_class = in_class(x);
        match first_after(p, base, &|y| cur.contains(&y) || (drop_class && in_class(y))) {
            Some(y) => seq.push(y),
            None => break,
        }
    }
    out
}

/// All walks, stage by stage. Stages with `|P_s| < k` produce none.
pub fn informal_walks(inst: &DivisibleInstance, order: &OrbitOrder) -> Result<Vec<InformalWalk>> {
    let mut walks = Vec::new();
    let last = inst.ell.min(inst.last_stage());
    for s in 1..=last {
        let st = stage(inst, order, s)?;
        let Some(a) = st.a else { continue };
        if (st.p.len() as u32) < inst.k {
            continue;
        }
        let p = &st.p;
        let class: Vec<u32> = (0..inst.d).map(|j| a + j * inst.ell).collect();
        let ia = p.iter().position(|&y| y == a).expect("a_s lies in P_s");
        let plen = p.len();
        let mut starts = vec![cyclic_run(p, (ia + plen * inst.k as usize + 1 - inst.k as usize) % plen, inst.k)];
        for &i in &st.window {
            let ii = p.iter().position(|&y| y == i).expect("window lies in P_s");
            starts.push(cyclic_run(p, ii, inst.k));
        }
        for start in starts {
            let steps = walk(p, a, &class, start, 10 * inst.n as usize);
            walks.push(InformalWalk { s, steps });
        }
    }
    Ok(walks)
}

/// The collection obtained from the orbits of every set the walks emit.
pub fn informal_generate(params: &Params, order: &OrbitOrder) -> Result<Collection> {
    let inst = DivisibleInstance::from_params(params)?;
    let mut d: BTreeSet<Elems> = BTreeSet::new();
    for w in informal_walks(&inst, order)? {
        for step in &w.steps {
            let mut e = step.clone();
            e.sort_unstable();
            for x in 0..inst.d {
                d.insert(shift_elems(&e, x * inst.ell, inst.n));
            }
        }
    }
    to_collection(params.n, params.k, d.iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_example() {
        let p = Params::new(3, 6, 3).unwrap();
        let o = OrbitOrder::descending(3);
        let d = informal_generate(&p, &o).unwrap();
        assert_eq!(d, Collection::parse("123 234 345 456 156 126 125 245 124 145", 6, 3).unwrap());

        let inst = DivisibleInstance::from_params(&p).unwrap();
        let walks = informal_walks(&inst, &o).unwrap();
        let b2 = walks.iter().find(|w| w.s == 2).unwrap();
        assert_eq!(b2.steps, vec![vec![5, 1, 2], vec![1, 2, 4], vec![2, 4, 5], vec![2, 4, 1]]);
        assert!(walks.iter().all(|w| w.s < 3));
    }
}
