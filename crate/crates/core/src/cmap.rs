//! Isomorphism of combinatorial maps by dart propagation.

use std::collections::VecDeque;

/// Read access to a rotation system: every dart has a tail vertex, a twin
/// and a counterclockwise successor at its tail.
pub(crate) trait DartMap {
    fn dart_count(&self) -> usize;
    fn vertex_count(&self) -> usize;
    fn dart_tail(&self, d: usize) -> usize;
    fn dart_twin(&self, d: usize) -> usize;
    fn dart_next(&self, d: usize) -> usize;
}

/// An orientation-preserving isomorphism as vertex and dart maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Iso {
    pub vertices: Vec<usize>,
    pub darts: Vec<usize>,
}

/// Extends the seed pairs through twins and rotations. Fails with a
/// description of the first clash, or if the result is not a bijection.
pub(crate) fn propagate<A: DartMap, B: DartMap>(
    a: &A,
    b: &B,
    seeds: &[(usize, usize)],
    vertex_ok: impl Fn(usize, usize) -> Result<(), String>,
    dart_ok: impl Fn(usize, usize) -> Result<(), String>,
) -> Result<Iso, String> {
    if a.dart_count() != b.dart_count() || a.vertex_count() != b.vertex_count() {
        return Err(format!(
            "sizes differ: {} vs {} darts, {} vs {} vertices",
            a.dart_count(),
            b.dart_count(),
            a.vertex_count(),
            b.vertex_count()
        ));
    }
    let mut dmap = vec![usize::MAX; a.dart_count()];
    let mut dinv = vec![usize::MAX; b.dart_count()];
    let mut vmap = vec![usize::MAX; a.vertex_count()];
    let mut vinv = vec![usize::MAX; b.vertex_count()];
    let mut queue: VecDeque<(usize, usize)> = seeds.iter().copied().collect();
    while let Some((x, y)) = queue.pop_front() {
        if dmap[x] != usize::MAX {
            if dmap[x] != y {
                return Err(format!("dart {x} would go to both {} and {y}", dmap[x]));
            }
            continue;
        }
        if dinv[y] != usize::MAX {
            return Err(format!("darts {} and {x} would both go to {y}", dinv[y]));
        }
        dart_ok(x, y)?;
        dmap[x] = y;
        dinv[y] = x;
        let (u, v) = (a.dart_tail(x), b.dart_tail(y));
        if vmap[u] == usize::MAX {
            if vinv[v] != usize::MAX {
                return Err(format!("vertices {} and {u} would both go to {v}", vinv[v]));
            }
            vertex_ok(u, v)?;
            vmap[u] = v;
            vinv[v] = u;
        } else if vmap[u] != v {
            return Err(format!("vertex {u} would go to both {} and {v}", vmap[u]));
        }
        queue.push_back((a.dart_twin(x), b.dart_twin(y)));
        queue.push_back((a.dart_next(x), b.dart_next(y)));
    }
    if let Some(d) = dmap.iter().position(|&y| y == usize::MAX) {
        return Err(format!("dart {d} is unreachable from the seeds"));
    }
    if let Some(v) = vmap.iter().position(|&y| y == usize::MAX) {
        return Err(format!("vertex {v} is unreachable from the seeds"));
    }
    Ok(Iso { vertices: vmap, darts: dmap })
}
