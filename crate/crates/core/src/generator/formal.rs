use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{shift_elems, to_collection, Elems, OrbitOrder};
use crate::error::{Error, Result};
use crate::params::Params;
use crate::subset::{wrap, Collection};

/// Parameters of a divisible instance `n = d·ell`. Unlike [`Params`] the
/// ground set may exceed 64 elements, as happens for lifted folding instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibleInstance {
    pub k: u32,
    pub n: u32,
    pub ell: u32,
    pub d: u32,
    pub r: u32,
    pub c: i32,
}

impl DivisibleInstance {
    pub fn new(k: u32, n: u32, ell: u32) -> Result<Self> {
        if ell == 0 || ell >= n || !n.is_multiple_of(ell) {
            return Err(Error::OutOfRange(format!("ell = {ell} must be a proper divisor of n = {n}")));
        }
        if k == 0 || k >= n {
            return Err(Error::OutOfRange(format!("k = {k} not in 1..={}", n - 1)));
        }
        let d = n / ell;
        let m = k % d;
        let (r, c) = if m == 0 {
            (k / d, 0)
        } else if m == 1 {
            ((k - 1) / d, 1)
        } else if m == d - 1 {
            ((k + 1) / d, -1)
        } else {
            return Err(Error::Infeasible { k, n, ell, d, residue: m });
        };
        Ok(DivisibleInstance { k, n, ell, d, r, c })
    }

    pub fn from_params(p: &Params) -> Result<Self> {
        p.require_feasible()?;
        DivisibleInstance::new(p.k, p.n, p.ell)
    }

    /// The instance `(k, dℓ, ℓ)` used by folding.
    pub fn lifted(p: &Params) -> Result<Self> {
        p.require_feasible()?;
        DivisibleInstance::new(p.k, p.d * p.ell, p.ell)
    }

    /// Last stage `ℓ - r + 1`.
    pub fn last_stage(&self) -> u32 {
        self.ell - self.r + 1
    }

    /// `k(n - k) + 1`.
    pub fn target_size(&self) -> usize {
        (self.k * (self.n - self.k) + 1) as usize
    }

    fn check_stage(&self, s: u32) -> Result<()> {
        if s == 0 || s > self.last_stage() {
            return Err(Error::StageOutOfRange { s, max: self.last_stage() });
        }
        Ok(())
    }

    fn check_order(&self, order: &OrbitOrder) -> Result<()> {
        if order.ell() != self.ell {
            return Err(Error::InvalidOrder(format!("order has {} entries, ell = {}", order.ell(), self.ell)));
        }
        Ok(())
    }
}

/// `S_P(x)`: the next element of `P` after `x`, wrapping from the maximum to
/// the minimum.
pub fn successor(p: &[u32], x: u32) -> Result<u32> {
    let i = p.binary_search(&x).map_err(|_| Error::NotAMember(x))?;
    Ok(p[(i + 1) % p.len()])
}

/// Everything derived from `(instance, order, s)` before intervals are formed.
pub(crate) struct Stage {
    pub a: Option<u32>,
    pub p: Elems,
    pub p_h: Vec<Elems>,
    pub window: Elems,
}

pub(crate) fn stage(inst: &DivisibleInstance, order: &OrbitOrder, s: u32) -> Result<Stage> {
    inst.check_order(order)?;
    inst.check_stage(s)?;
    if s > inst.ell {
        return Ok(Stage { a: None, p: vec![], p_h: vec![vec![]; inst.d as usize], window: vec![] });
    }
    let removed: Vec<u32> = order.reps()[..(s - 1) as usize].to_vec();
    let p: Elems = (1..=inst.n).filter(|&x| !removed.contains(&wrap(x as i64, inst.ell))).collect();
    let a = order.rep(s);
    let p_h = (1..=inst.d)
        .map(|h| {
            let drop: Vec<u32> = (h..inst.d).map(|j| a + j * inst.ell).collect();
            p.iter().copied().filter(|x| !drop.contains(x)).collect()
        })
        .collect();
    let mut window = Vec::new();
    let mut x = successor(&p, wrap(a as i64 - inst.ell as i64, inst.n))?;
    loop {
        window.push(x);
        if x == a {
            break;
        }
        x = successor(&p, x)?;
    }
    Ok(Stage { a: Some(a), p, p_h, window })
}

/// `P_s` and its truncations `P_{s,1}, …, P_{s,d}`.
pub fn ground_sets(inst: &DivisibleInstance, order: &OrbitOrder, s: u32) -> Result<(Elems, Vec<Elems>)> {
    let st = stage(inst, order, s)?;
    Ok((st.p, st.p_h))
}

/// Elements of `P_s` from `S_{P_s}(a_s - ℓ)` through `a_s`.
pub fn index_window(inst: &DivisibleInstance, order: &OrbitOrder, s: u32) -> Result<Elems> {
    Ok(stage(inst, order, s)?.window)
}

fn interval_in(st: &Stage, k: u32, i: u32, h: u32) -> Option<Elems> {
    let a = st.a?;
    let ph = &st.p_h[h as usize - 1];
    if ph.binary_search(&i).is_err() || (ph.len() as u32) < k {
        return None;
    }
    let mut out = vec![i];
    let mut y = i;
    for _ in 1..k {
        y = successor(ph, y).ok()?;
        out.push(y);
    }
    out.sort_unstable();
    out.dedup();
    // Only intervals through a_s represent this stage; the others belong to
    // orbits already produced or to none at all.
    (out.len() == k as usize && out.binary_search(&a).is_ok()).then_some(out)
}

/// `I(i, h)`, or `None` when rejected.
pub fn interval_i(inst: &DivisibleInstance, order: &OrbitOrder, s: u32, i: u32, h: u32) -> Result<Option<Elems>> {
    if h == 0 || h > inst.d {
        return Err(Error::OutOfRange(format!("h = {h} not in 1..={}", inst.d)));
    }
    let st = stage(inst, order, s)?;
    Ok(interval_in(&st, inst.k, i, h))
}

fn b_of(inst: &DivisibleInstance, st: &Stage) -> BTreeSet<Elems> {
    let mut out = BTreeSet::new();
    for h in 1..=inst.d {
        for &i in &st.window {
            if let Some(iv) = interval_in(st, inst.k, i, h) {
                out.insert(iv);
            }
        }
    }
    out
}

fn l_of(inst: &DivisibleInstance, b: &BTreeSet<Elems>) -> BTreeSet<Elems> {
    let mut out = BTreeSet::new();
    for iv in b {
        for x in 0..inst.d {
            out.insert(shift_elems(iv, x * inst.ell, inst.n));
        }
    }
    out
}

/// Orbit representatives `B_s` as sorted element lists.
pub fn build_b_s(inst: &DivisibleInstance, order: &OrbitOrder, s: u32) -> Result<Vec<Elems>> {
    let st = stage(inst, order, s)?;
    Ok(b_of(inst, &st).into_iter().collect())
}

/// `L_s`, the union of the `ρ^ℓ` orbits of `B_s`.
pub fn build_l_s(inst: &DivisibleInstance, order: &OrbitOrder, s: u32) -> Result<Vec<Elems>> {
    let st = stage(inst, order, s)?;
    Ok(l_of(inst, &b_of(inst, &st)).into_iter().collect())
}

/// Stage sizes predicted by the counting argument. `b` is absent for the
/// final stage, where only the size of `L_s` is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub b: Option<usize>,
    pub l: usize,
}

pub fn predicted_sizes(inst: &DivisibleInstance, s: u32) -> Result<Prediction> {
    inst.check_stage(s)?;
    let (k, d, r, ell) = (inst.k as usize, inst.d as usize, inst.r, inst.ell);
    Ok(if s + r < ell {
        Prediction { b: Some(k), l: d * k }
    } else if s + r == ell {
        let b = if inst.c == 1 { k - r as usize } else { k };
        Prediction { b: Some(b), l: d * b }
    } else {
        let l = match inst.c {
            -1 => k + 1,
            0 => 1,
            _ => 0,
        };
        Prediction { b: None, l }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageTrace {
    pub s: u32,
    pub a_s: Option<u32>,
    pub p_s: Elems,
    pub p_s_h: Vec<Elems>,
    pub window: Elems,
    pub b_s: Vec<Elems>,
    pub l_s: Vec<Elems>,
    pub predicted: Prediction,
}

/// Set when the trace belongs to the lifted run of a folding instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldSummary {
    pub n: u32,
    pub g: u32,
    /// Stages `1..=ell-g` whose orbits are discarded before mapping back.
    pub dropped_stages: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorTrace {
    pub instance: DivisibleInstance,
    pub order: OrbitOrder,
    pub stages: Vec<StageTrace>,
    pub fold: Option<FoldSummary>,
}

impl GeneratorTrace {
    /// Union of all `L_s`, over the trace's own ground set.
    pub fn union(&self) -> BTreeSet<Elems> {
        self.stages.iter().flat_map(|st| st.l_s.iter().cloned()).collect()
    }

    /// Stages whose constructed sizes disagree with the prediction.
    pub fn mispredicted_stages(&self) -> Vec<u32> {
        self.stages
            .iter()
            .filter(|st| st.l_s.len() != st.predicted.l || st.predicted.b.is_some_and(|b| b != st.b_s.len()))
            .map(|st| st.s)
            .collect()
    }
}

pub fn generate_divisible_trace(inst: &DivisibleInstance, order: &OrbitOrder) -> Result<GeneratorTrace> {
    let stages = (1..=inst.last_stage())
        .map(|s| {
            let st = stage(inst, order, s)?;
            let b = b_of(inst, &st);
            let l = l_of(inst, &b);
            Ok(StageTrace {
                s,
                a_s: st.a,
                p_s: st.p,
                p_s_h: st.p_h,
                window: st.window,
                b_s: b.into_iter().collect(),
                l_s: l.into_iter().collect(),
                predicted: predicted_sizes(inst, s)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorTrace { instance: *inst, order: order.clone(), stages, fold: None })
}

/// `D = L_1 ∪ … ∪ L_{ℓ-r+1}` for `n = dℓ`.
pub fn generate_divisible(params: &Params, order: &OrbitOrder) -> Result<Collection> {
    let inst = DivisibleInstance::from_params(params)?;
    let trace = generate_divisible_trace(&inst, order)?;
    to_collection(params.n, params.k, trace.union().iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running() -> (DivisibleInstance, OrbitOrder) {
        (DivisibleInstance::new(3, 6, 3).unwrap(), OrbitOrder::descending(3))
    }

    #[test]
    fn successor_examples() {
        assert_eq!(successor(&[1, 2, 4, 5], 5).unwrap(), 1);
        assert_eq!(successor(&[1, 2, 4, 5], 2).unwrap(), 4);
        assert_eq!(successor(&[7], 7).unwrap(), 7);
        assert_eq!(successor(&[1, 2], 3), Err(Error::NotAMember(3)));
    }

    #[test]
    fn running_example_stages() {
        let (inst, o) = running();
        let (p1, p1h) = ground_sets(&inst, &o, 1).unwrap();
        assert_eq!(p1, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(p1h[0], vec![1, 2, 3, 4, 5]);
        let (p2, p2h) = ground_sets(&inst, &o, 2).unwrap();
        assert_eq!(p2, vec![1, 2, 4, 5]);
        assert_eq!(p2h, vec![vec![1, 2, 4], vec![1, 2, 4, 5]]);
        assert_eq!(ground_sets(&inst, &o, 3).unwrap().0, vec![1, 4]);
        assert!(ground_sets(&inst, &o, 4).is_err());

        assert_eq!(index_window(&inst, &o, 1).unwrap(), vec![1, 2, 3]);
        assert_eq!(index_window(&inst, &o, 2).unwrap(), vec![1, 2]);

        assert_eq!(interval_i(&inst, &o, 1, 1, 2).unwrap(), Some(vec![1, 2, 3]));
        assert_eq!(interval_i(&inst, &o, 2, 1, 1).unwrap(), Some(vec![1, 2, 4]));
        assert_eq!(interval_i(&inst, &o, 3, 1, 1).unwrap(), None);

        assert_eq!(build_b_s(&inst, &o, 1).unwrap(), vec![vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]]);
        assert_eq!(build_b_s(&inst, &o, 2).unwrap(), vec![vec![1, 2, 4], vec![2, 4, 5]]);
        assert!(build_b_s(&inst, &o, 3).unwrap().is_empty());
        assert_eq!(
            build_l_s(&inst, &o, 2).unwrap(),
            vec![vec![1, 2, 4], vec![1, 2, 5], vec![1, 4, 5], vec![2, 4, 5]]
        );
    }

    #[test]
    fn window_after_wrap() {
        // a_1 = 3, a_1 - ell = 0 reduces to n = 6, whose successor in [6] is 1.
        let (inst, o) = running();
        assert_eq!(index_window(&inst, &o, 1).unwrap()[0], 1);
    }

    #[test]
    fn running_predictions() {
        let (inst, _) = running();
        assert_eq!(predicted_sizes(&inst, 1).unwrap(), Prediction { b: Some(3), l: 6 });
        assert_eq!(predicted_sizes(&inst, 2).unwrap(), Prediction { b: Some(2), l: 4 });
        assert_eq!(predicted_sizes(&inst, 3).unwrap(), Prediction { b: None, l: 0 });
        // The last stage of (2, 6, 3) holds the single fixed set {1,4}.
        let inst = DivisibleInstance::new(2, 6, 3).unwrap();
        assert_eq!(predicted_sizes(&inst, 3).unwrap().l, 1);
        assert_eq!(build_b_s(&inst, &OrbitOrder::descending(3), 3).unwrap(), vec![vec![1, 4]]);
    }

    #[test]
    fn running_collection() {
        let p = Params::new(3, 6, 3).unwrap();
        let d = generate_divisible(&p, &OrbitOrder::descending(3)).unwrap();
        let expected = Collection::parse("123 234 345 456 156 126 125 245 124 145", 6, 3).unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn infeasible_is_rejected() {
        assert!(matches!(DivisibleInstance::new(2, 8, 2), Err(Error::Infeasible { .. })));
        let p = Params::new(2, 5, 1).unwrap();
        assert!(matches!(generate_divisible(&p, &OrbitOrder::descending(1)), Err(Error::Infeasible { .. })));
    }
}
