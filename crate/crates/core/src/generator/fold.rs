use std::collections::BTreeSet;

use super::formal::{generate_divisible_trace, DivisibleInstance, FoldSummary, GeneratorTrace};
use super::{to_collection, Elems, OrbitOrder};
use crate::error::{Error, Result};
use crate::params::Params;
use crate::subset::{wrap, Collection, KSubset};

/// `F: [n] → [dℓ]`, `F(a + g·x) = a + ℓ·x` for `1 ≤ a ≤ g`, `0 ≤ x < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldMap {
    pub n: u32,
    pub ell: u32,
    pub g: u32,
    pub d: u32,
}

impl FoldMap {
    pub fn new(n: u32, ell: u32) -> Result<Self> {
        let p = Params::new(1, n, ell)?;
        Ok(FoldMap { n, ell, g: p.g, d: p.d })
    }

    pub fn lifted_n(&self) -> u32 {
        self.d * self.ell
    }

    pub fn apply(&self, y: u32) -> Result<u32> {
        if y == 0 || y > self.n {
            return Err(Error::MalformedSubset(format!("{y} outside [1, {}]", self.n)));
        }
        let a = wrap(y as i64, self.g);
        Ok(a + self.ell * ((y - a) / self.g))
    }

    /// Errors unless `z` lies in the image `⋃_{a ≤ g} ā`.
    pub fn invert(&self, z: u32) -> Result<u32> {
        if z == 0 || z > self.lifted_n() {
            return Err(Error::MalformedSubset(format!("{z} outside [1, {}]", self.lifted_n())));
        }
        let a = wrap(z as i64, self.ell);
        if a > self.g {
            return Err(Error::NotAMember(z));
        }
        Ok(a + self.g * ((z - a) / self.ell))
    }

    /// The image `A`, sorted.
    pub fn image(&self) -> Elems {
        (1..=self.lifted_n()).filter(|&z| wrap(z as i64, self.ell) <= self.g).collect()
    }
}

/// Elementwise `F`; the result lives in `[dℓ]`.
pub fn fold_map_apply(subset: &KSubset, ell: u32) -> Result<Elems> {
    let f = FoldMap::new(subset.n(), ell)?;
    let mut out = subset.iter().map(|y| f.apply(y)).collect::<Result<Elems>>()?;
    out.sort_unstable();
    Ok(out)
}

/// Elementwise `F⁻¹` back into `[n]`.
pub fn fold_map_invert(elems: &[u32], n: u32, ell: u32) -> Result<KSubset> {
    let f = FoldMap::new(n, ell)?;
    KSubset::new(n, elems.iter().map(|&z| f.invert(z)).collect::<Result<Vec<_>>>()?)
}

/// Generates with the default descending order when `order` is `None`.
pub fn generate(k: u32, n: u32, ell: u32, order: Option<&OrbitOrder>) -> Result<Collection> {
    Ok(generate_with_trace(k, n, ell, order)?.0)
}

/// For `ℓ ∤ n` the trace is that of the lifted run on `[dℓ]`, with
/// [`GeneratorTrace::fold`] set.
pub fn generate_with_trace(k: u32, n: u32, ell: u32, order: Option<&OrbitOrder>) -> Result<(Collection, GeneratorTrace)> {
    let params = Params::new(k, n, ell)?;
    params.require_feasible()?;
    let order = order.cloned().unwrap_or_else(|| OrbitOrder::descending(ell));
    if order.ell() != ell {
        return Err(Error::InvalidOrder(format!("order has {} entries, ell = {ell}", order.ell())));
    }
    if params.is_divisible() {
        let inst = DivisibleInstance::from_params(&params)?;
        let trace = generate_divisible_trace(&inst, &order)?;
        let d = to_collection(n, k, trace.union().iter())?;
        return Ok((d, trace));
    }
    order.check_folding(params.g)?;
    let inst = DivisibleInstance::lifted(&params)?;
    let mut trace = generate_divisible_trace(&inst, &order)?;
    let dropped = ell - params.g;
    trace.fold = Some(FoldSummary { n, g: params.g, dropped_stages: dropped });
    let kept: BTreeSet<&Elems> =
        trace.stages.iter().filter(|st| st.s > dropped).flat_map(|st| st.l_s.iter()).collect();
    let members = kept.into_iter().map(|e| fold_map_invert(e, n, ell)).collect::<Result<Vec<_>>>()?;
    Ok((Collection::new(n, k, members)?, trace))
}
