//! Weak separation and the collection-level predicates built on it.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{Collection, KSubset};

/// `a < b < c < d` with `a, c` on one side of the symmetric difference and
/// `b, d` on the other.
pub type Witness = [u32; 4];

/// Scans the symmetric difference in increasing order looking for four
/// alternating elements. Greedy from the smallest element is enough: an
/// alternating quadruple exists iff the side labels change at least three times.
fn alternation(a: u64, b: u64) -> Option<Witness> {
    let only_a = a & !b;
    let only_b = b & !a;
    let mut rest = only_a | only_b;
    let mut found = [0u32; 4];
    let mut len = 0;
    let mut side = false;
    while rest != 0 && len < 4 {
        let t = rest.trailing_zeros();
        rest &= rest - 1;
        let in_a = (only_a >> t) & 1 == 1;
        if len == 0 || in_a != side {
            found[len] = t + 1;
            len += 1;
            side = in_a;
        }
    }
    (len == 4).then_some(found)
}

pub(crate) fn separated_bits(a: u64, b: u64) -> bool {
    alternation(a, b).is_none()
}

fn check_ambient(s: &KSubset, t: &KSubset) -> Result<()> {
    if s.n() != t.n() || s.len() != t.len() {
        return Err(Error::AmbientMismatch(format!(
            "{s} is a {}-subset of [{}] but {t} is a {}-subset of [{}]",
            s.len(),
            s.n(),
            t.len(),
            t.n()
        )));
    }
    Ok(())
}

/// `None` when `s` and `t` are weakly separated, otherwise an alternating
/// quadruple.
pub fn separation_witness(s: &KSubset, t: &KSubset) -> Result<Option<Witness>> {
    check_ambient(s, t)?;
    Ok(alternation(s.bits(), t.bits()))
}

pub fn is_weakly_separated(s: &KSubset, t: &KSubset) -> Result<bool> {
    Ok(separation_witness(s, t)?.is_none())
}

/// Outcome of checking every unordered pair of a collection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub separated: bool,
    pub failing_pairs: Vec<(KSubset, KSubset)>,
}

/// Exhaustive pairwise check. The result is cached on the collection.
pub fn is_ws_collection(d: &Collection) -> PairReport {
    let failing = d.failing_pairs_cache().get_or_init(|| {
        let members = d.to_vec();
        let mut out: Vec<(KSubset, KSubset)> = (0..members.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let a = members[i];
                members[i + 1..]
                    .iter()
                    .filter(move |b| !separated_bits(a.bits(), b.bits()))
                    .map(move |b| (a, *b))
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort();
        out
    });
    PairReport { separated: failing.is_empty(), failing_pairs: failing.clone() }
}

/// Members of `d` whose image under `+ell` is missing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub violators: Vec<KSubset>,
}

pub fn is_rho_symmetric(d: &Collection, ell: i64) -> SymmetryReport {
    let violators: Vec<KSubset> = d.iter().filter(|m| !d.contains(&m.shift(ell))).copied().collect();
    SymmetryReport { symmetric: violators.is_empty(), violators }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub maximal: bool,
    pub size: usize,
    pub expected_size: usize,
    /// Cyclic intervals absent from the collection. Diagnostic only.
    pub missing_intervals: Vec<KSubset>,
}

/// Maximality by cardinality `k(n-k)+1`; errors if `d` is not weakly separated.
pub fn is_maximal(d: &Collection) -> Result<MaximalityReport> {
    let pairs = is_ws_collection(d);
    if !pairs.separated {
        return Err(Error::NotWeaklySeparated(pairs.failing_pairs.len()));
    }
    let (n, k) = (d.n() as usize, d.k() as usize);
    let expected_size = k * (n - k) + 1;
    let missing_intervals = (1..=d.n())
        .filter_map(|i| KSubset::interval(d.n(), i, d.k()).ok())
        .filter(|iv| !d.contains(iv))
        .collect::<Vec<_>>();
    Ok(MaximalityReport {
        maximal: d.len() == expected_size,
        size: d.len(),
        expected_size,
        missing_intervals,
    })
}
