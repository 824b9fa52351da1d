use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::MAX_N;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Instance parameters `(k, n, ell)` with the derived `g = gcd(n, ell)` and
/// `d = n / g`, the order of `a ↦ a + ell (mod n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub n: u32,
    pub k: u32,
    pub ell: u32,
    pub g: u32,
    pub d: u32,
    /// `(r, c)` with `k = d·r + c` and `c ∈ {-1, 0, 1}`, when such a split exists.
    pub split: Option<(u32, i32)>,
}

impl Params {
    pub fn new(k: u32, n: u32, ell: u32) -> Result<Self> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::OutOfRange(format!("n = {n} not in 2..={MAX_N}")));
        }
        if k < 1 || k > n - 1 {
            return Err(Error::OutOfRange(format!("k = {k} not in 1..={}", n - 1)));
        }
        if ell < 1 || ell > n - 1 {
            return Err(Error::OutOfRange(format!("ell = {ell} not in 1..={}", n - 1)));
        }
        let g = gcd(n, ell);
        let d = n / g;
        Ok(Params { n, k, ell, g, d, split: split(k, d) })
    }

    pub fn is_feasible(&self) -> bool {
        self.split.is_some()
    }

    /// True when `ell` divides `n`, i.e. `n = d·ell`.
    pub fn is_divisible(&self) -> bool {
        self.g == self.ell
    }

    pub fn r(&self) -> Option<u32> {
        self.split.map(|(r, _)| r)
    }

    pub fn c(&self) -> Option<i32> {
        self.split.map(|(_, c)| c)
    }

    /// Errors with [`Error::Infeasible`] unless the congruence holds.
    pub fn require_feasible(&self) -> Result<(u32, i32)> {
        self.split.ok_or(Error::Infeasible {
            k: self.k,
            n: self.n,
            ell: self.ell,
            d: self.d,
            residue: self.k % self.d,
        })
    }
}

/// For `d = 2` an odd `k` is both `1` and `-1` mod `d`; `c = 1` is preferred.
fn split(k: u32, d: u32) -> Option<(u32, i32)> {
    let m = k % d;
    if m == 0 {
        Some((k / d, 0))
    } else if m == 1 {
        Some(((k - 1) / d, 1))
    } else if m == d - 1 {
        Some(((k + 1) / d, -1))
    } else {
        None
    }
}

/// Feasibility report for a parameter triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    pub k: u32,
    pub n: u32,
    pub ell: u32,
    pub g: u32,
    pub d: u32,
    pub r: Option<u32>,
    pub c: Option<i32>,
    pub feasible: bool,
}

/// Decides whether a `ρ^ell`-symmetric maximal weakly separated collection of
/// `k`-subsets of `[n]` exists: iff `k mod d ∈ {0, 1, d-1}`.
pub fn feasibility(k: u32, n: u32, ell: u32) -> Result<Feasibility> {
    let p = Params::new(k, n, ell)?;
    Ok(Feasibility {
        k,
        n,
        ell,
        g: p.g,
        d: p.d,
        r: p.r(),
        c: p.c(),
        feasible: p.is_feasible(),
    })
}
