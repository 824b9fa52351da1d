use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total order `ā₁ < ā₂ < … < ā_ℓ` on the element orbits, given by the
/// representatives `a_s ∈ [ℓ]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrbitOrder {
    reps: Vec<u32>,
}

impl OrbitOrder {
    pub fn new(reps: Vec<u32>, ell: u32) -> Result<Self> {
        if reps.len() != ell as usize {
            return Err(Error::InvalidOrder(format!("expected {ell} entries, got {}", reps.len())));
        }
        let mut seen = vec![false; ell as usize + 1];
        for &a in &reps {
            if a == 0 || a > ell {
                return Err(Error::InvalidOrder(format!("{a} is not in 1..={ell}")));
            }
            if std::mem::replace(&mut seen[a as usize], true) {
                return Err(Error::InvalidOrder(format!("{a} repeated")));
            }
        }
        Ok(OrbitOrder { reps })
    }

    /// `(ℓ, ℓ-1, …, 1)`.
    pub fn descending(ell: u32) -> Self {
        OrbitOrder { reps: (1..=ell).rev().collect() }
    }

    /// Parses `3,2,1`.
    pub fn parse(s: &str, ell: u32) -> Result<Self> {
        let reps = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<u32>().map_err(|_| Error::InvalidOrder(format!("bad entry {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        OrbitOrder::new(reps, ell)
    }

    pub fn ell(&self) -> u32 {
        self.reps.len() as u32
    }

    pub fn reps(&self) -> &[u32] {
        &self.reps
    }

    /// `a_s`, 1-based.
    pub fn rep(&self, s: u32) -> u32 {
        self.reps[s as usize - 1]
    }

    /// Folding requires the classes `g+1, …, ℓ` to come first, so that the
    /// classes `1, …, g` which survive folding are the greatest.
    pub fn check_folding(&self, g: u32) -> Result<()> {
        let ell = self.ell();
        let head = &self.reps[..(ell - g) as usize];
        if let Some(bad) = head.iter().find(|&&a| a <= g) {
            return Err(Error::InvalidOrder(format!(
                "folding needs classes {}..={ell} in the first {} positions, found {bad}",
                g + 1,
                ell - g
            )));
        }
        Ok(())
    }

    /// All admissible orders for `(ℓ, g)`, in lexicographic order.
    pub fn all_admissible(ell: u32, g: u32) -> Vec<OrbitOrder> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let mut used = vec![false; ell as usize + 1];
        permute(ell, g, &mut cur, &mut used, &mut out);
        out
    }
}

fn permute(ell: u32, g: u32, cur: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<OrbitOrder>) {
    if cur.len() == ell as usize {
        out.push(OrbitOrder { reps: cur.clone() });
        return;
    }
    let pos = cur.len() as u32;
    for a in 1..=ell {
        let head = pos < ell - g;
        if used[a as usize] || (head && a <= g) || (!head && a > g) {
            continue;
        }
        used[a as usize] = true;
        cur.push(a);
        permute(ell, g, cur, used, out);
        cur.pop();
        used[a as usize] = false;
    }
}

impl fmt::Display for OrbitOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.reps.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
