//! Subsets of the cyclic ground set `[n] = {1, …, n}` and collections of them.
//!
//! A [`KSubset`] is stored as a bitmask (element `x` lives at bit `x - 1`), so
//! the ground set is limited to [`MAX_N`] elements. Ordering is lexicographic on
//! the sorted element lists, which is also the canonical order of a
//! [`Collection`].

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: u32 = 64;

/// Reduces an integer into `1..=n`, with residue 0 represented as `n`.
pub fn wrap(x: i64, n: u32) -> u32 {
    let n = n as i64;
    ((x - 1).rem_euclid(n) + 1) as u32
}

fn mask(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `[n]`. The size is not fixed by the type; most APIs expect all
/// subsets in play to share one `(n, k)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSubset {
    n: u8,
    bits: u64,
}

impl KSubset {
    pub fn new<I: IntoIterator<Item = u32>>(n: u32, elements: I) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::OutOfRange(format!("ground set size {n} not in 1..={MAX_N}")));
        }
        let mut bits = 0u64;
        for x in elements {
            if x == 0 || x > n {
                return Err(Error::MalformedSubset(format!("element {x} outside [1, {n}]")));
            }
            let b = 1u64 << (x - 1);
            if bits & b != 0 {
                return Err(Error::MalformedSubset(format!("repeated element {x}")));
            }
            bits |= b;
        }
        Ok(KSubset { n: n as u8, bits })
    }

    /// Builds from a bitmask; bits above `n` are an error.
    pub fn from_bits(n: u32, bits: u64) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::OutOfRange(format!("ground set size {n} not in 1..={MAX_N}")));
        }
        if bits & !mask(n) != 0 {
            return Err(Error::MalformedSubset(format!("bits {bits:#x} exceed n = {n}")));
        }
        Ok(KSubset { n: n as u8, bits })
    }

    pub(crate) fn from_bits_unchecked(n: u32, bits: u64) -> Self {
        debug_assert!(bits & !mask(n) == 0);
        KSubset { n: n as u8, bits }
    }

    /// The cyclic interval `{i, i+1, …, i+k-1}` reduced into `[n]`.
    pub fn interval(n: u32, start: u32, k: u32) -> Result<Self> {
        KSubset::new(n, (0..k).map(|j| wrap(start as i64 + j as i64, n)))
    }

    pub fn empty(n: u32) -> Result<Self> {
        KSubset::from_bits(n, 0)
    }

    pub fn n(&self) -> u32 {
        self.n as u32
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, x: u32) -> bool {
        x >= 1 && x <= self.n() && self.bits & (1u64 << (x - 1)) != 0
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let t = rest.trailing_zeros();
                rest &= rest - 1;
                Some(t + 1)
            }
        })
    }

    pub fn elements(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// `I +_n t`: adds `t` to every element modulo `n`.
    pub fn shift(&self, t: i64) -> KSubset {
        let n = self.n();
        let t = t.rem_euclid(n as i64) as u32;
        if t == 0 || self.bits == 0 {
            return *self;
        }
        let m = mask(n);
        let rotated = ((self.bits << t) | (self.bits >> (n - t))) & m;
        KSubset { n: self.n, bits: rotated }
    }

    pub fn complement(&self) -> KSubset {
        KSubset { n: self.n, bits: !self.bits & mask(self.n()) }
    }

    pub fn union(&self, other: &KSubset) -> KSubset {
        KSubset { n: self.n, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &KSubset) -> KSubset {
        KSubset { n: self.n, bits: self.bits & other.bits }
    }

    pub fn difference(&self, other: &KSubset) -> KSubset {
        KSubset { n: self.n, bits: self.bits & !other.bits }
    }

    pub fn is_subset(&self, other: &KSubset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn with(&self, x: u32) -> KSubset {
        KSubset { n: self.n, bits: self.bits | (1u64 << (x - 1)) }
    }

    pub fn without(&self, x: u32) -> KSubset {
        KSubset { n: self.n, bits: self.bits & !(1u64 << (x - 1)) }
    }

    /// True when `self` is one of the `n` cyclic intervals of its size.
    pub fn is_cyclic_interval(&self) -> bool {
        let k = self.len();
        if k == 0 || k == self.n() {
            return true;
        }
        (1..=self.n()).any(|i| KSubset::interval(self.n(), i, k).map(|iv| iv == *self).unwrap_or(false))
    }

    /// Digit string such as `126`; only defined for `n <= 9`.
    pub fn compact(&self) -> Option<String> {
        if self.n() > 9 {
            return None;
        }
        Some(self.iter().map(|x| char::from(b'0' + x as u8)).collect())
    }

    /// Accepts `{1,2,6}`, `1,2,6`, or the compact `126` when `n <= 9`.
    pub fn parse(s: &str, n: u32) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(t).trim();
        if inner.is_empty() {
            return KSubset::empty(n);
        }
        let elements: Vec<u32> = if inner.contains(',') || inner.contains(' ') {
            inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|p| !p.is_empty())
                .map(|p| p.parse::<u32>().map_err(|_| Error::MalformedSubset(format!("bad element {p:?} in {s:?}"))))
                .collect::<Result<_>>()?
        } else if n <= 9 {
            inner
                .chars()
                .map(|c| c.to_digit(10).ok_or_else(|| Error::MalformedSubset(format!("bad digit {c:?} in {s:?}"))))
                .collect::<Result<_>>()?
        } else {
            vec![inner.parse::<u32>().map_err(|_| Error::MalformedSubset(format!("cannot parse {s:?}")))?]
        };
        KSubset::new(n, elements)
    }
}

impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.bits ^ other.bits;
        if diff == 0 {
            return self.n.cmp(&other.n);
        }
        let low = diff.trailing_zeros();
        let above = if low == 63 { 0 } else { !((1u64 << (low + 1)) - 1) };
        let self_has = (self.bits >> low) & 1 == 1;
        let lacking = if self_has { other } else { self };
        // The holder of the lowest differing element is smaller unless the
        // other set stops there, in which case the other is a prefix.
        let holder_smaller = lacking.bits & above != 0;
        match (self_has, holder_smaller) {
            (true, true) | (false, false) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.compact() {
            Some(c) if !c.is_empty() => write!(f, "{c}"),
            _ => write!(f, "{self}"),
        }
    }
}

/// The set `{x, x + ell, …}` of an element under `a ↦ a + ell (mod n)`.
pub fn element_orbit(x: u32, ell: u32, n: u32) -> Vec<u32> {
    let mut out = vec![x];
    let mut y = wrap(x as i64 + ell as i64, n);
    while y != x {
        out.push(y);
        y = wrap(y as i64 + ell as i64, n);
    }
    out
}

/// `I +_n t`.
pub fn cyclic_shift_subset(subset: &KSubset, t: i64) -> KSubset {
    subset.shift(t)
}

/// The orbit `{I +_n x·ell}` as a collection.
pub fn rho_orbit(subset: &KSubset, ell: i64) -> Collection {
    let mut members = BTreeSet::new();
    let mut cur = *subset;
    loop {
        members.insert(cur);
        cur = cur.shift(ell);
        if cur == *subset {
            break;
        }
    }
    Collection::from_set_unchecked(subset.n(), subset.len(), members)
}

/// A deduplicated, canonically ordered set of `k`-subsets of `[n]`.
pub struct Collection {
    n: u32,
    k: u32,
    members: BTreeSet<KSubset>,
    failing_pairs: OnceLock<Vec<(KSubset, KSubset)>>,
}

impl Collection {
    /// Builds a collection; duplicates collapse silently.
    pub fn new<I: IntoIterator<Item = KSubset>>(n: u32, k: u32, members: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for m in members {
            check_member(n, k, &m)?;
            set.insert(m);
        }
        Ok(Self::from_set_unchecked(n, k, set))
    }

    /// Like [`Collection::new`] but rejects repeated members.
    pub fn from_distinct<I: IntoIterator<Item = KSubset>>(n: u32, k: u32, members: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for m in members {
            check_member(n, k, &m)?;
            if !set.insert(m) {
                return Err(Error::DuplicateMember(m));
            }
        }
        Ok(Self::from_set_unchecked(n, k, set))
    }

    /// Parses whitespace-separated subsets in any accepted text form.
    pub fn parse(s: &str, n: u32, k: u32) -> Result<Self> {
        let members = split_subset_list(s)
            .into_iter()
            .map(|tok| KSubset::parse(&tok, n))
            .collect::<Result<Vec<_>>>()?;
        Collection::new(n, k, members)
    }

    pub(crate) fn from_set_unchecked(n: u32, k: u32, members: BTreeSet<KSubset>) -> Self {
        Collection { n, k, members, failing_pairs: OnceLock::new() }
    }

    pub fn empty(n: u32, k: u32) -> Self {
        Self::from_set_unchecked(n, k, BTreeSet::new())
    }

    /// All `n` cyclic intervals of size `k`.
    pub fn intervals(n: u32, k: u32) -> Result<Self> {
        Collection::new(n, k, (1..=n).map(|i| KSubset::interval(n, i, k)).collect::<Result<Vec<_>>>()?)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &KSubset) -> bool {
        self.members.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &KSubset> + '_ {
        self.members.iter()
    }

    pub fn members(&self) -> &BTreeSet<KSubset> {
        &self.members
    }

    pub fn to_vec(&self) -> Vec<KSubset> {
        self.members.iter().copied().collect()
    }

    pub fn shift(&self, t: i64) -> Collection {
        Self::from_set_unchecked(self.n, self.k, self.members.iter().map(|m| m.shift(t)).collect())
    }

    /// `{[n] \ A : A ∈ self}`, a collection of `(n-k)`-subsets.
    pub fn complements(&self) -> Collection {
        Self::from_set_unchecked(self.n, self.n - self.k, self.members.iter().map(|m| m.complement()).collect())
    }

    pub fn union(&self, other: &Collection) -> Collection {
        let mut set = self.members.clone();
        set.extend(other.members.iter().copied());
        Self::from_set_unchecked(self.n, self.k, set)
    }

    pub fn difference(&self, other: &Collection) -> Collection {
        Self::from_set_unchecked(self.n, self.k, self.members.difference(&other.members).copied().collect())
    }

    pub fn with(&self, s: KSubset) -> Collection {
        let mut set = self.members.clone();
        set.insert(s);
        Self::from_set_unchecked(self.n, self.k, set)
    }

    pub fn without(&self, s: &KSubset) -> Collection {
        let mut set = self.members.clone();
        set.remove(s);
        Self::from_set_unchecked(self.n, self.k, set)
    }

    pub(crate) fn failing_pairs_cache(&self) -> &OnceLock<Vec<(KSubset, KSubset)>> {
        &self.failing_pairs
    }

    /// Space-separated compact or braced text.
    pub fn to_text(&self) -> String {
        self.members
            .iter()
            .map(|m| m.compact().unwrap_or_else(|| m.to_string()))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn check_member(n: u32, k: u32, m: &KSubset) -> Result<()> {
    if m.n() != n || m.len() != k {
        return Err(Error::AmbientMismatch(format!(
            "member {m} has (n, k) = ({}, {}), collection expects ({n}, {k})",
            m.n(),
            m.len()
        )));
    }
    Ok(())
}

/// Splits `{1,2,3} {2,3,4}` or `123 234` or `123,234` into subset tokens.
fn split_subset_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for c in s.chars() {
        match c {
            '{' => {
                depth += 1;
                cur.push(c);
            }
            '}' => {
                depth -= 1;
                cur.push(c);
                if depth == 0 {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if (c.is_whitespace() || c == ',' || c == ';') && depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                cur.clear();
            }
            c => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

impl Clone for Collection {
    fn clone(&self) -> Self {
        let c = Self::from_set_unchecked(self.n, self.k, self.members.clone());
        if let Some(p) = self.failing_pairs.get() {
            let _ = c.failing_pairs.set(p.clone());
        }
        c
    }
}

impl PartialEq for Collection {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.members == other.members
    }
}

impl Eq for Collection {}

impl fmt::Debug for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl fmt::Display for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_text().replace(' ', ", "))
    }
}

/// Serialized as the sorted element array; the ambient `n` is carried by the
/// enclosing structure.
impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl Serialize for Collection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Collection", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("members", &self.members)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct CollectionRepr {
    n: u32,
    k: u32,
    members: Vec<Vec<u32>>,
}

/// Rejects repeated members and members of the wrong size.
impl<'de> Deserialize<'de> for Collection {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CollectionRepr::deserialize(deserializer)?;
        let members = repr
            .members
            .into_iter()
            .map(|m| KSubset::new(repr.n, m))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Collection::from_distinct(repr.n, repr.k, members).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: u32, e: &[u32]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(s(6, &[1, 2, 3]).shift(3), s(6, &[4, 5, 6]));
        assert_eq!(s(6, &[1, 5, 6]).shift(3), s(6, &[2, 3, 4]));
        assert_eq!(s(6, &[1, 2, 6]).shift(0), s(6, &[1, 2, 6]));
        assert_eq!(s(6, &[1, 2, 6]).shift(-1), s(6, &[1, 5, 6]));
        assert_eq!(s(64, &[64]).shift(1), s(64, &[1]));
    }

    #[test]
    fn wrap_uses_n_for_zero() {
        assert_eq!(wrap(0, 6), 6);
        assert_eq!(wrap(-1, 6), 5);
        assert_eq!(wrap(7, 6), 1);
    }

    #[test]
    fn orbit_examples() {
        let o = rho_orbit(&s(6, &[1, 2, 3]), 3);
        assert_eq!(o.to_vec(), vec![s(6, &[1, 2, 3]), s(6, &[4, 5, 6])]);
        assert_eq!(rho_orbit(&s(6, &[1, 4]), 3).len(), 1);
        let o = rho_orbit(&s(6, &[1, 2, 4]), 3);
        assert_eq!(o.to_vec(), vec![s(6, &[1, 2, 4]), s(6, &[1, 4, 5])]);
    }

    #[test]
    fn lexicographic_order() {
        let mut v = vec![s(6, &[2, 3, 4]), s(6, &[1, 5, 6]), s(6, &[1, 2, 6]), s(6, &[1, 2, 3])];
        v.sort();
        assert_eq!(v, vec![s(6, &[1, 2, 3]), s(6, &[1, 2, 6]), s(6, &[1, 5, 6]), s(6, &[2, 3, 4])]);
        // prefix is smaller
        assert!(s(6, &[1, 2]) < s(6, &[1, 2, 3]));
        assert!(s(6, &[]) < s(6, &[1]));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(KSubset::parse("{1,2,6}", 6).unwrap(), s(6, &[1, 2, 6]));
        assert_eq!(KSubset::parse("126", 6).unwrap(), s(6, &[1, 2, 6]));
        assert_eq!(KSubset::parse("{10,11}", 12).unwrap(), s(12, &[10, 11]));
        assert!(KSubset::parse("127", 6).is_err());
        assert!(KSubset::parse("{1,1}", 6).is_err());
        assert_eq!(s(6, &[1, 2, 6]).to_string(), "{1,2,6}");
        assert_eq!(s(6, &[1, 2, 6]).compact().as_deref(), Some("126"));
        assert_eq!(s(10, &[1, 2]).compact(), None);
    }

    #[test]
    fn collection_parse_and_dedup() {
        let c = Collection::parse("123 234 {3,4,5} 123", 6, 3).unwrap();
        assert_eq!(c.len(), 3);
        assert!(Collection::from_distinct(6, 3, vec![s(6, &[1, 2, 3]), s(6, &[1, 2, 3])]).is_err());
        assert!(Collection::new(6, 3, vec![s(6, &[1, 2])]).is_err());
    }

    #[test]
    fn intervals() {
        let c = Collection::intervals(6, 3).unwrap();
        assert_eq!(c.to_text(), "123 126 156 234 345 456");
        assert!(s(6, &[1, 5, 6]).is_cyclic_interval());
        assert!(!s(6, &[1, 3, 5]).is_cyclic_interval());
    }
}
