//! Subsets of a small ground set `[n] = {1, ..., n}` stored as bitmasks.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ground set an [`ElementSet`] can hold.
pub const MAX_GROUND: usize = 64;

/// A subset of `[n]`, elements are 1-indexed.
///
/// Ordering is lexicographic on the increasing element sequence, so `{1,2} < {1,3} < {2}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND);
        if n == MAX_GROUND {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    /// `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        (lo..=hi).fold(ElementSet::EMPTY, |s, e| s.with(e))
    }

    pub fn singleton(e: usize) -> Self {
        ElementSet::EMPTY.with(e)
    }

    /// Builds a set from elements, rejecting anything outside `[n]` and repeats.
    pub fn from_elements(n: usize, elements: &[usize]) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        let mut s = ElementSet::EMPTY;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            if s.contains(e) {
                return Err(Error::RepeatedElement(e));
            }
            s = s.with(e);
        }
        Ok(s)
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 & (1u64 << (e - 1)) != 0
    }

    pub fn with(self, e: usize) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&e));
        ElementSet(self.0 | (1u64 << (e - 1)))
    }

    pub fn without(self, e: usize) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&e));
        ElementSet(self.0 & !(1u64 << (e - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    /// `[n] \ self`.
    pub fn complement(self, n: usize) -> Self {
        ElementSet::full(n).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// 1-based rank of `e` inside the set (`u_j` has index `j`).
    pub fn index_of(self, e: usize) -> Option<usize> {
        if !self.contains(e) {
            return None;
        }
        let below = self.0 & ((1u64 << (e - 1)) - 1);
        Some(below.count_ones() as usize + 1)
    }

    /// All `k`-subsets of `[n]`, in lexicographic order.
    pub fn k_subsets(n: usize, k: usize) -> Vec<ElementSet> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut current = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<ElementSet>) {
            if cur.len() == k {
                out.push(cur.iter().fold(ElementSet::EMPTY, |s, &e| s.with(e)));
                return;
            }
            let remaining = k - cur.len();
            for e in start..=(n + 1 - remaining) {
                cur.push(e);
                rec(e + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(1, n, k, &mut current, &mut out);
        out
    }

    /// Every subset of `[n]` (as raw bitmasks in increasing numeric order).
    pub fn all_subsets(n: usize) -> impl Iterator<Item = ElementSet> {
        assert!(n < MAX_GROUND);
        (0u64..(1u64 << n)).map(ElementSet)
    }

    /// Relabels `[n] \ {e}` onto `[n-1]` keeping the order of the remaining elements.
    pub fn delete_shift(self, e: usize) -> Self {
        let low_mask = (1u64 << (e - 1)) - 1;
        let low = self.0 & low_mask;
        let high = (self.0 >> e) << (e - 1);
        ElementSet(low | high)
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(ElementSet::EMPTY, |s, e| s.with(e))
    }
}

/// Writes `{1,2,4}` as `124` when every element is a single digit, else `1,10,12`.
/// The empty set is written `∅`.
impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let digits = self.max_element().is_some_and(|m| m <= 9);
        let parts: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        if digits {
            write!(f, "{}", parts.concat())
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Parses `124`, `1,2,4`, `{1,2,4}` or the empty forms `""`, `∅`, `{}`.
pub fn parse_element_set(text: &str, n: usize) -> Result<ElementSet> {
    let t = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if t.is_empty() || t == "∅" {
        return Ok(ElementSet::EMPTY);
    }
    let elements: Vec<usize> = if t.contains(',') {
        t.split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad element {p:?} in {text:?}"))))
            .collect::<Result<_>>()?
    } else {
        t.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {text:?}"))))
            .collect::<Result<_>>()?
    };
    ElementSet::from_elements(n, &elements)
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        ElementSet::from_elements(MAX_GROUND, &v).map_err(serde::de::Error::custom)
    }
}
