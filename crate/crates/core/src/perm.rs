//! Permutations of `[n]` in one-line notation, strong Bruhat order, intervals,
//! duality, and the set-sequence notation used to write down split cells.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::ElementSet;

/// A permutation `a_1 a_2 ... a_n` of `[n]`, 1-indexed.
///
/// The same sequence read as coordinates is a vertex of the permutahedron.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &a in &entries {
            if a == 0 || a > n || seen[a] {
                return Err(Error::InvalidPermutation { entries, n });
            }
            seen[a] = true;
        }
        Ok(Permutation { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    /// `e = 12...n`.
    pub fn identity(n: usize) -> Self {
        Permutation { entries: (1..=n).collect() }
    }

    /// `ω = n...21`.
    pub fn longest(n: usize) -> Self {
        Permutation { entries: (1..=n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Value at 1-indexed position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &a)| a == i + 1)
    }

    pub fn is_longest(&self) -> bool {
        let n = self.n();
        self.entries.iter().enumerate().all(|(i, &a)| a == n - i)
    }

    /// Number of inversions, which is the Coxeter length.
    pub fn length(&self) -> usize {
        let e = &self.entries;
        let mut inv = 0;
        for i in 0..e.len() {
            for j in (i + 1)..e.len() {
                if e[i] > e[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &a) in self.entries.iter().enumerate() {
            inv[a - 1] = i + 1;
        }
        Permutation { entries: inv }
    }

    /// `τ*(j) = n - τ(j) + 1`.
    pub fn dual(&self) -> Self {
        let n = self.n();
        Permutation { entries: self.entries.iter().map(|&a| n + 1 - a).collect() }
    }

    /// Swaps the entries at 1-indexed positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut e = self.entries.clone();
        e.swap(i - 1, j - 1);
        Permutation { entries: e }
    }

    /// All `v` with `p ⋖ v`, sorted.
    pub fn bruhat_covers(&self) -> Vec<Permutation> {
        let n = self.n();
        let len = self.length();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                let v = self.swap_positions(i, j);
                if v.length() == len + 1 {
                    out.push(v);
                }
            }
        }
        out.sort();
        out
    }

    /// Bruhat comparison by the tableau criterion: for every `k`, the sorted prefix
    /// `{u(1..k)}` is component-wise at most the sorted prefix `{v(1..k)}`.
    ///
    /// Both permutations must have the same `n`; see [`bruhat_leq`] for the checked form.
    pub fn bruhat_le(&self, other: &Permutation) -> bool {
        debug_assert_eq!(self.n(), other.n());
        let n = self.n();
        let mut su: Vec<usize> = Vec::with_capacity(n);
        let mut sv: Vec<usize> = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.entries[k];
            let b = other.entries[k];
            let pa = su.partition_point(|&x| x < a);
            su.insert(pa, a);
            let pb = sv.partition_point(|&x| x < b);
            sv.insert(pb, b);
            if su.iter().zip(&sv).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// Coordinate `x_S` of the point form: sum of entries at positions in `S`.
    pub fn coordinate_sum(&self, support: ElementSet) -> i64 {
        support.iter().map(|i| self.entries[i - 1] as i64).sum()
    }

    /// Every permutation of `[n]`, lexicographically.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { entries: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let pivot = i - 1;
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[pivot]).unwrap();
            cur.swap(pivot, j);
            cur[i..].reverse();
        }
        out
    }
}

/// Checked Bruhat comparison `u ≤ v`.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> Result<bool> {
    if u.n() != v.n() {
        return Err(Error::SizeMismatch { left: u.n(), right: v.n() });
    }
    Ok(u.bruhat_le(v))
}

/// Every `z` with `u ≤ z ≤ v`, lexicographically sorted.
pub fn bruhat_interval(u: &Permutation, v: &Permutation) -> Result<Vec<Permutation>> {
    Ok(BruhatInterval::new(u.clone(), v.clone())?.elements())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for a in &self.entries {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|a| a.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts digit strings (`3142`) and comma-separated integers (`10,3,1,...`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let entries: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad permutation entry {p:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .enumerate()
                .map(|(pos, c)| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad permutation digit {c:?} at position {}", pos + 1)))
                })
                .collect::<Result<_>>()?
        };
        if entries.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        Permutation::new(entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Bruhat interval `[lo, hi]` with `lo ≤ hi`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BruhatInterval {
    lo: Permutation,
    hi: Permutation,
}

impl BruhatInterval {
    pub fn new(lo: Permutation, hi: Permutation) -> Result<Self> {
        if !bruhat_leq(&lo, &hi)? {
            return Err(Error::NotAnInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        Ok(BruhatInterval { lo, hi })
    }

    /// `[e, ω]`.
    pub fn full(n: usize) -> Self {
        BruhatInterval { lo: Permutation::identity(n), hi: Permutation::longest(n) }
    }

    pub fn lo(&self) -> &Permutation {
        &self.lo
    }

    pub fn hi(&self) -> &Permutation {
        &self.hi
    }

    pub fn n(&self) -> usize {
        self.lo.n()
    }

    pub fn contains(&self, z: &Permutation) -> bool {
        z.n() == self.n() && self.lo.bruhat_le(z) && z.bruhat_le(&self.hi)
    }

    /// Filters `S_n`; intended for small `n`.
    pub fn elements(&self) -> Vec<Permutation> {
        Permutation::all(self.n()).into_iter().filter(|z| self.contains(z)).collect()
    }

    /// `[σ, τ]* = [τ*, σ*]`.
    pub fn dual(&self) -> Self {
        BruhatInterval { lo: self.hi.dual(), hi: self.lo.dual() }
    }
}

impl fmt::Display for BruhatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for BruhatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[τ]* = [σ,τ]*` as a free function.
pub fn dual_interval(i: &BruhatInterval) -> BruhatInterval {
    i.dual()
}

/// `τ*` as a free function.
pub fn dual_permutation(t: &Permutation) -> Permutation {
    t.dual()
}

/// An ordered sequence of distinct values from `[n]`, possibly partial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ValueSequence(Vec<usize>);

impl ValueSequence {
    pub fn new(values: Vec<usize>, n: usize) -> Result<Self> {
        ElementSet::from_elements(n, &values)?;
        Ok(ValueSequence(values))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &ValueSequence) -> ValueSequence {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ValueSequence(v)
    }

    /// Reads the sequence as a permutation; fails unless it uses every value of `[len]`.
    pub fn to_permutation(&self) -> Result<Permutation> {
        Permutation::new(self.0.clone())
    }
}

impl fmt::Display for ValueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        if self.0.iter().all(|&v| v <= 9) {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        }
    }
}

impl fmt::Debug for ValueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The four sequences attached to `A ⊆ [n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSequences {
    /// `→A`
    pub increasing: ValueSequence,
    /// `←A`
    pub decreasing: ValueSequence,
    /// `e_A`: the identity with the values of `A` deleted.
    pub identity_without: ValueSequence,
    /// `ω_A`: the longest permutation with the values of `A` deleted.
    pub longest_without: ValueSequence,
}

impl SetSequences {
    /// `→A · e_A`
    pub fn increasing_then_identity(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.increasing.concat(&self.identity_without).0)
    }

    /// `←A · ω_A`
    pub fn decreasing_then_longest(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.decreasing.concat(&self.longest_without).0)
    }

    /// `ω_A · ←A`
    pub fn longest_then_decreasing(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.longest_without.concat(&self.decreasing).0)
    }

    /// `e_A · →A`
    pub fn identity_then_increasing(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.identity_without.concat(&self.increasing).0)
    }
}

pub fn set_sequences(a: ElementSet, n: usize) -> SetSequences {
    let inc: Vec<usize> = a.iter().filter(|&x| x <= n).collect();
    let dec: Vec<usize> = inc.iter().rev().copied().collect();
    let e_a: Vec<usize> = (1..=n).filter(|&x| !a.contains(x)).collect();
    let w_a: Vec<usize> = e_a.iter().rev().copied().collect();
    SetSequences {
        increasing: ValueSequence(inc),
        decreasing: ValueSequence(dec),
        identity_without: ValueSequence(e_a),
        longest_without: ValueSequence(w_a),
    }
}

/// The Bruhat permutation `τ_F` of a full chain `B_1 ⊂ ... ⊂ B_n = [n]`.
///
/// Its point form is `e_F = Σ e_{B_i}`: the element added at step `i` gets coordinate `n - i + 1`.
pub fn bruhat_permutation_of_chain(n: usize, chain: &[ElementSet]) -> Result<Permutation> {
    if chain.len() != n {
        return Err(Error::MalformedChain(format!("expected {n} sets, got {}", chain.len())));
    }
    let mut entries = vec![0; n];
    let mut prev = ElementSet::EMPTY;
    for (i, &b) in chain.iter().enumerate() {
        if !prev.is_subset(b) || b.len() != i + 1 {
            return Err(Error::MalformedChain(format!("step {} ({b}) does not add one element to {prev}", i + 1)));
        }
        if b.max_element().is_some_and(|m| m > n) {
            return Err(Error::MalformedChain(format!("{b} is not a subset of [{n}]")));
        }
        let added = b.difference(prev).iter().next().unwrap();
        entries[added - 1] = n - i;
        prev = b;
    }
    Ok(Permutation::from_vec_unchecked(entries))
}

/// Inverse of [`bruhat_permutation_of_chain`]: `B_i` = positions with coordinate `≥ n - i + 1`.
pub fn chain_of_permutation(t: &Permutation) -> Vec<ElementSet> {
    let n = t.n();
    let inv = t.inverse();
    let mut chain = Vec::with_capacity(n);
    let mut cur = ElementSet::EMPTY;
    for i in 1..=n {
        cur = cur.with(inv.at(n + 1 - i));
        chain.push(cur);
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(s: &str, n: usize) -> ElementSet {
        crate::subset::parse_element_set(s, n).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(Permutation::longest(4).length(), 6);
        assert_eq!(p("51423").length(), 6);
    }

    #[test]
    fn covers() {
        assert_eq!(Permutation::identity(3).bruhat_covers(), vec![p("132"), p("213")]);
        assert!(Permutation::longest(5).bruhat_covers().is_empty());
        assert_eq!(p("132").bruhat_covers(), vec![p("231"), p("312")]);
    }

    #[test]
    fn bruhat_examples() {
        assert!(bruhat_leq(&p("1324"), &p("3412")).unwrap());
        assert!(bruhat_leq(&p("2143"), &p("3142")).unwrap());
        assert!(!bruhat_leq(&p("3142"), &p("2413")).unwrap());
        assert!(bruhat_leq(&p("123"), &p("1234")).is_err());
    }

    #[test]
    fn intervals() {
        assert_eq!(bruhat_interval(&Permutation::identity(4), &Permutation::longest(4)).unwrap().len(), 24);
        assert_eq!(bruhat_interval(&p("2413"), &p("2413")).unwrap(), vec![p("2413")]);
        assert!(bruhat_interval(&p("3412"), &p("1324")).is_err());
    }

    #[test]
    fn duals() {
        assert_eq!(p("316542").dual(), p("461235"));
        assert_eq!(p("132456").dual(), p("645321"));
        assert_eq!(Permutation::identity(5).dual(), Permutation::longest(5));
        let i = BruhatInterval::new(Permutation::identity(6), p("316542")).unwrap();
        assert_eq!(i.dual(), BruhatInterval::new(p("461235"), Permutation::longest(6)).unwrap());
        let j = BruhatInterval::new(p("132456"), Permutation::longest(6)).unwrap();
        assert_eq!(j.dual(), BruhatInterval::new(Permutation::identity(6), p("645321")).unwrap());
        assert_eq!(BruhatInterval::full(4).dual(), BruhatInterval::full(4));
    }

    #[test]
    fn sequences() {
        let s = set_sequences(set("356", 7), 7);
        assert_eq!(s.increasing.to_string(), "356");
        assert_eq!(s.decreasing.to_string(), "653");
        assert_eq!(s.identity_without.to_string(), "1247");
        assert_eq!(s.longest_without.to_string(), "7421");
        assert_eq!(s.increasing_then_identity(), p("3561247"));
        assert_eq!(s.longest_then_decreasing(), p("7421653"));
        let empty = set_sequences(ElementSet::EMPTY, 4);
        assert!(empty.increasing.is_empty() && empty.decreasing.is_empty());
        assert_eq!(empty.identity_without.to_permutation().unwrap(), Permutation::identity(4));
        assert_eq!(empty.longest_without.to_permutation().unwrap(), Permutation::longest(4));
    }

    #[test]
    fn chains() {
        let chain: Vec<ElementSet> = ["1", "13", "135", "1345", "12345"].iter().map(|s| set(s, 5)).collect();
        assert_eq!(bruhat_permutation_of_chain(5, &chain).unwrap(), p("51423"));
        assert_eq!(chain_of_permutation(&p("51423")), chain);
        let c3: Vec<ElementSet> = ["3", "23", "123"].iter().map(|s| set(s, 3)).collect();
        assert_eq!(bruhat_permutation_of_chain(3, &c3).unwrap(), p("123"));
        assert_eq!(chain_of_permutation(&p("123")), c3);
        let w3: Vec<ElementSet> = ["1", "12", "123"].iter().map(|s| set(s, 3)).collect();
        assert_eq!(bruhat_permutation_of_chain(3, &w3).unwrap(), p("321"));
        assert_eq!(chain_of_permutation(&p("321")), w3);
        let bad: Vec<ElementSet> = ["1", "23", "123"].iter().map(|s| set(s, 3)).collect();
        assert!(bruhat_permutation_of_chain(3, &bad).is_err());
    }

    #[test]
    fn parsing() {
        assert!("1123".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
        let big: Permutation = "10,3,1,2,4,5,6,7,8,9".parse().unwrap();
        assert_eq!(big.to_string(), "10,3,1,2,4,5,6,7,8,9");
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
