//! Lattice path matroids `M[U, L]`, good pairs and elementary quotients, and full
//! flags of lattice path matroids (LPFMs) with their Bruhat intervals.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::{is_quotient, QuotientCriterion, SetMatroid};
use crate::perm::{bruhat_permutation_of_chain, chain_of_permutation, BruhatInterval};
use crate::subset::{ElementSet, MAX_GROUND};

/// `U ≤_G L`: the sorted sets compare component-wise. Sets of different size are incomparable.
pub fn gale_leq(a: ElementSet, b: ElementSet) -> bool {
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

/// The lattice path matroid on `[n]` whose bases are the `k`-sets `B` with `U ≤_G B ≤_G L`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePathMatroid {
    n: usize,
    upper: ElementSet,
    lower: ElementSet,
}

/// A pair `(u_j, l_i)` of steps with `max{0, u_j - l_i} ≤ j - i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GoodPair {
    /// Index of `u` in `U`, 1-based.
    pub j: usize,
    /// Index of `l` in `L`, 1-based.
    pub i: usize,
    pub u: usize,
    pub l: usize,
}

impl LatticePathMatroid {
    pub fn new(n: usize, upper: ElementSet, lower: ElementSet) -> Result<Self> {
        if n >= MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        let ground = ElementSet::full(n);
        for s in [upper, lower] {
            if let Some(element) = s.difference(ground).iter().next() {
                return Err(Error::ElementOutOfRange { element, n });
            }
        }
        if upper.len() != lower.len() {
            return Err(Error::SizeMismatch { left: upper.len(), right: lower.len() });
        }
        for (idx, (u, l)) in upper.iter().zip(lower.iter()).enumerate() {
            if u > l {
                return Err(Error::GaleViolation { index: idx + 1, u, l });
            }
        }
        Ok(LatticePathMatroid { n, upper, lower })
    }

    pub fn from_lists(n: usize, upper: &[usize], lower: &[usize]) -> Result<Self> {
        LatticePathMatroid::new(n, ElementSet::from_elements(n, upper)?, ElementSet::from_elements(n, lower)?)
    }

    /// `U_{k,n} = M[{1..k}, {n-k+1..n}]`.
    pub fn uniform(k: usize, n: usize) -> Self {
        LatticePathMatroid { n, upper: ElementSet::range(1, k), lower: ElementSet::range(n + 1 - k, n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.upper.len()
    }

    pub fn upper(&self) -> ElementSet {
        self.upper
    }

    pub fn lower(&self) -> ElementSet {
        self.lower
    }

    /// The Gale interval `[U, L]`, lexicographically.
    pub fn bases(&self) -> Vec<ElementSet> {
        let u = self.upper.to_vec();
        let l = self.lower.to_vec();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(u.len());
        fn rec(pos: usize, u: &[usize], l: &[usize], cur: &mut Vec<usize>, out: &mut Vec<ElementSet>) {
            if pos == u.len() {
                out.push(cur.iter().copied().collect());
                return;
            }
            let start = cur.last().map_or(u[pos], |&prev| u[pos].max(prev + 1));
            for b in start..=l[pos] {
                cur.push(b);
                rec(pos + 1, u, l, cur, out);
                cur.pop();
            }
        }
        rec(0, &u, &l, &mut cur, &mut out);
        out
    }

    pub fn to_matroid(&self) -> SetMatroid {
        SetMatroid::from_bases_unchecked(self.n, self.bases())
    }

    pub fn is_good_pair(&self, u: usize, l: usize) -> bool {
        match (self.upper.index_of(u), self.lower.index_of(l)) {
            (Some(j), Some(i)) => good_pair_inequality(u, l, j, i),
            _ => false,
        }
    }

    /// Every good pair, ordered by `(j, i)`.
    pub fn good_pairs(&self) -> Vec<GoodPair> {
        let mut out = Vec::new();
        for (jx, u) in self.upper.iter().enumerate() {
            for (ix, l) in self.lower.iter().enumerate() {
                let (j, i) = (jx + 1, ix + 1);
                if good_pair_inequality(u, l, j, i) {
                    out.push(GoodPair { j, i, u, l });
                }
            }
        }
        out
    }

    /// `M[U - u, L - l]` for a good pair `(u, l)`.
    pub fn elementary_quotient(&self, u: usize, l: usize) -> Result<LatticePathMatroid> {
        if !self.is_good_pair(u, l) {
            return Err(Error::NotGoodPair { u, l });
        }
        LatticePathMatroid::new(self.n, self.upper.without(u), self.lower.without(l))
    }

    /// `L = {n-k+1, ..., n}`.
    pub fn is_schubert(&self) -> bool {
        self.lower == ElementSet::range(self.n + 1 - self.rank(), self.n)
    }

    /// `U = {1, ..., k}`.
    pub fn is_dual_schubert(&self) -> bool {
        self.upper == ElementSet::range(1, self.rank())
    }

    /// Every LPM on `[n]` of every rank.
    pub fn all(n: usize) -> Vec<LatticePathMatroid> {
        let mut out = Vec::new();
        for k in 0..=n {
            let subsets = ElementSet::k_subsets(n, k);
            for &u in &subsets {
                for &l in &subsets {
                    if gale_leq(u, l) {
                        out.push(LatticePathMatroid { n, upper: u, lower: l });
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> LpmJson {
        LpmJson { n: self.n, upper: self.upper.to_vec(), lower: self.lower.to_vec() }
    }
}

fn good_pair_inequality(u: usize, l: usize, j: usize, i: usize) -> bool {
    (u.saturating_sub(l) as i64) <= j as i64 - i as i64
}

impl fmt::Display for LatticePathMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{}]", self.upper, self.lower)
    }
}

impl fmt::Debug for LatticePathMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} on [{}]", self.n)
    }
}

/// `{"n": int, "U": [int,...], "L": [int,...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpmJson {
    pub n: usize,
    #[serde(rename = "U")]
    pub upper: Vec<usize>,
    #[serde(rename = "L")]
    pub lower: Vec<usize>,
}

impl TryFrom<LpmJson> for LatticePathMatroid {
    type Error = Error;

    fn try_from(j: LpmJson) -> Result<Self> {
        LatticePathMatroid::from_lists(j.n, &j.upper, &j.lower)
    }
}

impl Serialize for LatticePathMatroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePathMatroid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        LpmJson::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

/// One step `M ↦ M[U - u, L - l]` of a quotient chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementaryStep {
    pub pair: GoodPair,
    pub result: LatticePathMatroid,
}

/// A chain of elementary quotients from `hi` down to `lo`, if `lo ≤_q hi`.
///
/// Each step removes one element of `U_hi \ U_lo` and one of `L_hi \ L_lo` forming a good
/// pair of the current matroid; pairs are tried in `(j, i)` order with backtracking.
pub fn quotient_chain(lo: &LatticePathMatroid, hi: &LatticePathMatroid) -> Option<Vec<ElementaryStep>> {
    if lo.n != hi.n || lo.rank() > hi.rank() {
        return None;
    }
    if !lo.upper.is_subset(hi.upper) || !lo.lower.is_subset(hi.lower) {
        return None;
    }
    let mut steps = Vec::new();
    let mut dead = HashSet::new();
    if chain_search(hi, lo, &mut steps, &mut dead) {
        Some(steps)
    } else {
        None
    }
}

fn chain_search(
    cur: &LatticePathMatroid,
    target: &LatticePathMatroid,
    steps: &mut Vec<ElementaryStep>,
    dead: &mut HashSet<LatticePathMatroid>,
) -> bool {
    if cur == target {
        return true;
    }
    if cur.rank() == target.rank() || dead.contains(cur) {
        return false;
    }
    let removable_u = cur.upper.difference(target.upper);
    let removable_l = cur.lower.difference(target.lower);
    for pair in cur.good_pairs() {
        if !removable_u.contains(pair.u) || !removable_l.contains(pair.l) {
            continue;
        }
        let Ok(next) = cur.elementary_quotient(pair.u, pair.l) else {
            continue;
        };
        steps.push(ElementaryStep { pair, result: next });
        if chain_search(&next, target, steps, dead) {
            return true;
        }
        steps.pop();
    }
    dead.insert(*cur);
    false
}

/// Recognizes an LPM under the identity labeling: `U` and `L` are the component-wise
/// min and max of the bases, and the bases must fill the whole Gale interval.
pub fn is_lpm(m: &SetMatroid) -> Option<LatticePathMatroid> {
    let k = m.rank();
    let mut lo = vec![usize::MAX; k];
    let mut hi = vec![0; k];
    for b in m.bases() {
        for (idx, e) in b.iter().enumerate() {
            lo[idx] = lo[idx].min(e);
            hi[idx] = hi[idx].max(e);
        }
    }
    let lpm = LatticePathMatroid::new(m.n(), lo.into_iter().collect(), hi.into_iter().collect()).ok()?;
    let gale = lpm.bases();
    (gale.len() == m.bases().len() && gale.as_slice() == m.bases()).then_some(lpm)
}

/// A full flag `M_1 ≤_q ... ≤_q M_n` of lattice path matroids with `rank(M_i) = i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LpfmFlag {
    n: usize,
    constituents: Vec<LatticePathMatroid>,
}

impl LpfmFlag {
    /// Validates ranks and consecutive quotients. A flag of ranks `1..n-1` is completed
    /// with `U_{n,n}`.
    pub fn new(n: usize, mut constituents: Vec<LatticePathMatroid>) -> Result<Self> {
        if constituents.len() + 1 == n {
            constituents.push(LatticePathMatroid::uniform(n, n));
        }
        if constituents.len() != n {
            return Err(Error::MalformedChain(format!("expected {n} constituents, got {}", constituents.len())));
        }
        for (idx, c) in constituents.iter().enumerate() {
            if c.n() != n {
                return Err(Error::SizeMismatch { left: n, right: c.n() });
            }
            if c.rank() != idx + 1 {
                return Err(Error::WrongRank { index: idx + 1, rank: c.rank(), expected: idx + 1 });
            }
        }
        for (idx, w) in constituents.windows(2).enumerate() {
            if !is_quotient(&w[0].to_matroid(), &w[1].to_matroid(), QuotientCriterion::Flats)? {
                return Err(Error::NotAQuotient { index: idx + 1 });
            }
        }
        Ok(LpfmFlag { n, constituents })
    }

    /// The uniform flag `U_{1,n} ≤_q ... ≤_q U_{n,n}`.
    pub fn uniform(n: usize) -> Self {
        LpfmFlag { n, constituents: (1..=n).map(|k| LatticePathMatroid::uniform(k, n)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constituents(&self) -> &[LatticePathMatroid] {
        &self.constituents
    }

    pub fn matroids(&self) -> Vec<SetMatroid> {
        self.constituents.iter().map(|c| c.to_matroid()).collect()
    }

    /// Every LPFM on `[n]`, obtained by descending from `U_{n,n}` through all good pairs.
    pub fn all(n: usize) -> Vec<LpfmFlag> {
        let mut out = BTreeSet::new();
        let mut stack = vec![LatticePathMatroid::uniform(n, n)];
        fn rec(stack: &mut Vec<LatticePathMatroid>, n: usize, out: &mut BTreeSet<LpfmFlag>) {
            let top = *stack.last().unwrap();
            if top.rank() == 1 {
                let constituents: Vec<_> = stack.iter().rev().copied().collect();
                out.insert(LpfmFlag { n, constituents });
                return;
            }
            let mut seen = HashSet::new();
            for pair in top.good_pairs() {
                let next = top.elementary_quotient(pair.u, pair.l).expect("good pairs give Gale-valid quotients");
                if seen.insert(next) {
                    stack.push(next);
                    rec(stack, n, out);
                    stack.pop();
                }
            }
        }
        if n > 0 {
            rec(&mut stack, n, &mut out);
        }
        out.into_iter().collect()
    }

    /// A random LPFM: descend from `U_{n,n}` choosing a uniform good pair at every rank.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> LpfmFlag {
        let mut cur = LatticePathMatroid::uniform(n, n);
        let mut rev = vec![cur];
        while cur.rank() > 1 {
            let pairs = cur.good_pairs();
            let pair = pairs.choose(rng).expect("an LPM of rank ≥ 1 has a good pair");
            cur = cur.elementary_quotient(pair.u, pair.l).expect("good pair");
            rev.push(cur);
        }
        rev.reverse();
        LpfmFlag { n, constituents: rev }
    }

    pub fn to_json(&self) -> FlagJson {
        FlagJson { n: self.n, constituents: self.constituents.iter().map(|c| c.to_json()).collect() }
    }
}

impl fmt::Debug for LpfmFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.constituents.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(" ≤ "))
    }
}

/// `{"n": int, "constituents": [lpm,...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagJson {
    pub n: usize,
    pub constituents: Vec<LpmJson>,
}

impl TryFrom<FlagJson> for LpfmFlag {
    type Error = Error;

    fn try_from(j: FlagJson) -> Result<Self> {
        let constituents = j.constituents.into_iter().map(LatticePathMatroid::try_from).collect::<Result<Vec<_>>>()?;
        LpfmFlag::new(j.n, constituents)
    }
}

/// `[τ_L, τ_U]`: Bruhat permutations of the chains of lower and upper paths.
pub fn lpfm_interval(flag: &LpfmFlag) -> Result<BruhatInterval> {
    let n = flag.n();
    let lowers: Vec<ElementSet> = flag.constituents.iter().map(|c| c.lower()).collect();
    let uppers: Vec<ElementSet> = flag.constituents.iter().map(|c| c.upper()).collect();
    for (which, sets) in [("L", &lowers), ("U", &uppers)] {
        for (idx, w) in sets.windows(2).enumerate() {
            if !w[0].is_subset(w[1]) {
                return Err(Error::NotAChain { which, rank: idx + 2 });
            }
        }
    }
    let tau_l = bruhat_permutation_of_chain(n, &lowers)?;
    let tau_u = bruhat_permutation_of_chain(n, &uppers)?;
    BruhatInterval::new(tau_l, tau_u)
}

/// The flag of matroids read off a Bruhat interval, with its LPFM verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagOfInterval {
    pub constituents: Vec<SetMatroid>,
    /// `Some(M[U, L])` where the constituent is a lattice path matroid.
    pub lpms: Vec<Option<LatticePathMatroid>>,
    /// `quotients[i]`: constituent `i+1` is a quotient of constituent `i+2`.
    pub quotients: Vec<bool>,
    pub is_lpfm: bool,
}

impl FlagOfInterval {
    pub fn to_lpfm(&self) -> Option<LpfmFlag> {
        if !self.is_lpfm {
            return None;
        }
        let n = self.constituents.len();
        Some(LpfmFlag { n, constituents: self.lpms.iter().map(|m| m.unwrap()).collect() })
    }
}

/// Constituent `M_i` has bases `{B_i(z) : z ∈ [lo, hi]}`, `B_i(z)` being the positions of
/// the `i` largest entries of `z`.
pub fn flag_of_interval(interval: &BruhatInterval) -> Result<FlagOfInterval> {
    let n = interval.n();
    let mut bases: Vec<BTreeSet<ElementSet>> = vec![BTreeSet::new(); n];
    for z in interval.elements() {
        for (idx, b) in chain_of_permutation(&z).into_iter().enumerate() {
            bases[idx].insert(b);
        }
    }
    let constituents = bases.into_iter().map(|b| SetMatroid::from_bases(n, b)).collect::<Result<Vec<_>>>()?;
    let lpms: Vec<Option<LatticePathMatroid>> = constituents.iter().map(is_lpm).collect();
    let quotients = constituents
        .windows(2)
        .map(|w| is_quotient(&w[0], &w[1], QuotientCriterion::Flats))
        .collect::<Result<Vec<_>>>()?;
    let is_lpfm = lpms.iter().all(Option::is_some) && quotients.iter().all(|&q| q);
    Ok(FlagOfInterval { constituents, lpms, quotients, is_lpfm })
}
