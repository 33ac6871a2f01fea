//! Matroids on `[n]` stored by their bases.
//!
//! Circuits, flats and ranks are derived on demand. Circuits and flats are memoized
//! behind a [`OnceLock`], so a [`SetMatroid`] can be shared across threads freely.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::RationalMatrix;
use crate::subset::{ElementSet, MAX_GROUND};

pub struct SetMatroid {
    n: usize,
    rank: usize,
    bases: Vec<ElementSet>,
    lookup: HashSet<ElementSet>,
    circuits: OnceLock<Vec<ElementSet>>,
    flats: OnceLock<Vec<ElementSet>>,
}

/// Which of the three equivalent quotient tests to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuotientCriterion {
    /// Every circuit of `N` is a union of circuits of `M`.
    Circuits,
    /// Every flat of `M` is a flat of `N`.
    Flats,
    /// Basis-by-basis exchange test over `(B, p, B', q)`.
    Bases,
}

impl QuotientCriterion {
    pub const ALL: [QuotientCriterion; 3] = [QuotientCriterion::Circuits, QuotientCriterion::Flats, QuotientCriterion::Bases];

    pub fn from_number(k: u8) -> Result<Self> {
        match k {
            1 => Ok(QuotientCriterion::Circuits),
            2 => Ok(QuotientCriterion::Flats),
            3 => Ok(QuotientCriterion::Bases),
            other => Err(Error::UnknownCriterion(other)),
        }
    }
}

impl SetMatroid {
    /// Validates equal basis sizes, the ground set, and the exchange axiom.
    pub fn from_bases(n: usize, bases: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        if n >= MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        let mut bases: Vec<ElementSet> = bases.into_iter().collect();
        bases.sort();
        bases.dedup();
        let first = *bases.first().ok_or(Error::NoBases)?;
        let ground = ElementSet::full(n);
        for &b in &bases {
            if b.len() != first.len() {
                return Err(Error::UnequalBases(first, b));
            }
            if !b.is_subset(ground) {
                let element = b.difference(ground).iter().next().unwrap();
                return Err(Error::ElementOutOfRange { element, n });
            }
        }
        let m = SetMatroid::from_sorted_unchecked(n, bases);
        if let Some((b1, b2, x)) = m.exchange_witness() {
            return Err(Error::ExchangeViolation { b1, b2, x });
        }
        Ok(m)
    }

    /// Convenience form taking element lists.
    pub fn from_base_lists(n: usize, bases: &[Vec<usize>]) -> Result<Self> {
        let sets = bases.iter().map(|b| ElementSet::from_elements(n, b)).collect::<Result<Vec<_>>>()?;
        SetMatroid::from_bases(n, sets)
    }

    /// Caller guarantees a valid basis system.
    pub(crate) fn from_bases_unchecked(n: usize, bases: impl IntoIterator<Item = ElementSet>) -> Self {
        let mut bases: Vec<ElementSet> = bases.into_iter().collect();
        bases.sort();
        bases.dedup();
        debug_assert!(!bases.is_empty());
        SetMatroid::from_sorted_unchecked(n, bases)
    }

    fn from_sorted_unchecked(n: usize, bases: Vec<ElementSet>) -> Self {
        let rank = bases[0].len();
        let lookup = bases.iter().copied().collect();
        SetMatroid { n, rank, bases, lookup, circuits: OnceLock::new(), flats: OnceLock::new() }
    }

    /// `U_{k,n}`.
    pub fn uniform(k: usize, n: usize) -> Self {
        SetMatroid::from_bases_unchecked(n, ElementSet::k_subsets(n, k))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bases in lexicographic order.
    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    pub fn is_basis(&self, b: ElementSet) -> bool {
        self.lookup.contains(&b)
    }

    /// First `(B1, B2, x)` with no exchange partner, scanning bases in order.
    fn exchange_witness(&self) -> Option<(ElementSet, ElementSet, usize)> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in b1.difference(b2).iter() {
                    let base = b1.without(x);
                    if !b2.difference(b1).iter().any(|y| self.is_basis(base.with(y))) {
                        return Some((b1, b2, x));
                    }
                }
            }
        }
        None
    }

    /// `r(S) = max |B ∩ S|`.
    pub fn rank_of(&self, s: ElementSet) -> usize {
        self.bases.iter().map(|b| b.intersection(s).len()).max().unwrap_or(0)
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.bases.iter().any(|b| s.is_subset(*b))
    }

    pub fn closure(&self, s: ElementSet) -> ElementSet {
        let r = self.rank_of(s);
        (1..=self.n).filter(|&e| s.contains(e) || self.rank_of(s.with(e)) == r).collect()
    }

    pub fn is_flat(&self, s: ElementSet) -> bool {
        let r = self.rank_of(s);
        (1..=self.n).filter(|&e| !s.contains(e)).all(|e| self.rank_of(s.with(e)) > r)
    }

    /// Minimal dependent sets, ordered by size then lexicographically.
    pub fn circuits(&self) -> &[ElementSet] {
        self.circuits.get_or_init(|| {
            let mut out: Vec<ElementSet> = ElementSet::all_subsets(self.n)
                .filter(|&s| !s.is_empty() && !self.is_independent(s) && s.iter().all(|e| self.is_independent(s.without(e))))
                .collect();
            out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
            out
        })
    }

    /// Closed sets, ordered by size then lexicographically.
    pub fn flats(&self) -> &[ElementSet] {
        self.flats.get_or_init(|| {
            let mut out: Vec<ElementSet> = ElementSet::all_subsets(self.n).filter(|&s| self.is_flat(s)).collect();
            out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
            out
        })
    }

    pub fn loops(&self) -> ElementSet {
        let union = self.bases.iter().fold(ElementSet::EMPTY, |acc, b| acc.union(*b));
        union.complement(self.n)
    }

    pub fn coloops(&self) -> ElementSet {
        self.bases.iter().fold(ElementSet::full(self.n), |acc, b| acc.intersection(*b))
    }

    /// Bases are the complements of the bases of `self`.
    pub fn dual(&self) -> SetMatroid {
        SetMatroid::from_bases_unchecked(self.n, self.bases.iter().map(|b| b.complement(self.n)))
    }

    /// `M \ e`, relabeled onto `[n-1]`.
    pub fn delete(&self, e: usize) -> Result<SetMatroid> {
        self.check_element(e)?;
        let bases: Vec<ElementSet> = if self.coloops().contains(e) {
            self.bases.iter().map(|b| b.without(e)).collect()
        } else {
            self.bases.iter().filter(|b| !b.contains(e)).copied().collect()
        };
        Ok(SetMatroid::from_bases_unchecked(self.n - 1, bases.into_iter().map(|b| b.delete_shift(e))))
    }

    /// `M / e`, relabeled onto `[n-1]`.
    pub fn contract(&self, e: usize) -> Result<SetMatroid> {
        self.check_element(e)?;
        let bases: Vec<ElementSet> = if self.loops().contains(e) {
            self.bases.clone()
        } else {
            self.bases.iter().filter(|b| b.contains(e)).map(|b| b.without(e)).collect()
        };
        Ok(SetMatroid::from_bases_unchecked(self.n - 1, bases.into_iter().map(|b| b.delete_shift(e))))
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e == 0 || e > self.n {
            return Err(Error::BadMinor { element: e, n: self.n });
        }
        Ok(())
    }

    /// Column matroid of `a`: bases are the `rank(a)`-subsets of columns of full rank.
    pub fn from_rational_matrix(a: &RationalMatrix) -> Result<SetMatroid> {
        let n = a.cols();
        if n >= MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        let r = a.rank();
        let bases: Vec<ElementSet> = ElementSet::k_subsets(n, r)
            .into_iter()
            .filter(|s| {
                let cols: Vec<usize> = s.iter().map(|c| c - 1).collect();
                a.column_subset_rank(&cols) == r
            })
            .collect();
        Ok(SetMatroid::from_bases_unchecked(n, bases))
    }

    pub fn to_json(&self) -> MatroidJson {
        MatroidJson { n: self.n, bases: self.bases.iter().map(|b| b.to_vec()).collect() }
    }
}

impl Clone for SetMatroid {
    fn clone(&self) -> Self {
        SetMatroid::from_sorted_unchecked(self.n, self.bases.clone())
    }
}

impl PartialEq for SetMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for SetMatroid {}

impl std::hash::Hash for SetMatroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bases.hash(state);
    }
}

impl fmt::Debug for SetMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bases: Vec<String> = self.bases.iter().map(|b| b.to_string()).collect();
        write!(f, "SetMatroid(n={}, rank={}, bases={{{}}})", self.n, self.rank, bases.join(","))
    }
}

/// `{"n": int, "bases": [[int,...],...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub n: usize,
    pub bases: Vec<Vec<usize>>,
}

impl TryFrom<MatroidJson> for SetMatroid {
    type Error = Error;

    fn try_from(j: MatroidJson) -> Result<Self> {
        SetMatroid::from_base_lists(j.n, &j.bases)
    }
}

impl Serialize for SetMatroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

pub fn matroid_from_bases(n: usize, bases: impl IntoIterator<Item = ElementSet>) -> Result<SetMatroid> {
    SetMatroid::from_bases(n, bases)
}

pub fn matroid_from_rational_matrix(a: &RationalMatrix) -> Result<SetMatroid> {
    SetMatroid::from_rational_matrix(a)
}

/// `M ≤_q N`: is `m` a quotient of `n`?
pub fn is_quotient(m: &SetMatroid, n: &SetMatroid, criterion: QuotientCriterion) -> Result<bool> {
    if m.n() != n.n() {
        return Err(Error::SizeMismatch { left: m.n(), right: n.n() });
    }
    Ok(match criterion {
        QuotientCriterion::Circuits => quotient_by_circuits(m, n),
        QuotientCriterion::Flats => m.flats().iter().all(|&f| n.is_flat(f)),
        QuotientCriterion::Bases => quotient_by_bases(m, n),
    })
}

fn quotient_by_circuits(m: &SetMatroid, n: &SetMatroid) -> bool {
    let small = m.circuits();
    n.circuits().iter().all(|&c| {
        let covered = small.iter().filter(|s| s.is_subset(c)).fold(ElementSet::EMPTY, |acc, s| acc.union(*s));
        covered == c
    })
}

/// For every `B ∈ 𝓑(N)` and `p ∉ B` there is `B' ∈ 𝓑(M)` with `B' ⊆ B` such that, for every
/// `q ∈ B'`, `B' - q + p ∈ 𝓑(M)` implies `B - q + p ∈ 𝓑(N)`.
fn quotient_by_bases(m: &SetMatroid, n: &SetMatroid) -> bool {
    n.bases().iter().all(|&b| {
        b.complement(n.n()).iter().all(|p| {
            m.bases().iter().filter(|bp| bp.is_subset(b)).any(|&bp| {
                bp.iter().all(|q| !m.is_basis(bp.without(q).with(p)) || n.is_basis(b.without(q).with(p)))
            })
        })
    })
}
