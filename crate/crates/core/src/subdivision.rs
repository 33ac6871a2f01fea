//! Subdivisions of `Π_n` by several split hyperplanes at once, and the poset of those
//! subdivisions ordered by refinement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{BruhatInterval, Permutation};
use crate::polytope::{affine_rank, enumerate_vertices, is_bip, permutahedron_facets, LinearConstraint, RationalPoint, Sense};
use crate::splits::{exhaustive_scan, lpfm_verdict, HyperplaneJson, Skeleton, SplitHyperplane};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// One sign per hyperplane: `+` for `x_S ≥ α`, `-` for `x_S ≤ α`.
    pub signs: String,
    pub interval: BruhatInterval,
    pub lpfm: bool,
    pub vertices: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    n: usize,
    hyperplanes: Vec<SplitHyperplane>,
    cells: Vec<Cell>,
}

impl Subdivision {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hyperplanes(&self) -> &[SplitHyperplane] {
        &self.hyperplanes
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn intervals(&self) -> Vec<BruhatInterval> {
        self.cells.iter().map(|c| c.interval.clone()).collect()
    }

    pub fn to_json(&self) -> SubdivisionJson {
        SubdivisionJson {
            n: self.n,
            hyperplanes: self.hyperplanes.iter().map(SplitHyperplane::to_json).collect(),
            cells: self
                .cells
                .iter()
                .map(|c| CellJson { signs: c.signs.clone(), lo: c.interval.lo().clone(), hi: c.interval.hi().clone(), lpfm: c.lpfm })
                .collect(),
        }
    }
}

/// Why a set of hyperplanes does not give an element of the poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Rejection {
    NewVertex { signs: String, witness: RationalPoint },
    NonBip { signs: String, vertices: Vec<RationalPoint> },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NewVertex { signs, witness } => write!(f, "new-vertex {witness} in cell {signs}"),
            Rejection::NonBip { signs, vertices } => write!(f, "non-BIP cell {signs} with {} vertices", vertices.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Accepted(Subdivision),
    Rejected(Rejection),
}

impl Outcome {
    pub fn accepted(self) -> Option<Subdivision> {
        match self {
            Outcome::Accepted(s) => Some(s),
            Outcome::Rejected(_) => None,
        }
    }
}

/// Cuts `Π_n` by all hyperplanes at once. Each hyperplane must be a good split on its own.
pub fn subdivision_from_hyperplanes(n: usize, hyperplanes: &[SplitHyperplane]) -> Result<Outcome> {
    if hyperplanes.is_empty() {
        return Err(Error::NotAGoodSplit("empty hyperplane set".into()));
    }
    let skeleton = Skeleton::new(n);
    for h in hyperplanes {
        if h.n() != n {
            return Err(Error::SizeMismatch { left: n, right: h.n() });
        }
        let report = skeleton.check(h);
        if !report.is_good() {
            return Err(Error::NotAGoodSplit(format!("{h} ({})", report.verdict)));
        }
    }
    let hs: Vec<SplitHyperplane> = hyperplanes.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    Ok(cut(n, hs))
}

fn cut(n: usize, hs: Vec<SplitHyperplane>) -> Outcome {
    let m = hs.len();
    let facets = permutahedron_facets(n);
    let results: Vec<std::result::Result<Option<Cell>, Rejection>> = (0u64..(1u64 << m))
        .into_par_iter()
        .map(|mask| {
            let signs: String = (0..m).map(|i| if mask >> i & 1 == 1 { '+' } else { '-' }).collect();
            let mut constraints: Vec<LinearConstraint> = facets.clone();
            for (i, h) in hs.iter().enumerate() {
                let sense = if mask >> i & 1 == 1 { Sense::Ge } else { Sense::Le };
                constraints.push(LinearConstraint { support: h.support(), sense, level: h.level().clone() });
            }
            let vertices = enumerate_vertices(&constraints, n).vertices;
            if vertices.is_empty() || affine_rank(&vertices) + 1 < n {
                return Ok(None);
            }
            let mut perms = Vec::with_capacity(vertices.len());
            for v in &vertices {
                match v.as_permutation() {
                    Some(p) => perms.push(p),
                    None => return Err(Rejection::NewVertex { signs, witness: v.clone() }),
                }
            }
            let Some(interval) = is_bip(&perms) else {
                return Err(Rejection::NonBip { signs, vertices });
            };
            perms.sort();
            Ok(Some(Cell { signs, lpfm: lpfm_verdict(&interval), interval, vertices: perms }))
        })
        .collect();
    let mut cells = Vec::new();
    for r in results {
        match r {
            Ok(Some(c)) => cells.push(c),
            Ok(None) => {}
            Err(rejection) => return Outcome::Rejected(rejection),
        }
    }
    cells.sort_by(|a, b| a.interval.cmp(&b.interval));
    Outcome::Accepted(Subdivision { n, hyperplanes: hs, cells })
}

/// Every cell of `fine` lies inside a cell of `coarse`.
pub fn refines(fine: &Subdivision, coarse: &Subdivision) -> bool {
    fine.n == coarse.n
        && fine.cells.iter().all(|c| coarse.cells.iter().any(|d| is_sorted_subset(&c.vertices, &d.vertices)))
}

fn is_sorted_subset(a: &[Permutation], b: &[Permutation]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Subdivisions of `Π_n` cut out by sets of split hyperplanes, ordered by refinement.
#[derive(Clone, Debug)]
pub struct SubdivisionPoset {
    n: usize,
    elements: Vec<Subdivision>,
    /// `less[i][j]`: element `j` strictly refines element `i`.
    less: Vec<Vec<bool>>,
    /// Hasse covers `(coarse, fine)`.
    covers: Vec<(usize, usize)>,
    rejected: Vec<(Vec<SplitHyperplane>, Rejection)>,
}

impl SubdivisionPoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Subdivision] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_below(&self, coarse: usize, fine: usize) -> bool {
        self.less[coarse][fine]
    }

    /// Hyperplane sets examined and rejected, excluding supersets of new-vertex rejections.
    pub fn rejected(&self) -> &[(Vec<SplitHyperplane>, Rejection)] {
        &self.rejected
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.elements.len()).filter(|&j| (0..self.elements.len()).all(|i| !self.less[i][j])).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| (0..self.elements.len()).all(|j| !self.less[i][j])).collect()
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            n: self.n,
            elements: self.elements.iter().map(Subdivision::to_json).collect(),
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

/// All accepted subdivisions from nonempty sets of good split hyperplanes.
///
/// Hyperplane sets are tried by size. Sets containing one already rejected for a new
/// vertex are skipped, since the vertex survives any further cut.
pub fn build_poset(n: usize) -> Result<SubdivisionPoset> {
    build_poset_from(n, exhaustive_scan(n))
}

pub fn build_poset_from(n: usize, hyperplanes: Vec<SplitHyperplane>) -> Result<SubdivisionPoset> {
    let m = hyperplanes.len();
    if m >= 32 {
        return Err(Error::HyperplaneOutOfRange(format!("{m} hyperplanes is too many to combine")));
    }
    let mut dead: Vec<u32> = Vec::new();
    let mut accepted: Vec<(u32, Subdivision)> = Vec::new();
    let mut rejected = Vec::new();
    for size in 1..=m as u32 {
        let masks: Vec<u32> = (1u32..(1u32 << m))
            .filter(|mask| mask.count_ones() == size && !dead.iter().any(|d| mask & d == *d))
            .collect();
        let outcomes: Vec<(u32, Outcome)> = masks
            .par_iter()
            .map(|&mask| {
                let hs: Vec<SplitHyperplane> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| hyperplanes[i].clone()).collect();
                (mask, cut(n, hs))
            })
            .collect();
        for (mask, outcome) in outcomes {
            match outcome {
                Outcome::Accepted(s) => accepted.push((mask, s)),
                Outcome::Rejected(r) => {
                    if matches!(r, Rejection::NewVertex { .. }) {
                        dead.push(mask);
                    }
                    let hs = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| hyperplanes[i].clone()).collect();
                    rejected.push((hs, r));
                }
            }
        }
    }
    let mut by_cells: BTreeMap<Vec<BruhatInterval>, (u32, Subdivision)> = BTreeMap::new();
    for (mask, s) in accepted {
        by_cells.entry(s.intervals()).or_insert((mask, s));
    }
    let mut elements: Vec<(u32, Subdivision)> = by_cells.into_values().filter(|(_, s)| s.cells.len() > 1).collect();
    elements.sort_by(|a, b| (a.0.count_ones(), &a.1.hyperplanes).cmp(&(b.0.count_ones(), &b.1.hyperplanes)));
    let k = elements.len();
    let mut less = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let geometric = refines(&elements[j].1, &elements[i].1);
            let by_hyperplanes = elements[i].0 & elements[j].0 == elements[i].0;
            if geometric != by_hyperplanes {
                return Err(Error::RefinementMismatch(
                    describe(&elements[i].1.hyperplanes),
                    describe(&elements[j].1.hyperplanes),
                ));
            }
            less[i][j] = geometric;
        }
    }
    let mut covers = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if less[i][j] && !(0..k).any(|m| less[i][m] && less[m][j]) {
                covers.push((i, j));
            }
        }
    }
    Ok(SubdivisionPoset { n, elements: elements.into_iter().map(|(_, s)| s).collect(), less, covers, rejected })
}

fn describe(hs: &[SplitHyperplane]) -> String {
    hs.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// DOT with edges from coarse to fine (so minimal elements are sources), or JSON.
pub fn export_poset(poset: &SubdivisionPoset, format: ExportFormat) -> Result<String> {
    match format {
        ExportFormat::Json => Ok(serde_json::to_string_pretty(&poset.to_json())?),
        ExportFormat::Dot => {
            let mut out = format!("digraph subdivisions_{} {{\n  rankdir=BT;\n  node [shape=box];\n", poset.n);
            for (i, s) in poset.elements.iter().enumerate() {
                let cells: Vec<String> = s.cells.iter().map(|c| c.interval.to_string()).collect();
                out.push_str(&format!("  s{i} [label=\"{}\\n{}\"];\n", describe(&s.hyperplanes), cells.join(" ")));
            }
            for &(a, b) in &poset.covers {
                out.push_str(&format!("  s{a} -> s{b};\n"));
            }
            out.push_str("}\n");
            Ok(out)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub signs: String,
    pub lo: Permutation,
    pub hi: Permutation,
    pub lpfm: bool,
}

/// `{"n", "hyperplanes": [{"S", "alpha"}], "cells": [{"signs", "lo", "hi", "lpfm"}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionJson {
    pub n: usize,
    pub hyperplanes: Vec<HyperplaneJson>,
    pub cells: Vec<CellJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub elements: Vec<SubdivisionJson>,
    /// `[coarse, fine]` index pairs.
    pub covers: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splits::{check_split, parse_hyperplane};

    fn hs(list: &[&str], n: usize) -> Vec<SplitHyperplane> {
        list.iter().map(|t| parse_hyperplane(t, n).unwrap()).collect()
    }

    fn iv(lo: &str, hi: &str) -> BruhatInterval {
        BruhatInterval::new(lo.parse().unwrap(), hi.parse().unwrap()).unwrap()
    }

    #[test]
    fn five_cells() {
        let s = subdivision_from_hyperplanes(4, &hs(&["x1+x2=6", "x1=2", "x4=3"], 4)).unwrap().accepted().unwrap();
        let expected = vec![
            iv("1234", "2413"),
            iv("1243", "2431"),
            iv("2134", "4213"),
            iv("2143", "4231"),
            iv("2413", "4321"),
        ];
        assert_eq!(s.intervals(), expected);
    }

    #[test]
    fn new_vertex_rejection() {
        let out = subdivision_from_hyperplanes(4, &hs(&["x1+x2=6", "x4=2"], 4)).unwrap();
        let Outcome::Rejected(Rejection::NewVertex { witness, .. }) = out else { panic!("{out:?}") };
        assert!(witness.as_permutation().is_none());
    }

    #[test]
    fn single_hyperplane_matches_check_split() {
        let h = parse_hyperplane("x1=2", 4).unwrap();
        let s = subdivision_from_hyperplanes(4, std::slice::from_ref(&h)).unwrap().accepted().unwrap();
        let cells = check_split(&h).cells.unwrap();
        assert_eq!(s.intervals().into_iter().collect::<BTreeSet<_>>(), cells.into_iter().collect());
        assert!(refines(&s, &s));
        assert!(subdivision_from_hyperplanes(4, &hs(&["x1+x2=5"], 4)).is_err());
        assert!(subdivision_from_hyperplanes(4, &[]).is_err());
    }

    #[test]
    fn poset_three() {
        let p = build_poset(3).unwrap();
        assert_eq!(p.elements().len(), 2);
        assert_eq!(p.rejected().len(), 1);
        assert!(p.covers().is_empty());
    }

    #[test]
    fn export_formats() {
        let p = build_poset(3).unwrap();
        let dot = export_poset(&p, "dot".parse().unwrap()).unwrap();
        assert!(dot.starts_with("digraph"));
        let json = export_poset(&p, ExportFormat::Json).unwrap();
        let back: PosetJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p.to_json());
        assert!(matches!("svg".parse::<ExportFormat>(), Err(Error::UnknownFormat(_))));
    }
}
