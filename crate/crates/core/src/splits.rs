//! Split hyperplanes `x_S = α` of the permutahedron.
//!
//! A hyperplane splits `Π_n` when it cuts it into two cells without creating vertices.
//! [`check_split`] decides this from the vertex/edge/2-face skeleton, classifies failures
//! by the 2-face that breaks, and identifies both cells as Bruhat intervals.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lpm::flag_of_interval;
use crate::perm::{dual_interval, set_sequences, BruhatInterval, Permutation};
use crate::polytope::{faces_2d, is_bip, max_level, min_level, permutahedron_edges, Face2D, FaceShape};
use crate::rational::{format_rational, int, parse_rational, Rational};
use crate::subset::ElementSet;

/// The hyperplane `x_S = α` in the ambient space `x_1 + ... + x_n = n(n+1)/2`.
///
/// `x_S = α` and `x_{[n]∖S} = n(n+1)/2 - α` are the same hyperplane; equality, hashing and
/// ordering all go through [`SplitHyperplane::canonical`].
#[derive(Clone)]
pub struct SplitHyperplane {
    n: usize,
    support: ElementSet,
    level: Rational,
}

impl SplitHyperplane {
    pub fn new(n: usize, support: ElementSet, level: Rational) -> Result<Self> {
        if !(2..crate::subset::MAX_GROUND).contains(&n) {
            return Err(Error::HyperplaneOutOfRange(format!("n = {n}")));
        }
        if support.is_empty() || support == ElementSet::full(n) || !support.is_subset(ElementSet::full(n)) {
            return Err(Error::HyperplaneOutOfRange(format!("support {support:?} is not a nonempty proper subset of [{n}]")));
        }
        let k = support.len();
        let (lo, hi) = (int(min_level(k)), int(max_level(n, k)));
        if level < lo || level > hi {
            return Err(Error::HyperplaneOutOfRange(format!(
                "level {level} of x_{support:?} outside [{lo}, {hi}]"
            )));
        }
        Ok(SplitHyperplane { n, support, level })
    }

    pub fn with_integer_level(n: usize, support: ElementSet, alpha: i64) -> Result<Self> {
        SplitHyperplane::new(n, support, int(alpha))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> ElementSet {
        self.support
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    pub fn integer_level(&self) -> Option<i64> {
        self.level.is_integer().then(|| self.level.to_integer().to_i64()).flatten()
    }

    /// The same hyperplane written over `[n] ∖ S`.
    pub fn complement_form(&self) -> SplitHyperplane {
        SplitHyperplane {
            n: self.n,
            support: self.support.complement(self.n),
            level: int(min_level(self.n)) - &self.level,
        }
    }

    /// The representative with the smaller support; for equal sizes the one containing 1.
    pub fn canonical(&self) -> SplitHyperplane {
        let other = self.complement_form();
        let k = self.support.len();
        let keep = match k.cmp(&(self.n - k)) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => self.support < other.support,
        };
        if keep {
            self.clone()
        } else {
            other
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical().support == self.support
    }

    fn key(&self) -> (usize, usize, ElementSet, Rational) {
        let c = self.canonical();
        (c.n, c.support.len(), c.support, c.level)
    }

    /// Sign of `x_S(z) - α`.
    pub fn side(&self, z: &Permutation) -> Ordering {
        int(z.coordinate_sum(self.support)).cmp(&self.level)
    }

    pub fn to_json(&self) -> HyperplaneJson {
        HyperplaneJson { support: self.support.to_vec(), alpha: self.level.clone() }
    }
}

impl PartialEq for SplitHyperplane {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for SplitHyperplane {}

impl Hash for SplitHyperplane {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for SplitHyperplane {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// By `(|S|, S, α)` of the canonical form.
impl Ord for SplitHyperplane {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for SplitHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.support.iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}={}", terms.join("+"), self.level)
    }
}

impl fmt::Debug for SplitHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (n={})", self.n)
    }
}

/// `{"S": [int,...], "alpha": int}`; a non-integer level is written as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneJson {
    pub support: Vec<usize>,
    pub alpha: Rational,
}

impl Serialize for HyperplaneJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("S", &self.support)?;
        if let Some(a) = self.alpha.is_integer().then(|| self.alpha.to_integer().to_i64()).flatten() {
            map.serialize_entry("alpha", &a)?;
        } else {
            map.serialize_entry("alpha", &format_rational(&self.alpha))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for HyperplaneJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Level {
            Int(i64),
            Text(String),
        }
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "S")]
            support: Vec<usize>,
            alpha: Level,
        }
        let raw = Raw::deserialize(d)?;
        let alpha = match raw.alpha {
            Level::Int(a) => int(a),
            Level::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom)?,
        };
        Ok(HyperplaneJson { support: raw.support, alpha })
    }
}

impl HyperplaneJson {
    pub fn into_hyperplane(self, n: usize) -> Result<SplitHyperplane> {
        SplitHyperplane::new(n, ElementSet::from_elements(n, &self.support)?, self.alpha)
    }
}

impl Serialize for SplitHyperplane {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Parses `x1+x2=4`, `x_1+x_3=7`, `x_{1,3}=7` or `x2=3/2` over `[n]`.
pub fn parse_hyperplane(text: &str, n: usize) -> Result<SplitHyperplane> {
    let err = |pos: usize, what: &str| Error::Parse(format!("{what} at position {pos} in {text:?}"));
    let compact: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let eq = compact.iter().position(|&(_, c)| c == '=').ok_or_else(|| err(text.len(), "missing '='"))?;
    let lhs: String = compact[..eq].iter().map(|&(_, c)| c).collect();
    let rhs: String = compact[eq + 1..].iter().map(|&(_, c)| c).collect();
    let rhs_pos = compact.get(eq + 1).map_or(text.len(), |&(i, _)| i);
    if rhs.is_empty() {
        return Err(err(rhs_pos, "missing level"));
    }
    let level = parse_rational(&rhs).map_err(|_| err(rhs_pos, "bad level"))?;
    let mut elements = Vec::new();
    if let Some(inner) = lhs.strip_prefix("x_{") {
        let inner = inner.strip_suffix('}').ok_or_else(|| err(compact[eq].0, "missing '}'"))?;
        for part in inner.split(',') {
            elements.push(part.parse::<usize>().map_err(|_| err(0, "bad index"))?);
        }
    } else {
        let mut offset = 0;
        for term in lhs.split('+') {
            let pos = compact.get(offset).map_or(0, |&(i, _)| i);
            let digits = term.strip_prefix("x_").or_else(|| term.strip_prefix('x')).ok_or_else(|| err(pos, "expected 'x'"))?;
            elements.push(digits.parse::<usize>().map_err(|_| err(pos, "bad index"))?);
            offset += term.chars().count() + 1;
        }
    }
    let support = ElementSet::from_elements(n, &elements).map_err(|e| Error::HyperplaneOutOfRange(format!("{e} in {text:?}")))?;
    SplitHyperplane::new(n, support, level)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitVerdict {
    GoodSplit,
    BadSquare,
    BadHexagon,
    NotASplit,
    /// No 2-face is broken but a closed side is not a Bruhat interval.
    BadCell,
}

impl fmt::Display for SplitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitVerdict::GoodSplit => "good-split",
            SplitVerdict::BadSquare => "bad-square",
            SplitVerdict::BadHexagon => "bad-hexagon",
            SplitVerdict::NotASplit => "not-a-split",
            SplitVerdict::BadCell => "bad-cell",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub hyperplane: SplitHyperplane,
    pub verdict: SplitVerdict,
    /// The cell containing `e` first.
    pub cells: Option<[BruhatInterval; 2]>,
    pub face: Option<Face2D>,
    /// An edge of `Π_n` whose endpoints lie strictly on opposite sides.
    pub crossing_edge: Option<(Permutation, Permutation)>,
    /// LPFM verdict of each cell.
    pub lpfm: [bool; 2],
}

impl SplitReport {
    pub fn is_good(&self) -> bool {
        self.verdict == SplitVerdict::GoodSplit
    }
}

/// Vertices, edges and 2-faces of `Π_n`, with faces indexed into the vertex list.
pub struct Skeleton {
    n: usize,
    vertices: Vec<Permutation>,
    edges: Vec<(usize, usize)>,
    faces: Vec<(Face2D, Vec<usize>, usize, usize)>,
}

impl Skeleton {
    pub fn new(n: usize) -> Self {
        let vertices = Permutation::all(n);
        let index = |p: &Permutation| vertices.binary_search(p).expect("vertex of Π_n");
        let edges = permutahedron_edges(n).iter().map(|(a, b)| (index(a), index(b))).collect();
        let faces = faces_2d(n)
            .into_iter()
            .map(|f| {
                let idx = f.vertices.iter().map(index).collect();
                let (lo, hi) = (index(&f.min), index(&f.max));
                (f, idx, lo, hi)
            })
            .collect();
        Skeleton { n, vertices, edges, faces }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    /// Runs the checks in order: both sides occupied, no edge crossed strictly, no square
    /// split, every split hexagon separating its min and max, both closed sides intervals.
    pub fn check(&self, h: &SplitHyperplane) -> SplitReport {
        assert_eq!(h.n, self.n, "hyperplane and skeleton disagree on n");
        let sides: Vec<Ordering> = self.vertices.iter().map(|z| h.side(z)).collect();
        let mut report = SplitReport {
            hyperplane: h.clone(),
            verdict: SplitVerdict::NotASplit,
            cells: None,
            face: None,
            crossing_edge: None,
            lpfm: [false, false],
        };
        if !sides.contains(&Ordering::Less) || !sides.contains(&Ordering::Greater) {
            return report;
        }
        if let Some(&(a, b)) = self.edges.iter().find(|&&(a, b)| sides[a] != Ordering::Equal && sides[b] == sides[a].reverse()) {
            report.crossing_edge = Some((self.vertices[a].clone(), self.vertices[b].clone()));
            return report;
        }
        for (face, idx, _, _) in self.faces.iter().filter(|f| f.0.shape == FaceShape::Square) {
            if idx.iter().any(|&i| sides[i] == Ordering::Less) && idx.iter().any(|&i| sides[i] == Ordering::Greater) {
                report.verdict = SplitVerdict::BadSquare;
                report.face = Some(face.clone());
                return report;
            }
        }
        for (face, idx, lo, hi) in self.faces.iter().filter(|f| f.0.shape == FaceShape::Hexagon) {
            let split = idx.iter().any(|&i| sides[i] == Ordering::Less) && idx.iter().any(|&i| sides[i] == Ordering::Greater);
            let separated = sides[*lo] != Ordering::Equal && sides[*hi] == sides[*lo].reverse();
            if split && !separated {
                report.verdict = SplitVerdict::BadHexagon;
                report.face = Some(face.clone());
                return report;
            }
        }
        let closed = |keep: Ordering| -> Vec<Permutation> {
            self.vertices.iter().zip(&sides).filter(|(_, &s)| s != keep).map(|(z, _)| z.clone()).collect()
        };
        let (below, above) = (closed(Ordering::Greater), closed(Ordering::Less));
        let (Some(a), Some(b)) = (is_bip(&below), is_bip(&above)) else {
            report.verdict = SplitVerdict::BadCell;
            return report;
        };
        let cells = if a.lo().is_identity() { [a, b] } else { [b, a] };
        report.lpfm = [lpfm_verdict(&cells[0]), lpfm_verdict(&cells[1])];
        report.cells = Some(cells);
        report.verdict = SplitVerdict::GoodSplit;
        report
    }
}

pub(crate) fn lpfm_verdict(cell: &BruhatInterval) -> bool {
    flag_of_interval(cell).map(|f| f.is_lpfm).unwrap_or(false)
}

pub fn check_split(h: &SplitHyperplane) -> SplitReport {
    Skeleton::new(h.n).check(h)
}

/// The three families of split hyperplanes, named by their written form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HyperplaneFamily {
    /// `x_1 + ... + x_j = C(j+1, 2) + 1`, `j ≤ n - 2`.
    Prefix { j: usize },
    /// `x_1 + ... + x_j = n + (n-1) + ... + (n-j+2) + (n-j)`, `j ≤ n - 2`.
    PrefixDual { j: usize },
    /// `x_1 = r`, `2 ≤ r ≤ n - 1`.
    First { r: usize },
    /// `x_n = r`, `2 ≤ r ≤ n - 1`.
    Last { r: usize },
}

impl HyperplaneFamily {
    pub fn hyperplane(&self, n: usize) -> Result<SplitHyperplane> {
        let (support, alpha) = match *self {
            HyperplaneFamily::Prefix { j } => (ElementSet::range(1, j), min_level(j) + 1),
            HyperplaneFamily::PrefixDual { j } => (ElementSet::range(1, j), max_level(n, j) - 1),
            HyperplaneFamily::First { r } => (ElementSet::singleton(1), r as i64),
            HyperplaneFamily::Last { r } => (ElementSet::singleton(n), r as i64),
        };
        SplitHyperplane::with_integer_level(n, support, alpha)
    }

    pub fn all(n: usize) -> Vec<HyperplaneFamily> {
        let mut out = Vec::new();
        for j in 1..=n.saturating_sub(2) {
            out.push(HyperplaneFamily::Prefix { j });
        }
        for j in 1..=n.saturating_sub(2) {
            out.push(HyperplaneFamily::PrefixDual { j });
        }
        for r in 2..n {
            out.push(HyperplaneFamily::First { r });
        }
        for r in 2..n {
            out.push(HyperplaneFamily::Last { r });
        }
        out
    }

    /// Families writing `h` in either of its two forms. Single-coordinate families come first.
    pub fn recognize(h: &SplitHyperplane) -> Vec<HyperplaneFamily> {
        let n = h.n;
        let mut found: Vec<HyperplaneFamily> =
            HyperplaneFamily::all(n).into_iter().filter(|f| f.hyperplane(n).is_ok_and(|g| g == *h)).collect();
        found.sort_by_key(|f| !matches!(f, HyperplaneFamily::First { .. } | HyperplaneFamily::Last { .. }));
        found
    }
}

/// Deduplicated union of the three families, sorted, each in its family's written form.
pub fn theorem_hyperplanes(n: usize) -> Vec<SplitHyperplane> {
    let set: BTreeSet<SplitHyperplane> = HyperplaneFamily::all(n).iter().filter_map(|f| f.hyperplane(n).ok()).collect();
    set.into_iter().collect()
}

/// Closed-form cells of a family hyperplane, the cell containing `e` first.
pub fn predicted_cells(h: &SplitHyperplane) -> Option<[BruhatInterval; 2]> {
    let family = *HyperplaneFamily::recognize(h).first()?;
    family_cells(family, h.n)
}

pub fn family_cells(family: HyperplaneFamily, n: usize) -> Option<[BruhatInterval; 2]> {
    let e = Permutation::identity(n);
    let w = Permutation::longest(n);
    let interval = |lo: &Permutation, hi: &Permutation| BruhatInterval::new(lo.clone(), hi.clone()).ok();
    match family {
        HyperplaneFamily::Prefix { j } => {
            let a: ElementSet = (1..j).chain(std::iter::once(j + 1)).collect();
            let seq = set_sequences(a, n);
            Some([interval(&e, &seq.decreasing_then_longest())?, interval(&seq.increasing_then_identity(), &w)?])
        }
        HyperplaneFamily::PrefixDual { j } => {
            let [low, high] = family_cells(HyperplaneFamily::Prefix { j }, n)?;
            Some([dual_interval(&high), dual_interval(&low)])
        }
        HyperplaneFamily::First { r } => {
            let seq = set_sequences(ElementSet::singleton(r), n);
            Some([interval(&e, &seq.decreasing_then_longest())?, interval(&seq.increasing_then_identity(), &w)?])
        }
        HyperplaneFamily::Last { r } => {
            let seq = set_sequences(ElementSet::singleton(r), n);
            Some([interval(&e, &seq.longest_then_decreasing())?, interval(&seq.identity_then_increasing(), &w)?])
        }
    }
}

/// `x_S = |S|(n+1) - α`: the image of `h` under `x ↦ (n+1, ..., n+1) - x`.
///
/// Fails unless `h` is a good split; the dual's cells are checked to be the dual intervals
/// of `h`'s cells.
pub fn dual_hyperplane(h: &SplitHyperplane) -> Result<SplitHyperplane> {
    let skeleton = Skeleton::new(h.n);
    let report = skeleton.check(h);
    let good = report.is_good();
    let Some([low, high]) = report.cells.filter(|_| good) else {
        return Err(Error::NotAGoodSplit(format!("{h} ({})", report.verdict)));
    };
    let k = h.support.len() as i64;
    let dual = SplitHyperplane::new(h.n, h.support, int(k * (h.n as i64 + 1)) - &h.level)?;
    let dual_report = skeleton.check(&dual);
    let expected = [dual_interval(&high), dual_interval(&low)];
    if dual_report.cells.as_ref() != Some(&expected) {
        return Err(Error::NotAGoodSplit(format!("dual {dual} of {h} does not split into the dual cells")));
    }
    Ok(dual)
}

/// Which levels [`scan`] tries for each support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanLevels {
    Integer,
    /// Integers and half-integers.
    HalfInteger,
}

/// Reports for every hyperplane `x_S = α` with `α` strictly between the extremes of `x_S`
/// on `Π_n`, one per hyperplane, sorted.
pub fn scan(n: usize, levels: ScanLevels) -> Vec<SplitReport> {
    let skeleton = Skeleton::new(n);
    let step = match levels {
        ScanLevels::Integer => 1,
        ScanLevels::HalfInteger => 2,
    };
    let candidates: Vec<SplitHyperplane> = ElementSet::all_subsets(n)
        .filter(|s| !s.is_empty() && s.len() < n)
        .flat_map(|s| {
            let k = s.len();
            let (lo, hi) = (min_level(k) * step, max_level(n, k) * step);
            ((lo + 1)..hi).map(move |a| SplitHyperplane { n, support: s, level: Rational::new(a.into(), step.into()) })
        })
        .filter(SplitHyperplane::is_canonical)
        .collect();
    let mut reports: Vec<SplitReport> = candidates.par_iter().map(|h| skeleton.check(h)).collect();
    reports.sort_by(|a, b| a.hyperplane.cmp(&b.hyperplane));
    reports
}

/// Every integer-level good split of `Π_n`, sorted and in canonical form.
pub fn exhaustive_scan(n: usize) -> Vec<SplitHyperplane> {
    good_splits(n, ScanLevels::Integer)
}

pub fn good_splits(n: usize, levels: ScanLevels) -> Vec<SplitHyperplane> {
    scan(n, levels).into_iter().filter(SplitReport::is_good).map(|r| r.hyperplane).collect()
}

impl SplitHyperplane {
    /// `true` when `x_S(z) - α` is zero.
    pub fn contains(&self, z: &Permutation) -> bool {
        (int(z.coordinate_sum(self.support)) - &self.level).is_zero()
    }
}
