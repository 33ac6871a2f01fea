//! The permutahedron `Π_n` in exact arithmetic: facets, edges, 2-faces, flag matroid
//! polytope vertices, Bruhat interval polytope recognition and vertex enumeration of
//! `Π_n` cut by halfspaces.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matroid::{is_quotient, QuotientCriterion, SetMatroid};
use crate::perm::{BruhatInterval, Permutation};
use crate::rational::{format_rational, int, parse_rational, rank_of_rows, Rational};
use crate::subset::ElementSet;

/// A point of `ℚ^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(Vec<Rational>);

impl RationalPoint {
    pub fn new(coordinates: Vec<Rational>) -> Self {
        RationalPoint(coordinates)
    }

    pub fn from_integers(coordinates: &[i64]) -> Self {
        RationalPoint(coordinates.iter().map(|&c| int(c)).collect())
    }

    pub fn from_permutation(p: &Permutation) -> Self {
        RationalPoint(p.entries().iter().map(|&v| int(v as i64)).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn coordinates(&self) -> &[Rational] {
        &self.0
    }

    /// `x_S = Σ_{i ∈ S} x_i`.
    pub fn coordinate_sum(&self, support: ElementSet) -> Rational {
        support.iter().map(|i| &self.0[i - 1]).fold(Rational::zero(), |acc, x| acc + x)
    }

    /// The permutation whose entries are the coordinates, if there is one.
    pub fn as_permutation(&self) -> Option<Permutation> {
        let entries: Option<Vec<usize>> =
            self.0.iter().map(|c| if c.is_integer() { c.to_integer().to_usize() } else { None }).collect();
        Permutation::new(entries?).ok()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coords = raw.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().map_err(serde::de::Error::custom)?;
        Ok(RationalPoint(coords))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Ge => "≥",
            Sense::Le => "≤",
            Sense::Eq => "=",
        })
    }
}

/// `x_S ⋈ level` with `⋈ ∈ {≥, ≤, =}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearConstraint {
    #[serde(rename = "S")]
    pub support: ElementSet,
    pub sense: Sense,
    #[serde(with = "crate::rational::serde_rational")]
    pub level: Rational,
}

impl LinearConstraint {
    pub fn new(support: ElementSet, sense: Sense, level: Rational) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::Parse("constraint with empty support".into()));
        }
        Ok(LinearConstraint { support, sense, level })
    }

    pub fn satisfied_by(&self, p: &RationalPoint) -> bool {
        let v = p.coordinate_sum(self.support);
        match self.sense {
            Sense::Ge => v >= self.level,
            Sense::Le => v <= self.level,
            Sense::Eq => v == self.level,
        }
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.support.iter().map(|i| format!("x{i}")).collect();
        write!(f, "{} {} {}", terms.join("+"), self.sense, self.level)
    }
}

/// `C(k+1, 2)`, the least value of `x_S` on `Π_n` when `|S| = k`.
pub fn min_level(k: usize) -> i64 {
    (k * (k + 1) / 2) as i64
}

/// The greatest value of `x_S` on `Π_n` when `|S| = k`.
pub fn max_level(n: usize, k: usize) -> i64 {
    ((n - k + 1..=n).sum::<usize>()) as i64
}

/// `x_1 + ... + x_n = n(n+1)/2`.
pub fn ambient_equality(n: usize) -> LinearConstraint {
    LinearConstraint { support: ElementSet::full(n), sense: Sense::Eq, level: int(min_level(n)) }
}

pub fn permutahedron_vertices(n: usize) -> Vec<Permutation> {
    Permutation::all(n)
}

/// One `x_S ≥ C(|S|+1, 2)` per nonempty proper `S` (ordered by size, then lexicographically),
/// followed by the ambient equality.
pub fn permutahedron_facets(n: usize) -> Vec<LinearConstraint> {
    let mut out: Vec<LinearConstraint> = (1..n)
        .flat_map(|k| ElementSet::k_subsets(n, k))
        .map(|s| LinearConstraint { support: s, sense: Sense::Ge, level: int(min_level(s.len())) })
        .collect();
    out.push(ambient_equality(n));
    out
}

/// Pairs of vertices differing by a swap of the values `k` and `k+1`, each pair ordered
/// and the list sorted.
pub fn permutahedron_edges(n: usize) -> Vec<(Permutation, Permutation)> {
    let mut out = Vec::new();
    for z in Permutation::all(n) {
        let inv = z.inverse();
        for k in 1..n {
            let w = z.swap_positions(inv.at(k), inv.at(k + 1));
            if z < w {
                out.push((z.clone(), w));
            }
        }
    }
    out.sort();
    out
}

pub fn are_adjacent(a: &Permutation, b: &Permutation) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let diff: Vec<usize> = (1..=a.n()).filter(|&i| a.at(i) != b.at(i)).collect();
    diff.len() == 2 && a.at(diff[0]) == b.at(diff[1]) && a.at(diff[0]).abs_diff(a.at(diff[1])) == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceShape {
    Square,
    Hexagon,
}

/// A 2-face of `Π_n`, given by an ordered partition of the positions into `n-2` blocks.
/// The first block holds the largest values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Face2D {
    pub blocks: Vec<ElementSet>,
    pub shape: FaceShape,
    pub vertices: Vec<Permutation>,
    pub min: Permutation,
    pub max: Permutation,
}

impl Face2D {
    pub fn from_blocks(n: usize, blocks: Vec<ElementSet>) -> Result<Self> {
        let sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        let union = blocks.iter().fold(ElementSet::EMPTY, |a, &b| a.union(b));
        if blocks.len() + 2 != n || union != ElementSet::full(n) || sizes.iter().sum::<usize>() != n || sizes.contains(&0) {
            return Err(Error::MalformedChain(format!("{blocks:?} is not an ordered partition of [{n}] into {} blocks", n - 2)));
        }
        let shape = if sizes.contains(&3) { FaceShape::Hexagon } else { FaceShape::Square };
        let mut ranges = Vec::with_capacity(blocks.len());
        let mut top = n;
        for &b in &blocks {
            ranges.push((top + 1 - b.len(), top));
            top -= b.len();
        }
        let mut vertices = vec![vec![0usize; n]];
        for (b, &(lo, hi)) in blocks.iter().zip(&ranges) {
            let positions = b.to_vec();
            let mut next = Vec::new();
            for arrangement in permutations_of(&(lo..=hi).collect::<Vec<_>>()) {
                for v in &vertices {
                    let mut v = v.clone();
                    for (&pos, &val) in positions.iter().zip(&arrangement) {
                        v[pos - 1] = val;
                    }
                    next.push(v);
                }
            }
            vertices = next;
        }
        let mut vertices: Vec<Permutation> = vertices.into_iter().map(Permutation::from_vec_unchecked).collect();
        vertices.sort();
        let assign = |ascending: bool| {
            let mut v = vec![0usize; n];
            for (b, &(lo, hi)) in blocks.iter().zip(&ranges) {
                let vals: Vec<usize> = if ascending { (lo..=hi).collect() } else { (lo..=hi).rev().collect() };
                for (pos, val) in b.iter().zip(vals) {
                    v[pos - 1] = val;
                }
            }
            Permutation::from_vec_unchecked(v)
        };
        Ok(Face2D { shape, vertices, min: assign(true), max: assign(false), blocks })
    }
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every 2-face of `Π_n`, sorted by block sequence.
pub fn faces_2d(n: usize) -> Vec<Face2D> {
    if n < 3 {
        return Vec::new();
    }
    let k = n - 2;
    let mut faces = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        let mut blocks = vec![ElementSet::EMPTY; k];
        for (pos, &b) in labels.iter().enumerate() {
            blocks[b] = blocks[b].with(pos + 1);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            faces.push(Face2D::from_blocks(n, blocks).expect("surjective labelling is an ordered partition"));
        }
        // next labelling in base k
        let mut idx = 0;
        while idx < n && labels[idx] == k - 1 {
            labels[idx] = 0;
            idx += 1;
        }
        if idx == n {
            break;
        }
        labels[idx] += 1;
    }
    faces.sort_by(|a, b| a.blocks.cmp(&b.blocks));
    faces
}

/// `{ Σ_i e_{B_i} : B_1 ⊂ ... ⊂ B_k, B_i a basis of M_i }`, sorted.
pub fn flag_polytope_vertices(flag: &[SetMatroid]) -> Result<Vec<RationalPoint>> {
    let Some(first) = flag.first() else {
        return Err(Error::MalformedChain("empty flag".into()));
    };
    let n = first.n();
    for (idx, w) in flag.windows(2).enumerate() {
        if w[1].n() != n {
            return Err(Error::SizeMismatch { left: n, right: w[1].n() });
        }
        if !is_quotient(&w[0], &w[1], QuotientCriterion::Flats)? {
            return Err(Error::NotAQuotient { index: idx + 1 });
        }
    }
    let mut out = BTreeSet::new();
    let mut acc = vec![0i64; n];
    fn rec(flag: &[SetMatroid], level: usize, prev: ElementSet, acc: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
        if level == flag.len() {
            out.insert(acc.clone());
            return;
        }
        for &b in flag[level].bases() {
            if !prev.is_subset(b) {
                continue;
            }
            for e in b.iter() {
                acc[e - 1] += 1;
            }
            rec(flag, level + 1, b, acc, out);
            for e in b.iter() {
                acc[e - 1] -= 1;
            }
        }
    }
    rec(flag, 0, ElementSet::EMPTY, &mut acc, &mut out);
    Ok(out.into_iter().map(|v| RationalPoint::from_integers(&v)).collect())
}

/// `Some([u, v])` when the permutations are exactly the Bruhat interval `[u, v]`.
pub fn is_bip(points: &[Permutation]) -> Option<BruhatInterval> {
    let first = points.first()?;
    let n = first.n();
    if points.iter().any(|p| p.n() != n) {
        return None;
    }
    let distinct: BTreeSet<&Permutation> = points.iter().collect();
    let lo = distinct.iter().min_by_key(|p| p.length())?;
    let hi = distinct.iter().max_by_key(|p| p.length())?;
    if !distinct.iter().all(|p| lo.bruhat_le(p) && p.bruhat_le(hi)) {
        return None;
    }
    let interval = BruhatInterval::new((*lo).clone(), (*hi).clone()).ok()?;
    let size = Permutation::all(n).iter().filter(|z| interval.contains(z)).count();
    (size == distinct.len()).then_some(interval)
}

/// [`is_bip`] for points, rejecting any point that is not a permutation.
pub fn is_bip_points(points: &[RationalPoint]) -> Result<Option<BruhatInterval>> {
    let perms = points
        .iter()
        .map(|p| p.as_permutation().ok_or_else(|| Error::NotAPermutationPoint(p.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(is_bip(&perms))
}

/// Dimension of the affine hull of the points (`-1` style: empty gives 0).
pub fn affine_rank(points: &[RationalPoint]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.coordinates().iter().zip(base.coordinates()).map(|(a, b)| a - b).collect())
        .collect();
    if rows.is_empty() {
        return 0;
    }
    rank_of_rows(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexStatus {
    Bounded,
    Empty,
    Unbounded,
    /// The constraint normals do not span `ℚ^n`, so the region has no vertex.
    NotPointed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexEnumeration {
    pub status: VertexStatus,
    pub vertices: Vec<RationalPoint>,
}

/// A constraint scaled to integers: `coef · x_S ⋈ rhs`.
#[derive(Clone, Copy, Debug)]
struct IntRow {
    support: ElementSet,
    sense: Sense,
    coef: i128,
    rhs: i128,
}

fn int_row(c: &LinearConstraint) -> IntRow {
    let coef = c.level.denom().to_i128().expect("constraint level denominator fits in i128");
    let rhs = c.level.numer().to_i128().expect("constraint level numerator fits in i128");
    IntRow { support: c.support, sense: c.sense, coef, rhs }
}

/// Exact vertices of `{x : every constraint holds}`, sorted.
///
/// Each choice of `n - r` inequalities (with `r` the rank of the equalities) is solved
/// together with the equalities. Non-singular solutions satisfying every constraint are
/// the vertices. An unbounded region reports no vertices.
pub fn enumerate_vertices(constraints: &[LinearConstraint], n: usize) -> VertexEnumeration {
    let rows: Vec<IntRow> = constraints.iter().map(int_row).collect();
    let mut equalities: Vec<IntRow> = Vec::new();
    for r in rows.iter().filter(|r| r.sense == Sense::Eq) {
        let mut trial: Vec<ElementSet> = equalities.iter().map(|e| e.support).collect();
        trial.push(r.support);
        if support_rank(&trial, n) > equalities.len() {
            equalities.push(*r);
        }
    }
    let inequalities: Vec<IntRow> = rows.iter().filter(|r| r.sense != Sense::Eq).copied().collect();
    let all_supports: Vec<ElementSet> = rows.iter().map(|r| r.support).collect();
    if support_rank(&all_supports, n) < n {
        return VertexEnumeration { status: VertexStatus::NotPointed, vertices: Vec::new() };
    }
    let choose = n - equalities.len();
    let found: HashSet<Vec<BigInt>> = if choose == 0 {
        solve_vertex(&equalities, &rows, n).into_iter().collect()
    } else {
        vertices_from_inequalities(&equalities, &inequalities, &rows, choose, n)
    };
    if found.is_empty() {
        return VertexEnumeration { status: VertexStatus::Empty, vertices: Vec::new() };
    }
    if !obviously_bounded(&rows, n) && has_recession_ray(&equalities, &inequalities, n) {
        return VertexEnumeration { status: VertexStatus::Unbounded, vertices: Vec::new() };
    }
    let mut vertices: Vec<RationalPoint> = found
        .into_iter()
        .map(|key| {
            let det = key[n].clone();
            RationalPoint(key[..n].iter().map(|num| Rational::new(num.clone(), det.clone())).collect())
        })
        .collect();
    vertices.sort();
    VertexEnumeration { status: VertexStatus::Bounded, vertices }
}

/// Tries every choice of `choose` inequalities alongside the equalities, split by the first
/// chosen index across threads.
fn vertices_from_inequalities(
    equalities: &[IntRow],
    inequalities: &[IntRow],
    rows: &[IntRow],
    choose: usize,
    n: usize,
) -> HashSet<Vec<BigInt>> {
    (0..inequalities.len())
        .into_par_iter()
        .map(|first| {
            let mut local = HashSet::new();
            let mut combo = vec![first];
            extend_combinations(&mut combo, choose, inequalities.len(), &mut |combo| {
                let system: Vec<IntRow> = equalities.iter().copied().chain(combo.iter().map(|&i| inequalities[i])).collect();
                if let Some(key) = solve_vertex(&system, rows, n) {
                    local.insert(key);
                }
            });
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Calls `f` on every increasing extension of `combo` to length `k` with indices `< m`.
fn extend_combinations(combo: &mut Vec<usize>, k: usize, m: usize, f: &mut impl FnMut(&[usize])) {
    if combo.len() == k {
        f(combo);
        return;
    }
    let start = combo.last().map_or(0, |&l| l + 1);
    let remaining = k - combo.len();
    if start + remaining > m {
        return;
    }
    for i in start..=(m - remaining) {
        combo.push(i);
        extend_combinations(combo, k, m, f);
        combo.pop();
    }
}

fn support_rank(supports: &[ElementSet], n: usize) -> usize {
    if supports.is_empty() {
        return 0;
    }
    let rows = supports
        .iter()
        .map(|s| (1..=n).map(|i| if s.contains(i) { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    rank_of_rows(rows)
}

/// The ambient equality fixes the coordinate sum and every coordinate is bounded below.
fn obviously_bounded(rows: &[IntRow], n: usize) -> bool {
    let full = ElementSet::full(n);
    let fixed_sum = rows.iter().any(|r| r.sense == Sense::Eq && r.support == full);
    fixed_sum
        && (1..=n).all(|i| {
            let single = ElementSet::singleton(i);
            rows.iter().any(|r| match r.sense {
                Sense::Ge | Sense::Eq => r.support == single,
                Sense::Le => r.support == full.without(i),
            })
        })
}

/// Searches the extreme rays of the recession cone.
fn has_recession_ray(equalities: &[IntRow], inequalities: &[IntRow], n: usize) -> bool {
    let homogeneous = |r: &IntRow| IntRow { rhs: 0, ..*r };
    let all: Vec<IntRow> = equalities.iter().chain(inequalities).map(homogeneous).collect();
    let choose = (n - 1).saturating_sub(equalities.len());
    if choose > inequalities.len() {
        return false;
    }
    let mut found = false;
    let mut combo = Vec::new();
    extend_combinations(&mut combo, choose, inequalities.len(), &mut |combo| {
        if found {
            return;
        }
        let tight: Vec<IntRow> = equalities.iter().chain(combo.iter().map(|&i| &inequalities[i])).map(homogeneous).collect();
        for j in 1..=n {
            let mut system = tight.clone();
            system.push(IntRow { support: ElementSet::singleton(j), sense: Sense::Eq, coef: 1, rhs: 1 });
            let Some((nums, det)) = solve_big(&system, n) else {
                continue;
            };
            for sign in [1, -1] {
                let d: Vec<BigInt> = nums.iter().map(|v| v * sign).collect();
                let ok = all.iter().all(|r| {
                    let v: BigInt = r.support.iter().map(|i| d[i - 1].clone()).sum::<BigInt>() * &det;
                    match r.sense {
                        Sense::Ge => !v.is_negative(),
                        Sense::Le => !v.is_positive(),
                        Sense::Eq => v.is_zero(),
                    }
                });
                if ok {
                    found = true;
                }
            }
            break;
        }
    });
    found
}

/// Solves the square system and checks feasibility against `all`. Returns the vertex as
/// reduced numerators followed by the positive common denominator.
fn solve_vertex(system: &[IntRow], all: &[IntRow], n: usize) -> Option<Vec<BigInt>> {
    match solve_i128(system, n) {
        Ok(None) => None,
        Ok(Some((nums, det))) => match feasible_i128(&nums, det, all) {
            Some(true) => Some(reduce_key(nums.into_iter().map(BigInt::from).collect(), BigInt::from(det))),
            Some(false) => None,
            None => feasible_big(nums.into_iter().map(BigInt::from).collect(), BigInt::from(det), all),
        },
        Err(Overflow) => {
            let (nums, det) = solve_big(system, n)?;
            feasible_big(nums, det, all)
        }
    }
}

struct Overflow;

/// Fraction-free Gauss-Jordan elimination. On success every diagonal entry equals the
/// determinant `d` and `x_i = M[i][n] / d`.
fn solve_i128(system: &[IntRow], n: usize) -> std::result::Result<Option<(Vec<i128>, i128)>, Overflow> {
    let mut m: Vec<Vec<i128>> = system
        .iter()
        .map(|r| {
            let mut row: Vec<i128> = (1..=n).map(|i| if r.support.contains(i) { r.coef } else { 0 }).collect();
            row.push(r.rhs);
            row
        })
        .collect();
    let mut prev: i128 = 1;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| m[r][k] != 0) else {
            return Ok(None);
        };
        m.swap(k, p);
        let pivot = m[k][k];
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = m[i][k];
            for j in 0..=n {
                if j == k {
                    continue;
                }
                let a = pivot.checked_mul(m[i][j]).ok_or(Overflow)?;
                let b = factor.checked_mul(m[k][j]).ok_or(Overflow)?;
                m[i][j] = a.checked_sub(b).ok_or(Overflow)? / prev;
            }
            m[i][k] = 0;
        }
        prev = pivot;
    }
    let mut det = prev;
    let mut nums: Vec<i128> = (0..n).map(|i| m[i][n]).collect();
    if det < 0 {
        det = det.checked_neg().ok_or(Overflow)?;
        for v in nums.iter_mut() {
            *v = v.checked_neg().ok_or(Overflow)?;
        }
    }
    Ok(Some((nums, det)))
}

fn solve_big(system: &[IntRow], n: usize) -> Option<(Vec<BigInt>, BigInt)> {
    let mut m: Vec<Vec<BigInt>> = system
        .iter()
        .map(|r| {
            let mut row: Vec<BigInt> =
                (1..=n).map(|i| if r.support.contains(i) { BigInt::from(r.coef) } else { BigInt::zero() }).collect();
            row.push(BigInt::from(r.rhs));
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, p);
        let pivot = m[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = m[i][k].clone();
            for j in 0..=n {
                if j != k {
                    m[i][j] = (&pivot * &m[i][j] - &factor * &m[k][j]) / &prev;
                }
            }
            m[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    let sign = if prev.is_negative() { -BigInt::one() } else { BigInt::one() };
    Some(((0..n).map(|i| &m[i][n] * &sign).collect(), prev * sign))
}

/// `None` on overflow.
fn feasible_i128(nums: &[i128], det: i128, all: &[IntRow]) -> Option<bool> {
    for r in all {
        let mut s: i128 = 0;
        for i in r.support.iter() {
            s = s.checked_add(nums[i - 1])?;
        }
        let lhs = s.checked_mul(r.coef)?;
        let rhs = r.rhs.checked_mul(det)?;
        let ok = match r.sense {
            Sense::Ge => lhs >= rhs,
            Sense::Le => lhs <= rhs,
            Sense::Eq => lhs == rhs,
        };
        if !ok {
            return Some(false);
        }
    }
    Some(true)
}

fn feasible_big(nums: Vec<BigInt>, det: BigInt, all: &[IntRow]) -> Option<Vec<BigInt>> {
    let ok = all.iter().all(|r| {
        let lhs: BigInt = r.support.iter().map(|i| nums[i - 1].clone()).sum::<BigInt>() * BigInt::from(r.coef);
        let rhs = BigInt::from(r.rhs) * &det;
        match r.sense {
            Sense::Ge => lhs >= rhs,
            Sense::Le => lhs <= rhs,
            Sense::Eq => lhs == rhs,
        }
    });
    ok.then(|| reduce_key(nums, det))
}

fn reduce_key(mut nums: Vec<BigInt>, det: BigInt) -> Vec<BigInt> {
    let g = nums.iter().fold(det.clone(), |g, v| g.gcd(v));
    if !g.is_one() && !g.is_zero() {
        for v in nums.iter_mut() {
            *v /= &g;
        }
        nums.push(det / g);
    } else {
        nums.push(det);
    }
    nums
}
