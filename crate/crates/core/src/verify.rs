//! Self-checks for one ground-set size, run by `permsplit verify`.
//!
//! Each check compares a library routine against a brute-force oracle kept here, on
//! exhaustive families where feasible and on seeded random samples otherwise.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::lpm::{flag_of_interval, gale_leq, lpfm_interval, LatticePathMatroid, LpfmFlag};
use crate::matroid::{is_quotient, QuotientCriterion, SetMatroid};
use crate::perm::{dual_interval, Permutation};
use crate::polytope::{enumerate_vertices, flag_polytope_vertices, permutahedron_facets, LinearConstraint, RationalPoint, Sense};
use crate::rational::{int, RationalMatrix};
use crate::splits::{
    check_split, dual_hyperplane, exhaustive_scan, parse_hyperplane, predicted_cells, theorem_hyperplanes, HyperplaneFamily,
    SplitHyperplane, SplitVerdict,
};
use crate::subdivision::{build_poset, subdivision_from_hyperplanes, Outcome, Rejection};
use crate::subset::ElementSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

fn check(name: &'static str, ok: bool, detail: String) -> Check {
    Check { name, status: if ok { Status::Pass } else { Status::Fail }, detail }
}

fn skip(name: &'static str, why: &str) -> Check {
    Check { name, status: Status::Skip, detail: why.to_string() }
}

/// Runs every check that is feasible for `n`.
pub fn verify(n: usize, seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = vec![
        bruhat_check(n),
        lpfm_polytope_check(n, &mut rng),
        theorem_check(n),
        scan_check(n),
        duality_check(n),
        poset_check(n),
        quotient_criteria_check(n, &mut rng),
        good_pair_check(n),
        kernel_check(n, &mut rng),
    ];
    VerifyReport { n, seed, checks }
}

/// Pairs `(u, v)` with `v` reachable from `u` along Bruhat covers.
pub fn cover_reachability(n: usize) -> Vec<Vec<bool>> {
    let perms = Permutation::all(n);
    let index = |p: &Permutation| perms.binary_search(p).unwrap();
    let up: Vec<Vec<usize>> = perms.iter().map(|p| p.bruhat_covers().iter().map(index).collect()).collect();
    let mut reach = vec![vec![false; perms.len()]; perms.len()];
    for (s, row) in reach.iter_mut().enumerate() {
        let mut queue = VecDeque::from([s]);
        row[s] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &up[x] {
                if !row[y] {
                    row[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    reach
}

fn bruhat_check(n: usize) -> Check {
    const NAME: &str = "bruhat-order";
    if n > 6 {
        return skip(NAME, "n > 6");
    }
    let perms = Permutation::all(n);
    let reach = cover_reachability(n);
    let mut bad = None;
    for (i, u) in perms.iter().enumerate() {
        for (j, v) in perms.iter().enumerate() {
            if u.bruhat_le(v) != reach[i][j] && bad.is_none() {
                bad = Some(format!("{u} ≤ {v}"));
            }
        }
    }
    let pairs = perms.len() * perms.len();
    check(NAME, bad.is_none(), bad.unwrap_or_else(|| format!("{pairs} pairs agree with cover reachability")))
}

/// Every flag of Schubert LPMs, found by quotient tests alone.
pub fn schubert_flags(n: usize) -> Vec<LpfmFlag> {
    let by_rank: Vec<Vec<LatticePathMatroid>> = (0..=n)
        .map(|k| {
            ElementSet::k_subsets(n, k)
                .into_iter()
                .filter_map(|u| LatticePathMatroid::new(n, u, ElementSet::range(n + 1 - k, n)).ok())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![LatticePathMatroid::uniform(n, n)];
    fn rec(by_rank: &[Vec<LatticePathMatroid>], stack: &mut Vec<LatticePathMatroid>, out: &mut Vec<LpfmFlag>, n: usize) {
        let top = *stack.last().unwrap();
        if top.rank() == 1 {
            let flag: Vec<_> = stack.iter().rev().copied().collect();
            out.push(LpfmFlag::new(n, flag).expect("quotient chain of Schubert LPMs"));
            return;
        }
        let big = top.to_matroid();
        for cand in &by_rank[top.rank() - 1] {
            if is_quotient(&cand.to_matroid(), &big, QuotientCriterion::Flats).unwrap_or(false) {
                stack.push(*cand);
                rec(by_rank, stack, out, n);
                stack.pop();
            }
        }
    }
    if n > 0 {
        rec(&by_rank, &mut stack, &mut out, n);
    }
    out
}

fn lpfm_polytope_check(n: usize, rng: &mut ChaCha8Rng) -> Check {
    const NAME: &str = "lpfm-polytopes";
    if n > 6 {
        return skip(NAME, "n > 6");
    }
    let flags: Vec<LpfmFlag> = if n <= 4 {
        let mut all: BTreeSet<LpfmFlag> = LpfmFlag::all(n).into_iter().collect();
        all.extend(schubert_flags(n));
        all.into_iter().collect()
    } else {
        (0..200).map(|_| LpfmFlag::random(n, rng)).collect()
    };
    for f in &flags {
        let ok = (|| {
            let pts: BTreeSet<RationalPoint> = flag_polytope_vertices(&f.matroids()).ok()?.into_iter().collect();
            let interval: BTreeSet<RationalPoint> =
                lpfm_interval(f).ok()?.elements().iter().map(RationalPoint::from_permutation).collect();
            Some(pts == interval)
        })();
        if ok != Some(true) {
            return check(NAME, false, format!("{f:?}"));
        }
    }
    check(NAME, true, format!("{} flags: vertices = interval points", flags.len()))
}

fn theorem_check(n: usize) -> Check {
    const NAME: &str = "theorem-splits";
    if !(3..=6).contains(&n) {
        return skip(NAME, "needs 3 ≤ n ≤ 6");
    }
    let hs = theorem_hyperplanes(n);
    for h in &hs {
        let r = check_split(h);
        let Some([low, high]) = r.cells.clone() else {
            return check(NAME, false, format!("{h}: {}", r.verdict));
        };
        if r.cells != predicted_cells(h) || r.lpfm != [true, true] || !low.lo().is_identity() || !high.hi().is_longest() {
            return check(NAME, false, format!("{h}: cells {low} {high}"));
        }
        let schubert = |cell, dual: bool| {
            flag_of_interval(cell).is_ok_and(|f| {
                f.lpms.iter().all(|m| m.is_some_and(|m| if dual { m.is_dual_schubert() } else { m.is_schubert() }))
            })
        };
        if !schubert(&low, false) || !schubert(&high, true) {
            return check(NAME, false, format!("{h}: Schubert/dual-Schubert constituents"));
        }
    }
    check(NAME, true, format!("{} hyperplanes split into their predicted LPFM cells", hs.len()))
}

fn scan_check(n: usize) -> Check {
    const NAME: &str = "scan";
    if !(3..=6).contains(&n) {
        return skip(NAME, "needs 3 ≤ n ≤ 6");
    }
    let scanned: BTreeSet<SplitHyperplane> = exhaustive_scan(n).into_iter().collect();
    let theorem: BTreeSet<SplitHyperplane> = theorem_hyperplanes(n).into_iter().collect();
    let mut ok = scanned == theorem;
    let mut detail = format!("{} good splits, theorem list has {}", scanned.len(), theorem.len());
    if n == 4 {
        let v1 = check_split(&parse_hyperplane("x1+x2=5", 4).unwrap()).verdict;
        let v2 = check_split(&parse_hyperplane("x3=3", 4).unwrap()).verdict;
        ok &= v1 == SplitVerdict::BadSquare && v2 == SplitVerdict::BadHexagon;
        detail.push_str(&format!("; x1+x2=5 {v1}, x3=3 {v2}"));
    }
    check(NAME, ok, detail)
}

fn duality_check(n: usize) -> Check {
    const NAME: &str = "duality";
    if !(3..=6).contains(&n) {
        return skip(NAME, "needs 3 ≤ n ≤ 6");
    }
    for h in exhaustive_scan(n) {
        let Ok(d) = dual_hyperplane(&h) else {
            return check(NAME, false, format!("{h} has no dual"));
        };
        if dual_hyperplane(&d).ok().as_ref() != Some(&h) {
            return check(NAME, false, format!("{h} ↦ {d} is not an involution"));
        }
        let (c, dc) = (check_split(&h).cells, check_split(&d).cells);
        let swapped = c.map(|[a, b]| [dual_interval(&b), dual_interval(&a)]);
        if dc != swapped {
            return check(NAME, false, format!("cells of {d} are not the dual cells of {h}"));
        }
    }
    for j in 1..=n - 2 {
        let t1 = HyperplaneFamily::Prefix { j }.hyperplane(n).unwrap();
        let t2 = HyperplaneFamily::PrefixDual { j }.hyperplane(n).unwrap();
        if dual_hyperplane(&t1).ok() != Some(t2) {
            return check(NAME, false, format!("prefix hyperplane j={j} does not map to its dual family"));
        }
    }
    for r in 2..n {
        let first = |r| HyperplaneFamily::First { r }.hyperplane(n).unwrap();
        if dual_hyperplane(&first(r)).ok() != Some(first(n + 1 - r)) {
            return check(NAME, false, format!("x1={r} does not map to x1={}", n + 1 - r));
        }
    }
    check(NAME, true, "involution with dual cells; prefix ↔ prefix-dual; x1=r ↦ x1=n-r+1".into())
}

fn poset_check(n: usize) -> Check {
    const NAME: &str = "poset";
    if !(3..=4).contains(&n) {
        return skip(NAME, "built for 3 ≤ n ≤ 4 here; use `poset build` for n = 5");
    }
    let p = match build_poset(n) {
        Ok(p) => p,
        Err(e) => return check(NAME, false, e.to_string()),
    };
    let (min, max) = (p.minimal(), p.maximal());
    let singles = min.iter().all(|&i| p.elements()[i].hyperplanes().len() == 1) && min.len() == exhaustive_scan(n).len();
    let mut detail = format!("{} elements, {} minimal, {} maximal", p.elements().len(), min.len(), max.len());
    let mut ok = singles;
    if n == 4 {
        ok &= min.len() == 6 && max.len() == 2;
        let hs = |l: &[&str]| l.iter().map(|t| parse_hyperplane(t, 4).unwrap()).collect::<Vec<_>>();
        let five = subdivision_from_hyperplanes(4, &hs(&["x1+x2=6", "x1=2", "x4=3"])).ok().and_then(Outcome::accepted);
        let expected = ["[1234, 2413]", "[1243, 2431]", "[2134, 4213]", "[2143, 4231]", "[2413, 4321]"];
        ok &= five.is_some_and(|s| s.intervals().iter().map(|i| i.to_string()).eq(expected));
        let rejected = subdivision_from_hyperplanes(4, &hs(&["x1+x2=6", "x4=2"]));
        ok &= matches!(rejected, Ok(Outcome::Rejected(Rejection::NewVertex { .. })));
        detail.push_str(" (expected 6 minimal, 2 maximal); five-cell example and new-vertex rejection checked");
    }
    check(NAME, ok, detail)
}

/// A random integer matrix with `rows ≤ n` rows and `n` columns, entries in `-2..=2`.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, n: usize) -> RationalMatrix {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    RationalMatrix::from_integers(&data).expect("rectangular")
}

/// A pair of matroids on `[n]`: either the top rows of a matrix against the whole matrix (a
/// quotient) or two unrelated matrices.
pub fn random_matroid_pair(rng: &mut impl Rng, n: usize) -> (SetMatroid, SetMatroid) {
    let rows = rng.gen_range(1..=n);
    let a = random_matrix(rng, rows, n);
    let big = SetMatroid::from_rational_matrix(&a).expect("small ground set");
    let small = if rng.gen_bool(0.5) {
        SetMatroid::from_rational_matrix(&a.top_rows(rng.gen_range(0..=rows))).expect("small ground set")
    } else {
        let r = rng.gen_range(1..=rows);
        SetMatroid::from_rational_matrix(&random_matrix(rng, r, n)).expect("small ground set")
    };
    (small, big)
}

fn criteria_agree(m: &SetMatroid, big: &SetMatroid) -> Option<bool> {
    let verdicts: Vec<bool> = QuotientCriterion::ALL.iter().map(|&c| is_quotient(m, big, c).ok()).collect::<Option<_>>()?;
    verdicts.iter().all(|&v| v == verdicts[0]).then_some(verdicts[0])
}

fn quotient_criteria_check(n: usize, rng: &mut ChaCha8Rng) -> Check {
    const NAME: &str = "quotient-criteria";
    if n > 6 {
        return skip(NAME, "n > 6");
    }
    let mut detail = String::new();
    let mut quotients = 0;
    if n <= 5 {
        let lpms: Vec<SetMatroid> = LatticePathMatroid::all(n).iter().map(|m| m.to_matroid()).collect();
        for a in &lpms {
            for b in &lpms {
                match criteria_agree(a, b) {
                    Some(q) => quotients += q as usize,
                    None => return check(NAME, false, format!("criteria disagree on {a:?} vs {b:?}")),
                }
            }
        }
        detail.push_str(&format!("{} LPM pairs ({quotients} quotients); ", lpms.len() * lpms.len()));
    }
    let mut random_quotients = 0;
    for _ in 0..500 {
        let (a, b) = random_matroid_pair(rng, n);
        match criteria_agree(&a, &b) {
            Some(q) => random_quotients += q as usize,
            None => return check(NAME, false, format!("criteria disagree on {a:?} vs {b:?}")),
        }
    }
    detail.push_str(&format!("500 random matrix pairs ({random_quotients} quotients) agree"));
    check(NAME, true, detail)
}

fn good_pair_check(n: usize) -> Check {
    const NAME: &str = "good-pairs";
    if n > 6 {
        return skip(NAME, "n > 6");
    }
    let mut tested = 0;
    for m in LatticePathMatroid::all(n).into_iter().filter(|m| m.rank() > 0) {
        let big = m.to_matroid();
        for u in m.upper().iter() {
            for l in m.lower().iter() {
                tested += 1;
                let quotient = LatticePathMatroid::new(n, m.upper().without(u), m.lower().without(l))
                    .map(|q| is_quotient(&q.to_matroid(), &big, QuotientCriterion::Flats).unwrap_or(false))
                    .unwrap_or(false);
                if quotient != m.is_good_pair(u, l) {
                    return check(NAME, false, format!("{m}: ({u}, {l})"));
                }
            }
        }
    }
    check(NAME, true, format!("{tested} (LPM, u, l) triples: good pair ⇔ quotient"))
}

/// Number of `k`-sets `B` with `U ≤_G B ≤_G L`, by a lattice-path recurrence.
pub fn lattice_path_count(n: usize, upper: &[usize], lower: &[usize]) -> u128 {
    let k = upper.len();
    // ways[j]: choices of the first j elements among the positions seen so far
    let mut ways = vec![0u128; k + 1];
    ways[0] = 1;
    for i in 1..=n {
        for j in (1..=k).rev() {
            if upper[j - 1] <= i && i <= lower[j - 1] {
                ways[j] += ways[j - 1];
            }
        }
    }
    ways[k]
}

/// A Gale-comparable pair of `k`-subsets of `[n]`.
pub fn random_gale_pair(rng: &mut impl Rng, n: usize) -> (ElementSet, ElementSet) {
    let k = rng.gen_range(0..=n);
    loop {
        let a = random_subset(rng, n, k);
        let b = random_subset(rng, n, k);
        if gale_leq(a, b) {
            return (a, b);
        }
        if gale_leq(b, a) {
            return (b, a);
        }
    }
}

fn random_subset(rng: &mut impl Rng, n: usize, k: usize) -> ElementSet {
    rand::seq::index::sample(rng, n, k).into_iter().map(|i| i + 1).collect()
}

fn kernel_check(n: usize, rng: &mut ChaCha8Rng) -> Check {
    const NAME: &str = "exact-kernel";
    let mut ok = true;
    let mut detail = String::new();
    if n <= 5 {
        let verts = enumerate_vertices(&permutahedron_facets(n), n).vertices;
        let perms: HashSet<Permutation> = verts.iter().filter_map(RationalPoint::as_permutation).collect();
        let count_ok = verts.len() == Permutation::all(n).len() && perms.len() == verts.len();
        ok &= count_ok;
        detail.push_str(&format!("Π_{n} has {} vertices; ", verts.len()));
    }
    if n == 4 {
        let mut cut = permutahedron_facets(4);
        cut.push(LinearConstraint { support: ElementSet::range(1, 2), sense: Sense::Le, level: int(5) });
        let extra = enumerate_vertices(&cut, 4).vertices.iter().filter(|v| v.as_permutation().is_none()).count();
        ok &= extra > 0;
        detail.push_str(&format!("x1+x2 ≤ 5 cut has {extra} non-permutation vertices (expected ≥ 1); "));
    }
    let mut mismatches = 0;
    for _ in 0..1000 {
        let size = rng.gen_range(1..=n.clamp(1, 12));
        let (u, l) = random_gale_pair(rng, size);
        let lpm = LatticePathMatroid::new(size, u, l).expect("Gale pair");
        if lpm.bases().len() as u128 != lattice_path_count(size, &u.to_vec(), &l.to_vec()) {
            mismatches += 1;
        }
    }
    ok &= mismatches == 0;
    detail.push_str(&format!("basis counts match the lattice-path recurrence on 1000 random (U, L) ({mismatches} mismatches)"));
    check(NAME, ok, detail)
}
