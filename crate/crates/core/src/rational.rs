//! Exact rationals, their `"p/q"` text form, and small dense rational matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Always `p/q`, reduced, with a positive denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serde adapter for a single rational as a `"p/q"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// A rectangular matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::SizeMismatch { left: c, right: bad.len() });
        }
        Ok(RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        RationalMatrix::new(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    /// The first `k` rows.
    pub fn top_rows(&self, k: usize) -> RationalMatrix {
        let k = k.min(self.rows);
        RationalMatrix { rows: k, cols: self.cols, data: self.data[..k * self.cols].to_vec() }
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.row_vectors())
    }

    /// Rank of the submatrix formed by the given 0-indexed columns.
    pub fn column_subset_rank(&self, columns: &[usize]) -> usize {
        let rows = (0..self.rows).map(|r| columns.iter().map(|&c| self.get(r, c).clone()).collect()).collect();
        rank_of_rows(rows)
    }

    fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.row_vectors().iter().map(|r| r.iter().map(format_rational).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed: Result<Vec<Vec<Rational>>> = rows.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect();
        parsed.and_then(RationalMatrix::new).map_err(serde::de::Error::custom)
    }
}

/// Row rank by exact Gaussian elimination.
pub fn rank_of_rows(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = Rational::one() / rows[rank][c].clone();
        for r in (rank + 1)..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let factor = rows[r][c].clone() * inv.clone();
            for cc in c..cols {
                let delta = factor.clone() * rows[rank][cc].clone();
                rows[r][cc] -= delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Sign of a rational as -1, 0, 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}
