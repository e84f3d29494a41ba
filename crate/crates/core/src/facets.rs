//! Oriented j-facets and the `(<= j)`-facet bound.
//!
//! The oriented triangle `(p, q, r)` is a j-facet when exactly `j` points lie
//! on its positive side. Each unordered triple gives two oriented facets, with
//! `j` and `n - 3 - j`. A `k`-set (a `k`-point subset separable from the rest
//! by a plane) is not enumerated here; the facet counts are what the bounds use.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{binomial, BoundEntry, BoundReport, Claim, Relation, Status};
use crate::error::{Error, Result};
use crate::exactgeom::{check_convex_position, check_distinct_indices, Sign, SpatialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetRecord {
    pub triple: (usize, usize, usize),
    pub j: usize,
}

/// `e[j]` oriented j-facets and the running totals `cumulative[j] = E_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetHistogram {
    pub n: usize,
    pub e: Vec<u64>,
    pub cumulative: Vec<u64>,
}

/// Largest `j` inside the `0 <= 2j <= n - 4` window, if any.
pub fn max_in_range_j(n: usize) -> Option<usize> {
    (n >= 4).then(|| (n - 4) / 2)
}

fn in_range(j: usize, n: usize) -> bool {
    max_in_range_j(n).is_some_and(|m| j <= m)
}

fn out_of_range(what: &'static str, j: usize, n: usize) -> Error {
    Error::OutOfRange { what, requirement: "0 <= 2j <= n-4", j, n }
}

/// Number of points strictly on the positive side of the oriented plane `(p, q, r)`.
pub fn facet_j(p: usize, q: usize, r: usize, set: &SpatialSet) -> Result<usize> {
    check_distinct_indices(&[p, q, r], set.len())?;
    set.require_general_position()?;
    if set.collinear(p, q, r) {
        return Err(Error::Degenerate { kind: crate::error::Degeneracy::Collinear, witness: vec![p, q, r] });
    }
    Ok(positive_count(set, p, q, r))
}

fn positive_count(set: &SpatialSet, p: usize, q: usize, r: usize) -> usize {
    (0..set.len())
        .filter(|&s| s != p && s != q && s != r && set.orient3d(p, q, r, s) == Sign::Positive)
        .count()
}

impl FacetHistogram {
    fn from_counts(n: usize, e: Vec<u64>) -> Self {
        let cumulative = e
            .iter()
            .scan(0u64, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        Self { n, e, cumulative }
    }

    pub fn e_j(&self, j: usize) -> u64 {
        self.e.get(j).copied().unwrap_or(0)
    }

    /// `E_j`; saturates at the total for `j` past the end.
    pub fn cumulative_j(&self, j: usize) -> u64 {
        match self.cumulative.get(j) {
            Some(&v) => v,
            None => self.cumulative.last().copied().unwrap_or(0),
        }
    }

    pub fn total(&self) -> u64 {
        self.cumulative.last().copied().unwrap_or(0)
    }

    /// CSV with header `j,e_j,E_j,bound_j,status`; `bound_j` is empty and the
    /// status is `out-of-range` outside `2j <= n - 4`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,e_j,E_j,bound_j,status\n");
        for j in 0..self.e.len() {
            let (bound, status) = match welzl_bound(j, self.n) {
                Ok(b) => (b.to_string(), Relation::AtMost.classify(self.cumulative[j] as i64, b as i64)),
                Err(_) => (String::new(), Status::OutOfRange),
            };
            let _ = writeln!(out, "{},{},{},{},{}", j, self.e[j], self.cumulative[j], bound, status);
        }
        out
    }
}

/// Exact oriented facet counts over all `2 * C(n, 3)` oriented triples.
pub fn build_facet_histogram(set: &SpatialSet) -> Result<FacetHistogram> {
    set.require_general_position()?;
    let n = set.len();
    if n < 3 {
        return Ok(FacetHistogram::from_counts(n, Vec::new()));
    }
    let width = n - 2;
    let e = (0..n)
        .into_par_iter()
        .map(|p| {
            let mut local = vec![0u64; width];
            for q in p + 1..n {
                for r in q + 1..n {
                    let j = positive_count(set, p, q, r);
                    local[j] += 1;
                    local[n - 3 - j] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(FacetHistogram::from_counts(n, e))
}

/// Number of oriented j-facets having `pq` as an edge.
pub fn facets_on_segment(set: &SpatialSet, p: usize, q: usize, j: usize) -> Result<usize> {
    check_distinct_indices(&[p, q], set.len())?;
    set.require_general_position()?;
    let n = set.len();
    Ok((0..n)
        .filter(|&r| r != p && r != q)
        .map(|r| {
            let pos = positive_count(set, p, q, r);
            usize::from(pos == j) + usize::from(n - 3 - pos == j)
        })
        .sum())
}

/// `2 [C(j+2, 2) n - 2 C(j+3, 3)]`, the maximum number of `(<= j)`-facets.
pub fn welzl_bound(j: usize, n: usize) -> Result<u64> {
    if !in_range(j, n) {
        return Err(out_of_range("welzl_bound", j, n));
    }
    let (n, j) = (n as u64, j as u64);
    Ok(2 * (binomial(j + 2, 2) * n - 2 * binomial(j + 3, 3)))
}

/// `2(j+1)n - 2(j+1)(j+2)`, the number of j-facets of a set in convex position.
pub fn corollary_ej(j: usize, n: usize) -> Result<u64> {
    if !in_range(j, n) {
        return Err(out_of_range("corollary_ej", j, n));
    }
    let (n, j) = (n as u64, j as u64);
    Ok(2 * (j + 1) * n - 2 * (j + 1) * (j + 2))
}

pub(crate) fn welzl_entries(hist: &FacetHistogram, convex: bool) -> Vec<BoundEntry> {
    let n = hist.n;
    let mut entries = Vec::new();
    let mut strict = 0i64;
    let mut any_in_range = false;
    for j in 0..hist.e.len().max(1) {
        match welzl_bound(j, n) {
            Ok(b) => {
                any_in_range = true;
                let entry = BoundEntry::check(
                    "welzl-E_j",
                    Some(j),
                    hist.cumulative_j(j) as i64,
                    b as i64,
                    Relation::AtMost,
                    Claim::Theorem,
                );
                if entry.status == Status::HoldsStrictly {
                    strict += 1;
                }
                entries.push(entry);
            }
            Err(_) => entries.push(BoundEntry::out_of_range("welzl-E_j", j, hist.cumulative_j(j) as i64)),
        }
    }
    if any_in_range {
        // tight exactly for convex position
        let (formula, relation) = if convex { (0, Relation::Equal) } else { (1, Relation::AtLeast) };
        entries.push(BoundEntry::check("welzl-strict-count", None, strict, formula, relation, Claim::Theorem));
    }
    entries
}

/// Compares `E_j` with the bound for every in-range `j`; rows beyond the
/// range are listed as `out-of-range`.
pub fn check_welzl(set: &SpatialSet) -> Result<BoundReport> {
    let hist = build_facet_histogram(set)?;
    let convex = check_convex_position(set)?.convex;
    let mut report = BoundReport::new(set, Some(convex));
    report.entries = welzl_entries(&hist, convex);
    Ok(report)
}
