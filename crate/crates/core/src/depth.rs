//! Segment depth in space and circular depth of planar pairs.
//!
//! The depth of `pq` is the smallest number of points that some plane
//! through `p` and `q` leaves on its poorer side. Rotating a generic plane
//! about the line `pq` until it hits a point never increases either side
//! count, so the minimum is attained by a plane through a third point `r`;
//! both algorithms below only look at those planes.

use std::cmp::Ordering;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Degeneracy, Error, Result};
use crate::exactgeom::{check_distinct_indices, PlanarSet, Sign, SpatialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthRecord {
    pub pair: (usize, usize),
    pub depth: usize,
    /// Third point whose plane (or circle) realises the depth; `None` when
    /// the set has no third point.
    pub witness: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DepthAlgorithm {
    Sweep,
    BruteForce,
}

/// `s[j]` segments of depth exactly `j`, and `cumulative[j] = S_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthHistogram {
    pub n: usize,
    pub s: Vec<u64>,
    pub cumulative: Vec<u64>,
}

impl DepthHistogram {
    pub fn from_records(n: usize, records: &[DepthRecord]) -> Self {
        let width = if n >= 2 { (n - 2) / 2 + 1 } else { 0 };
        let mut s = vec![0u64; width];
        for r in records {
            s[r.depth] += 1;
        }
        let cumulative = s
            .iter()
            .scan(0u64, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        Self { n, s, cumulative }
    }

    pub fn s_j(&self, j: usize) -> u64 {
        self.s.get(j).copied().unwrap_or(0)
    }

    pub fn cumulative_j(&self, j: usize) -> u64 {
        match self.cumulative.get(j) {
            Some(&v) => v,
            None => self.cumulative.last().copied().unwrap_or(0),
        }
    }

    pub fn total(&self) -> u64 {
        self.cumulative.last().copied().unwrap_or(0)
    }

    /// Number of segments with depth at least `k`.
    pub fn at_least(&self, k: usize) -> u64 {
        self.s.iter().skip(k).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,s_j,S_j\n");
        for (j, (s, c)) in self.s.iter().zip(&self.cumulative).enumerate() {
            let _ = writeln!(out, "{j},{s},{c}");
        }
        out
    }
}

/// CSV with header `pair_i,pair_j,depth,witness`.
pub fn records_to_csv(records: &[DepthRecord]) -> String {
    let mut out = String::from("pair_i,pair_j,depth,witness\n");
    for r in records {
        let w = r.witness.map(|w| w.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{}", r.pair.0, r.pair.1, r.depth, w);
    }
    out
}

fn prepare(set: &SpatialSet, p: usize, q: usize) -> Result<Vec<usize>> {
    check_distinct_indices(&[p, q], set.len())?;
    set.require_general_position()?;
    Ok((0..set.len()).filter(|&r| r != p && r != q).collect())
}

fn empty_record(p: usize, q: usize) -> DepthRecord {
    DepthRecord { pair: (p, q), depth: 0, witness: None }
}

/// Keeps the smallest `(depth, witness)`.
fn better(best: &mut Option<(usize, usize)>, depth: usize, r: usize) {
    if best.is_none_or(|b| (depth, r) < b) {
        *best = Some((depth, r));
    }
}

/// Oracle: every plane through `p`, `q` and a third point, counted directly.
/// `O(n^2)` orientation tests.
pub fn segment_depth_bruteforce(p: usize, q: usize, set: &SpatialSet) -> Result<DepthRecord> {
    let others = prepare(set, p, q)?;
    let mut best = None;
    for &r in &others {
        let (mut pos, mut neg) = (0usize, 0usize);
        for &s in &others {
            if s == r {
                continue;
            }
            match set.orient3d(p, q, r, s) {
                Sign::Positive => pos += 1,
                Sign::Negative => neg += 1,
                Sign::Zero => {
                    if set.collinear(p, q, r) {
                        return Err(Error::CollinearWithAxis { p, q, point: r });
                    }
                    let mut w = vec![p, q, r, s];
                    w.sort_unstable();
                    return Err(Error::Degenerate { kind: Degeneracy::Coplanar, witness: w });
                }
            }
        }
        better(&mut best, pos.min(neg), r);
    }
    Ok(match best {
        Some((depth, r)) => DepthRecord { pair: (p, q), depth, witness: Some(r) },
        None => empty_record(p, q),
    })
}

/// Rotational sweep around the line `pq`.
///
/// The other points are sorted by their angle around the line, using only
/// orientation tests: `orient3d(p, q, a, b) > 0` means `b` follows `a` by
/// less than a half turn. A half-plane is then swept once around the line
/// and the positive-side count of each plane `(p, q, r)` is the number of
/// points in the half turn after `r`. `O(n log n)` per pair.
pub fn segment_depth_sweep(p: usize, q: usize, set: &SpatialSet) -> Result<DepthRecord> {
    let mut ring = prepare(set, p, q)?;
    if let Some(&r) = ring.iter().find(|&&r| set.collinear(p, q, r)) {
        return Err(Error::CollinearWithAxis { p, q, point: r });
    }
    let m = ring.len();
    if m == 0 {
        return Ok(empty_record(p, q));
    }
    let anchor = ring[0];
    let half = |a: usize| -> u8 {
        if a == anchor || set.orient3d(p, q, anchor, a) == Sign::Positive {
            0
        } else {
            1
        }
    };
    let mut keyed: Vec<(u8, usize)> = ring.iter().map(|&a| (half(a), a)).collect();
    keyed.sort_by(|&(ha, a), &(hb, b)| {
        ha.cmp(&hb).then_with(|| {
            if a == b {
                Ordering::Equal
            } else if set.orient3d(p, q, a, b) == Sign::Positive {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    });
    ring = keyed.into_iter().map(|(_, a)| a).collect();

    let mut best = None;
    let mut end = 0;
    for i in 0..m {
        end = end.max(i + 1);
        while end < i + m && set.orient3d(p, q, ring[i], ring[end % m]) == Sign::Positive {
            end += 1;
        }
        let pos = end - i - 1;
        let neg = m - 1 - pos;
        better(&mut best, pos.min(neg), ring[i]);
    }
    let (depth, r) = best.expect("ring is non-empty");
    Ok(DepthRecord { pair: (p, q), depth, witness: Some(r) })
}

pub fn segment_depth(p: usize, q: usize, set: &SpatialSet, algorithm: DepthAlgorithm) -> Result<DepthRecord> {
    match algorithm {
        DepthAlgorithm::Sweep => segment_depth_sweep(p, q, set),
        DepthAlgorithm::BruteForce => segment_depth_bruteforce(p, q, set),
    }
}

/// One record per unordered pair `i < j`, in lexicographic order, plus the histogram.
pub fn all_segment_depths(set: &SpatialSet, algorithm: DepthAlgorithm) -> Result<(Vec<DepthRecord>, DepthHistogram)> {
    set.require_general_position()?;
    let n = set.len();
    let rows: Vec<Result<Vec<DepthRecord>>> = (0..n)
        .into_par_iter()
        .map(|p| (p + 1..n).map(|q| segment_depth(p, q, set, algorithm)).collect())
        .collect();
    let mut records = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for row in rows {
        records.extend(row?);
    }
    let hist = DepthHistogram::from_records(n, &records);
    Ok((records, hist))
}

/// A deepest segment; ties go to the lexicographically smallest pair.
pub fn max_depth_pair(set: &SpatialSet) -> Result<DepthRecord> {
    let (records, _) = all_segment_depths(set, DepthAlgorithm::Sweep)?;
    deepest(&records).ok_or(Error::TooFewPoints { needed: 2, n: set.len() })
}

pub(crate) fn deepest(records: &[DepthRecord]) -> Option<DepthRecord> {
    records.iter().fold(None, |best: Option<DepthRecord>, r| match best {
        Some(b) if b.depth >= r.depth => Some(b),
        _ => Some(*r),
    })
}

/// Circular depth of a planar pair: the minimum over circles through `p`, `q`
/// and a third point of the smaller of the inside and outside counts.
/// Entirely planar; uses the incircle predicate only.
pub fn planar_pair_depth(p: usize, q: usize, set: &PlanarSet) -> Result<DepthRecord> {
    check_distinct_indices(&[p, q], set.len())?;
    set.require_general_position()?;
    let n = set.len();
    let mut best = None;
    for r in (0..n).filter(|&r| r != p && r != q) {
        let (mut inside, mut outside) = (0usize, 0usize);
        for s in (0..n).filter(|&s| s != p && s != q && s != r) {
            match set.incircle(p, q, r, s)? {
                Sign::Positive => inside += 1,
                Sign::Negative => outside += 1,
                Sign::Zero => unreachable!("general position excludes cocircular quadruples"),
            }
        }
        better(&mut best, inside.min(outside), r);
    }
    Ok(match best {
        Some((depth, r)) => DepthRecord { pair: (p, q), depth, witness: Some(r) },
        None => empty_record(p, q),
    })
}

/// Circular depth of every planar pair, lexicographic order.
pub fn all_planar_pair_depths(set: &PlanarSet) -> Result<Vec<DepthRecord>> {
    set.require_general_position()?;
    let n = set.len();
    let rows: Vec<Result<Vec<DepthRecord>>> = (0..n)
        .into_par_iter()
        .map(|p| (p + 1..n).map(|q| planar_pair_depth(p, q, set)).collect())
        .collect();
    let mut out = Vec::new();
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}
