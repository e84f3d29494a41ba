use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::kernel::Kernel;
use super::{PlanarPoint, Sign, SpatialPoint};
use crate::error::{Degeneracy, Error, Result};

/// Cached result of a general-position check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PositionStatus {
    General,
    Degenerate { kind: Degeneracy, witness: Vec<usize> },
}

impl PositionStatus {
    pub fn is_general(&self) -> bool {
        matches!(self, PositionStatus::General)
    }

    fn to_result(&self) -> Result<()> {
        match self {
            PositionStatus::General => Ok(()),
            PositionStatus::Degenerate { kind, witness } => Err(Error::Degenerate {
                kind: *kind,
                witness: witness.clone(),
            }),
        }
    }
}

fn check_distinct<P: std::hash::Hash + Eq>(points: &[P]) -> Result<()> {
    let mut seen: HashMap<&P, usize> = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            return Err(Error::DuplicatePoint(j, i));
        }
        seen.insert(p, i);
    }
    Ok(())
}

pub(crate) fn check_index(i: usize, n: usize) -> Result<()> {
    if i >= n {
        Err(Error::IndexOutOfBounds { index: i, n })
    } else {
        Ok(())
    }
}

pub(crate) fn check_distinct_indices(ids: &[usize], n: usize) -> Result<()> {
    for (k, &i) in ids.iter().enumerate() {
        check_index(i, n)?;
        if ids[..k].contains(&i) {
            return Err(Error::RepeatedIndex(i));
        }
    }
    Ok(())
}

/// A planar point set. Indices are stable identifiers `0..n`.
#[derive(Clone, Debug)]
pub struct PlanarSet {
    points: Vec<PlanarPoint>,
    kernel: Kernel,
    status: OnceLock<PositionStatus>,
}

impl PlanarSet {
    pub fn new(points: Vec<PlanarPoint>) -> Result<Self> {
        check_distinct(&points)?;
        let kernel = Kernel::planar(&points);
        Ok(Self { points, kernel, status: OnceLock::new() })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| PlanarPoint::from_ints(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[PlanarPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &PlanarPoint {
        &self.points[i]
    }

    pub fn orient2d(&self, a: usize, b: usize, c: usize) -> Sign {
        self.kernel.orient2d(a, b, c)
    }

    /// Indexed form of [`super::incircle`].
    pub fn incircle(&self, a: usize, b: usize, c: usize, d: usize) -> Result<Sign> {
        let turn = self.kernel.orient2d(a, b, c);
        if turn == Sign::Zero {
            return Err(Error::DegenerateCircle);
        }
        Ok(self.kernel.orient3d(a, b, c, d).times(turn).reversed())
    }

    /// The cached status, if a check already ran.
    pub fn cached_status(&self) -> Option<&PositionStatus> {
        self.status.get()
    }

    /// No three points collinear and no four cocircular. Reports the first
    /// offending triple, then the first offending quadruple, in
    /// lexicographic index order.
    pub fn position_status(&self) -> &PositionStatus {
        self.status.get_or_init(|| self.compute_status())
    }

    pub fn require_general_position(&self) -> Result<()> {
        self.position_status().to_result()
    }

    fn compute_status(&self) -> PositionStatus {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if self.orient2d(a, b, c) == Sign::Zero {
                        return PositionStatus::Degenerate {
                            kind: Degeneracy::Collinear,
                            witness: vec![a, b, c],
                        };
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if self.kernel.orient3d(a, b, c, d) == Sign::Zero {
                            return PositionStatus::Degenerate {
                                kind: Degeneracy::Cocircular,
                                witness: vec![a, b, c, d],
                            };
                        }
                    }
                }
            }
        }
        PositionStatus::General
    }
}

/// A point set in space. Indices are stable identifiers `0..n`.
#[derive(Clone, Debug)]
pub struct SpatialSet {
    points: Vec<SpatialPoint>,
    kernel: Kernel,
    status: OnceLock<PositionStatus>,
}

impl SpatialSet {
    pub fn new(points: Vec<SpatialPoint>) -> Result<Self> {
        check_distinct(&points)?;
        let kernel = Kernel::spatial(&points);
        Ok(Self { points, kernel, status: OnceLock::new() })
    }

    pub fn from_ints(coords: &[(i64, i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y, z)| SpatialPoint::from_ints(x, y, z)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[SpatialPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &SpatialPoint {
        &self.points[i]
    }

    #[inline]
    pub fn orient3d(&self, a: usize, b: usize, c: usize, d: usize) -> Sign {
        self.kernel.orient3d(a, b, c, d)
    }

    pub fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        self.kernel.collinear(a, b, c)
    }

    pub fn cached_status(&self) -> Option<&PositionStatus> {
        self.status.get()
    }

    /// No four points coplanar; the first coplanar quadruple in
    /// lexicographic order is the witness.
    pub fn position_status(&self) -> &PositionStatus {
        self.status.get_or_init(|| self.compute_status())
    }

    pub fn require_general_position(&self) -> Result<()> {
        self.position_status().to_result()
    }

    /// A new set holding the listed points, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<SpatialSet> {
        for &i in indices {
            check_index(i, self.len())?;
        }
        SpatialSet::new(indices.iter().map(|&i| self.points[i].clone()).collect())
    }

    fn compute_status(&self) -> PositionStatus {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if self.orient3d(a, b, c, d) == Sign::Zero {
                            return PositionStatus::Degenerate {
                                kind: Degeneracy::Coplanar,
                                witness: vec![a, b, c, d],
                            };
                        }
                    }
                }
            }
        }
        PositionStatus::General
    }
}

/// A point set of either dimension, as read from or written to disk.
#[derive(Clone, Debug)]
pub enum PointSet {
    Planar(PlanarSet),
    Spatial(SpatialSet),
}

impl PointSet {
    pub fn dimension(&self) -> usize {
        match self {
            PointSet::Planar(_) => 2,
            PointSet::Spatial(_) => 3,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            PointSet::Planar(s) => s.len(),
            PointSet::Spatial(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn position_status(&self) -> &PositionStatus {
        match self {
            PointSet::Planar(s) => s.position_status(),
            PointSet::Spatial(s) => s.position_status(),
        }
    }

    /// The set as it is analysed in space: planar sets are lifted.
    pub fn to_spatial(&self) -> SpatialSet {
        match self {
            PointSet::Planar(s) => crate::lift::lift_set(s).lifted,
            PointSet::Spatial(s) => s.clone(),
        }
    }
}

impl From<PlanarSet> for PointSet {
    fn from(s: PlanarSet) -> Self {
        PointSet::Planar(s)
    }
}

impl From<SpatialSet> for PointSet {
    fn from(s: SpatialSet) -> Self {
        PointSet::Spatial(s)
    }
}

/// Outcome of [`check_convex_position`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexStatus {
    pub convex: bool,
    /// Smallest index that is not a hull vertex, when not convex.
    pub witness: Option<usize>,
}

/// Whether every point is a vertex of the convex hull.
pub fn check_convex_position(set: &SpatialSet) -> Result<ConvexStatus> {
    set.require_general_position()?;
    if set.len() < 4 {
        return Ok(ConvexStatus { convex: true, witness: None });
    }
    let hull = crate::hull::convex_hull_3d(set)?;
    let mut on_hull = vec![false; set.len()];
    for &v in &hull.vertices {
        on_hull[v] = true;
    }
    let witness = on_hull.iter().position(|&v| !v);
    Ok(ConvexStatus { convex: witness.is_none(), witness })
}
