//! The paraboloid map `(x, y) -> (x, y, x^2 + y^2)`.
//!
//! A point is strictly inside the circle through three others exactly when
//! its lift lies strictly below the plane through their lifts. With the
//! `orient3d` convention of this crate, "below" for a counterclockwise
//! triple means a negative orientation.

use crate::error::{Error, Result};
use crate::exactgeom::{PlanarPoint, PlanarSet, Sign, SpatialPoint, SpatialSet};
use crate::exactgeom::check_distinct_indices;

pub fn lift_point(p: &PlanarPoint) -> SpatialPoint {
    let z = &p.x * &p.x + &p.y * &p.y;
    SpatialPoint::new(p.x.clone(), p.y.clone(), z)
}

/// A planar set together with its lift; index `i` means the same point in both.
#[derive(Clone, Debug)]
pub struct LiftedSet {
    pub source: PlanarSet,
    pub lifted: SpatialSet,
}

pub fn lift_set(set: &PlanarSet) -> LiftedSet {
    let lifted = SpatialSet::new(set.points().iter().map(lift_point).collect())
        .expect("lifting is injective on distinct points");
    LiftedSet { source: set.clone(), lifted }
}

/// Points strictly inside and strictly outside the circle through `p, q, r`,
/// not counting the three defining points.
pub fn circle_side_counts(p: usize, q: usize, r: usize, set: &PlanarSet) -> Result<(usize, usize)> {
    check_distinct_indices(&[p, q, r], set.len())?;
    if set.orient2d(p, q, r) == Sign::Zero {
        return Err(Error::DegenerateCircle);
    }
    let mut inside = 0;
    let mut outside = 0;
    for s in 0..set.len() {
        if s == p || s == q || s == r {
            continue;
        }
        match set.incircle(p, q, r, s)? {
            Sign::Positive => inside += 1,
            Sign::Negative => outside += 1,
            Sign::Zero => {
                return Err(Error::Degenerate {
                    kind: crate::error::Degeneracy::Cocircular,
                    witness: sorted(&[p, q, r, s]),
                })
            }
        }
    }
    Ok((inside, outside))
}

fn sorted(ids: &[usize]) -> Vec<usize> {
    let mut v = ids.to_vec();
    v.sort_unstable();
    v
}
