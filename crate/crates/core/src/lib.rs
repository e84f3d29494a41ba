//! Exact segment depth and circle depth for small point sets.
//!
//! A segment `pq` of a point set in space has depth `k` when every plane
//! through `p` and `q` leaves at least `k` points strictly on each side. Via
//! the paraboloid lift this is the same number as the circular depth of a
//! planar pair: the smallest count of points inside, or outside, any circle
//! through the pair.
//!
//! The crate counts oriented j-facets, computes every segment depth with a
//! rotational sweep (checked against a brute-force oracle), builds the
//! convex hull and its deletion hulls, and evaluates the classical
//! `(<= j)`-facet bound together with the depth bounds derived from it.
//! All predicates are exact.

pub mod bounds;
pub mod depth;
pub mod error;
pub mod exactgeom;
pub mod facets;
pub mod generators;
pub mod hull;
pub mod io;
pub mod lift;

pub use error::{Error, Result};
pub use exactgeom::{PlanarPoint, PlanarSet, PointSet, Rational, Sign, SpatialPoint, SpatialSet};
