//! Exact sign predicates over rational coordinates and position checks.
//!
//! Every predicate in this crate reduces to the sign of a small determinant.
//! The free functions here work directly on [`Rational`] coordinates; point
//! sets additionally keep an integer copy of their coordinates (see
//! [`PlanarSet`] and [`SpatialSet`]) so the hot loops never touch rationals.

mod kernel;
mod pointset;

use num_bigint::BigInt;
use num_traits::Signed;

pub(crate) use pointset::{check_distinct_indices, check_index};
pub use pointset::{check_convex_position, ConvexStatus, PlanarSet, PointSet, PositionStatus, SpatialSet};

use crate::error::{Error, Result};

/// Exact rational number; always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Builds `num/den`, normalised. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarPoint {
    pub x: Rational,
    pub y: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpatialPoint {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl PlanarPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(int(x), int(y))
    }
}

impl SpatialPoint {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Self { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(int(x), int(y), int(z))
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }
}

/// Sign of a determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(v: &T) -> Sign {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn reversed(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

// Shared determinant kernels. Generic so the same code serves i128, BigInt
// and Rational; each caller guarantees its type cannot overflow.

pub(crate) fn det2<T>(a: &T, b: &T, c: &T, d: &T) -> T
where
    T: Clone + std::ops::Mul<Output = T> + std::ops::Sub<Output = T>,
{
    a.clone() * d.clone() - b.clone() * c.clone()
}

pub(crate) fn det3<T>(r0: [&T; 3], r1: [&T; 3], r2: [&T; 3]) -> T
where
    T: Clone
        + std::ops::Mul<Output = T>
        + std::ops::Sub<Output = T>
        + std::ops::Add<Output = T>,
{
    r0[0].clone() * det2(r1[1], r1[2], r2[1], r2[2]) - r0[1].clone() * det2(r1[0], r1[2], r2[0], r2[2])
        + r0[2].clone() * det2(r1[0], r1[1], r2[0], r2[1])
}

/// Sign of `det(b - a, c - a)`; positive when `a, b, c` turn counterclockwise.
pub fn orient2d(a: &PlanarPoint, b: &PlanarPoint, c: &PlanarPoint) -> Sign {
    let (bx, by) = (&b.x - &a.x, &b.y - &a.y);
    let (cx, cy) = (&c.x - &a.x, &c.y - &a.y);
    Sign::of(&det2(&bx, &by, &cx, &cy))
}

/// Sign of `det(b - a, c - a, d - a)`.
///
/// Positive means `d` lies on the positive side of the oriented plane
/// `(a, b, c)`; the standard basis `(0,0,0), e1, e2, e3` gives `+1`.
pub fn orient3d(a: &SpatialPoint, b: &SpatialPoint, c: &SpatialPoint, d: &SpatialPoint) -> Sign {
    let rows: Vec<[Rational; 3]> = [b, c, d]
        .iter()
        .map(|p| [&p.x - &a.x, &p.y - &a.y, &p.z - &a.z])
        .collect();
    let r = |i: usize| [&rows[i][0], &rows[i][1], &rows[i][2]];
    Sign::of(&det3(r(0), r(1), r(2)))
}

/// `+1` iff `d` is strictly inside the circle through `a, b, c`, whatever
/// the orientation of `a, b, c`; `0` iff the four points are cocircular.
///
/// Evaluated as the lifted orientation test: inside the circle is below the
/// plane through the three lifted points.
pub fn incircle(a: &PlanarPoint, b: &PlanarPoint, c: &PlanarPoint, d: &PlanarPoint) -> Result<Sign> {
    let turn = orient2d(a, b, c);
    if turn == Sign::Zero {
        return Err(Error::DegenerateCircle);
    }
    let lifted = orient3d(
        &crate::lift::lift_point(a),
        &crate::lift::lift_point(b),
        &crate::lift::lift_point(c),
        &crate::lift::lift_point(d),
    );
    Ok(lifted.times(turn).reversed())
}
