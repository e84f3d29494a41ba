use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{det2, det3, Rational, Sign};

/// Integer copy of a point set, uniformly scaled so every coordinate is an
/// integer. Uniform positive scaling preserves every orientation sign.
///
/// Planar sets are stored lifted, `(x, y, x^2 + y^2)`, so incircle tests are
/// 3D orientation tests on the stored rows.
#[derive(Clone, Debug)]
pub(crate) enum Kernel {
    Fast(Vec<[i128; 3]>),
    Big(Vec<[BigInt; 3]>),
}

/// Safe bound for `6 * dx * dy * dz` with each difference at most twice the
/// coordinate bound.
fn fits_i128(max_abs: &[BigInt; 3]) -> bool {
    let limit = BigInt::one() << 125;
    let product = BigInt::from(48) * &max_abs[0] * &max_abs[1] * &max_abs[2];
    product < limit && max_abs.iter().all(|m| m.bits() < 100)
}

fn common_denominator<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn scaled(v: &Rational, scale: &BigInt) -> BigInt {
    v.numer() * (scale / v.denom())
}

impl Kernel {
    pub(crate) fn from_rows(rows: Vec<[BigInt; 3]>) -> Kernel {
        let mut max_abs = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for row in &rows {
            for (m, c) in max_abs.iter_mut().zip(row) {
                let a = c.abs();
                if a > *m {
                    *m = a;
                }
            }
        }
        // a zero axis would make the product test vacuous; treat it as 1
        let padded = max_abs.map(|m| if m.is_zero() { BigInt::one() } else { m });
        if fits_i128(&padded) {
            Kernel::Fast(
                rows.iter()
                    .map(|r| r.each_ref().map(|c| c.to_i128().expect("bounded coordinate")))
                    .collect(),
            )
        } else {
            Kernel::Big(rows)
        }
    }

    pub(crate) fn planar(points: &[super::PlanarPoint]) -> Kernel {
        let scale = common_denominator(points.iter().flat_map(|p| [&p.x, &p.y]));
        let rows = points
            .iter()
            .map(|p| {
                let x = scaled(&p.x, &scale);
                let y = scaled(&p.y, &scale);
                let z = &x * &x + &y * &y;
                [x, y, z]
            })
            .collect();
        Kernel::from_rows(rows)
    }

    pub(crate) fn spatial(points: &[super::SpatialPoint]) -> Kernel {
        let scale = common_denominator(points.iter().flat_map(|p| p.coords()));
        let rows = points
            .iter()
            .map(|p| p.coords().map(|c| scaled(c, &scale)))
            .collect();
        Kernel::from_rows(rows)
    }

    #[cfg(test)]
    pub(crate) fn is_fast(&self) -> bool {
        matches!(self, Kernel::Fast(_))
    }

    #[inline]
    pub(crate) fn orient3d(&self, a: usize, b: usize, c: usize, d: usize) -> Sign {
        match self {
            Kernel::Fast(rows) => {
                let (pa, pb, pc, pd) = (rows[a], rows[b], rows[c], rows[d]);
                let u = [pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2]];
                let v = [pc[0] - pa[0], pc[1] - pa[1], pc[2] - pa[2]];
                let w = [pd[0] - pa[0], pd[1] - pa[1], pd[2] - pa[2]];
                let det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
                    + u[2] * (v[0] * w[1] - v[1] * w[0]);
                Sign::of(&det)
            }
            Kernel::Big(rows) => {
                let diff = |i: usize| -> [BigInt; 3] {
                    [&rows[i][0] - &rows[a][0], &rows[i][1] - &rows[a][1], &rows[i][2] - &rows[a][2]]
                };
                let (u, v, w) = (diff(b), diff(c), diff(d));
                Sign::of(&det3(u.each_ref(), v.each_ref(), w.each_ref()))
            }
        }
    }

    /// Orientation of the first two coordinates.
    #[inline]
    pub(crate) fn orient2d(&self, a: usize, b: usize, c: usize) -> Sign {
        match self {
            Kernel::Fast(rows) => {
                let (pa, pb, pc) = (rows[a], rows[b], rows[c]);
                let det = (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0]);
                Sign::of(&det)
            }
            Kernel::Big(rows) => {
                let d = |i: usize, k: usize| &rows[i][k] - &rows[a][k];
                Sign::of(&det2(&d(b, 0), &d(b, 1), &d(c, 0), &d(c, 1)))
            }
        }
    }

    /// Whether three stored rows are collinear in 3D.
    pub(crate) fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        match self {
            Kernel::Fast(rows) => {
                let u = [0, 1, 2].map(|k| rows[b][k] - rows[a][k]);
                let v = [0, 1, 2].map(|k| rows[c][k] - rows[a][k]);
                u[1] * v[2] == u[2] * v[1] && u[2] * v[0] == u[0] * v[2] && u[0] * v[1] == u[1] * v[0]
            }
            Kernel::Big(rows) => {
                let u = [0, 1, 2].map(|k| &rows[b][k] - &rows[a][k]);
                let v = [0, 1, 2].map(|k| &rows[c][k] - &rows[a][k]);
                &u[1] * &v[2] == &u[2] * &v[1]
                    && &u[2] * &v[0] == &u[0] * &v[2]
                    && &u[0] * &v[1] == &u[1] * &v[0]
            }
        }
    }
}
