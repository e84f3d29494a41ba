//! Seeded point-set generators. Every generator is a pure function of its
//! [`GenSpec`] and verifies general position (and convex position where
//! promised) exactly before returning.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactgeom::{check_convex_position, int, ratio, PlanarSet, PointSet, Rational, SpatialPoint, SpatialSet};
use crate::hull::convex_hull_3d;
use crate::lift::lift_set;

pub const DEFAULT_GRID: i64 = 1_000_000;
pub const DEFAULT_DENOMINATOR: i64 = 1_000_000;
/// Keeps the incremental incircle tests inside `i128`.
const MAX_GRID: i64 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    RandomPlanar,
    LiftedRandom,
    SphereConvex,
    PaperConstruction,
    /// A lifted convex set of `n - 1` points plus one interior point.
    ConvexPlusInterior,
}

impl std::str::FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "random-planar" | "planar" => GenKind::RandomPlanar,
            "lifted-random" | "lifted" => GenKind::LiftedRandom,
            "sphere-convex" | "sphere" => GenKind::SphereConvex,
            "paper-construction" | "construction" => GenKind::PaperConstruction,
            "convex-plus-interior" | "interior" => GenKind::ConvexPlusInterior,
            other => return Err(Error::InvalidSpec(format!("unknown kind {other:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConvexMode {
    Lifted,
    Sphere,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub seed: u64,
    pub grid: i64,
    pub denominator: i64,
}

impl GenSpec {
    pub fn with_n(kind: GenKind, n: usize, seed: u64) -> Self {
        Self { kind, n: Some(n), m: None, seed, grid: DEFAULT_GRID, denominator: DEFAULT_DENOMINATOR }
    }

    pub fn construction(m: usize, seed: u64) -> Self {
        Self {
            kind: GenKind::PaperConstruction,
            n: None,
            m: Some(m),
            seed,
            grid: DEFAULT_GRID,
            denominator: DEFAULT_DENOMINATOR,
        }
    }

    /// Number of points the spec produces.
    pub fn size(&self) -> Result<usize> {
        match self.kind {
            GenKind::PaperConstruction => self
                .m
                .map(|m| 4 * m)
                .ok_or_else(|| Error::InvalidSpec("paper-construction needs m".into())),
            _ => self.n.ok_or_else(|| Error::InvalidSpec(format!("{:?} needs n", self.kind))),
        }
    }
}

/// Generates the point set described by `spec`.
pub fn generate(spec: &GenSpec) -> Result<PointSet> {
    let n = spec.size()?;
    Ok(match spec.kind {
        GenKind::RandomPlanar => gen_random_planar(n, spec.seed, spec.grid)?.into(),
        GenKind::LiftedRandom => gen_convex_3d(n, spec.seed, ConvexMode::Lifted, spec.grid)?.into(),
        GenKind::SphereConvex => gen_convex_3d(n, spec.seed, ConvexMode::Sphere, spec.grid)?.into(),
        GenKind::PaperConstruction => gen_paper_construction(n / 4, spec.seed, spec.denominator)?.into(),
        GenKind::ConvexPlusInterior => {
            if n < 5 {
                return Err(Error::InvalidSpec("convex-plus-interior needs n >= 5".into()));
            }
            let base = gen_convex_3d(n - 1, spec.seed, ConvexMode::Lifted, spec.grid)?;
            with_interior_point(&base, spec.seed)?.into()
        }
    })
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn check_grid(n: usize, grid: i64) -> Result<()> {
    if !(1..=MAX_GRID).contains(&grid) {
        return Err(Error::InvalidSpec(format!("grid must lie in 1..={MAX_GRID}")));
    }
    let cells = (2 * grid as u128 + 1).pow(2);
    if cells < n as u128 {
        return Err(Error::InvalidSpec(format!("grid {grid} has fewer than {n} lattice points")));
    }
    Ok(())
}

fn attempt_budget(n: usize) -> usize {
    1000 + 100 * n
}

fn orient2d_i(a: [i128; 2], b: [i128; 2], c: [i128; 2]) -> i128 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Lifted determinant; zero iff the four points are cocircular.
fn incircle_det_i(a: [i128; 2], b: [i128; 2], c: [i128; 2], d: [i128; 2]) -> i128 {
    let row = |p: [i128; 2]| {
        let (x, y) = (p[0] - d[0], p[1] - d[1]);
        [x, y, x * x + y * y]
    };
    let (u, v, w) = (row(a), row(b), row(c));
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0])
}

/// `n` integer points in `[-grid, grid]^2`, drawn uniformly and rejected
/// until no three are collinear and no four cocircular.
pub fn gen_random_planar(n: usize, seed: u64, grid: i64) -> Result<PlanarSet> {
    check_grid(n, grid)?;
    let mut rng = rng_for(seed, 1);
    let mut pts: Vec<[i128; 2]> = Vec::with_capacity(n);
    let mut attempts = 0;
    while pts.len() < n {
        attempts += 1;
        if attempts > attempt_budget(n) {
            return Err(Error::GenerationExhausted { attempts: attempts - 1 });
        }
        let c = [rng.gen_range(-grid..=grid) as i128, rng.gen_range(-grid..=grid) as i128];
        if accepts_planar(&pts, c) {
            pts.push(c);
        }
    }
    let set = PlanarSet::from_ints(&pts.iter().map(|p| (p[0] as i64, p[1] as i64)).collect::<Vec<_>>())?;
    set.require_general_position()?;
    Ok(set)
}

fn accepts_planar(pts: &[[i128; 2]], c: [i128; 2]) -> bool {
    let k = pts.len();
    if pts.contains(&c) {
        return false;
    }
    for a in 0..k {
        for b in a + 1..k {
            if orient2d_i(pts[a], pts[b], c) == 0 {
                return false;
            }
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            for d in b + 1..k {
                if incircle_det_i(pts[a], pts[b], pts[d], c) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Convex-position sets in space: the lift of a random planar set, or
/// integer points rounded from random directions on a sphere of radius `grid`.
pub fn gen_convex_3d(n: usize, seed: u64, mode: ConvexMode, grid: i64) -> Result<SpatialSet> {
    if n < 4 {
        return Err(Error::TooFewPoints { needed: 4, n });
    }
    let set = match mode {
        ConvexMode::Lifted => lift_set(&gen_random_planar(n, seed, grid)?).lifted,
        ConvexMode::Sphere => sphere_points(n, seed, grid)?,
    };
    set.require_general_position()?;
    if let Some(w) = check_convex_position(&set)?.witness {
        return Err(Error::NotConvexPosition { witness: w });
    }
    Ok(set)
}

fn orient3d_i(a: [i128; 3], b: [i128; 3], c: [i128; 3], d: [i128; 3]) -> i128 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let w = [d[0] - a[0], d[1] - a[1], d[2] - a[2]];
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0])
}

fn sphere_points(n: usize, seed: u64, grid: i64) -> Result<SpatialSet> {
    check_grid(n, grid)?;
    let mut rng = rng_for(seed, 2);
    let mut pts: Vec<[i128; 3]> = Vec::with_capacity(n);
    let mut attempts = 0;
    loop {
        while pts.len() < n {
            attempts += 1;
            if attempts > attempt_budget(n) {
                return Err(Error::GenerationExhausted { attempts: attempts - 1 });
            }
            let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if !(0.1..=1.0).contains(&norm) {
                continue;
            }
            let c = v.map(|x| (x / norm * grid as f64).round() as i128);
            if accepts_spatial(&pts, c) {
                pts.push(c);
            }
        }
        let set = SpatialSet::from_ints(&pts.iter().map(|p| (p[0] as i64, p[1] as i64, p[2] as i64)).collect::<Vec<_>>())?;
        let hull = convex_hull_3d(&set)?;
        if hull.vertices.len() == n {
            return Ok(set);
        }
        // drop interior points and keep drawing
        pts = hull.vertices.iter().map(|&v| pts[v]).collect();
    }
}

fn accepts_spatial(pts: &[[i128; 3]], c: [i128; 3]) -> bool {
    let k = pts.len();
    if pts.contains(&c) {
        return false;
    }
    for a in 0..k {
        for b in a + 1..k {
            let u = [0, 1, 2].map(|i| pts[b][i] - pts[a][i]);
            let v = [0, 1, 2].map(|i| c[i] - pts[a][i]);
            if u[1] * v[2] == u[2] * v[1] && u[2] * v[0] == u[0] * v[2] && u[0] * v[1] == u[1] * v[0] {
                return false;
            }
            for d in b + 1..k {
                if orient3d_i(pts[a], pts[b], pts[d], c) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Appends one point strictly inside the hull: the centroid, nudged by a
/// seeded offset of a fraction of the coordinate unit until the result is
/// in general position.
pub fn with_interior_point(set: &SpatialSet, seed: u64) -> Result<SpatialSet> {
    let n = set.len();
    if n < 4 {
        return Err(Error::TooFewPoints { needed: 4, n });
    }
    set.require_general_position()?;
    let count = int(n as i64);
    let centroid: Vec<Rational> = (0..3)
        .map(|k| set.points().iter().map(|p| p.coords()[k].clone()).sum::<Rational>() / &count)
        .collect();
    let mut rng = rng_for(seed, 3);
    for _ in 0..attempt_budget(n) {
        let offset = |rng: &mut ChaCha8Rng| ratio(rng.gen_range(-8..=8), 16 * n as i64);
        let p = SpatialPoint::new(
            &centroid[0] + offset(&mut rng),
            &centroid[1] + offset(&mut rng),
            &centroid[2] + offset(&mut rng),
        );
        let mut pts = set.points().to_vec();
        pts.push(p);
        let Ok(candidate) = SpatialSet::new(pts) else { continue };
        if !candidate.position_status().is_general() {
            continue;
        }
        if check_convex_position(&candidate)?.witness == Some(n) {
            return Ok(candidate);
        }
    }
    Err(Error::GenerationExhausted { attempts: attempt_budget(n) })
}

/// Unit-sphere positions of the four-chain construction before rounding.
///
/// Chain `C_p` lies on the arc `x^2 + z^2 = 1, y = 0, x > 0.99`, turned 45
/// degrees counterclockwise about the x axis; `C_q` and `C_r` are `C_p`
/// turned 120 and 240 degrees about the z axis; `C_s` lies on the arc
/// `x^2 + z^2 = 1, y = 0, z > 0.99`. Points are spread evenly inside each
/// arc window, end points excluded.
pub fn construction_positions(m: usize) -> Vec<[f64; 3]> {
    let window = 0.99f64.acos();
    let params: Vec<f64> = (0..m).map(|i| -window + 2.0 * window * (i + 1) as f64 / (m + 1) as f64).collect();
    let (s45, c45) = std::f64::consts::FRAC_PI_4.sin_cos();
    let chain_p: Vec<[f64; 3]> = params
        .iter()
        .map(|&t| {
            let (x, y, z) = (t.cos(), 0.0, t.sin());
            [x, y * c45 - z * s45, y * s45 + z * c45]
        })
        .collect();
    let turn = |p: [f64; 3], deg: f64| {
        let (s, c) = deg.to_radians().sin_cos();
        [p[0] * c - p[1] * s, p[0] * s + p[1] * c, p[2]]
    };
    let mut out = chain_p.clone();
    out.extend(chain_p.iter().map(|&p| turn(p, 120.0)));
    out.extend(chain_p.iter().map(|&p| turn(p, 240.0)));
    out.extend(params.iter().map(|&u| [u.sin(), 0.0, u.cos()]));
    out
}

/// Chain of each point in the construction: 0..3 for `C_p, C_q, C_r, C_s`.
pub fn construction_chain(index: usize, m: usize) -> usize {
    index / m
}

/// The four-chain construction on `n = 4m` points, rounded to the grid
/// `1/denominator`, nudged by seeded offsets of at most one grid unit, and
/// checked for general position, convex position and chain adjacency.
pub fn gen_paper_construction(m: usize, seed: u64, denominator: i64) -> Result<SpatialSet> {
    if m == 0 {
        return Err(Error::InvalidSpec("construction needs m >= 1".into()));
    }
    if !(1000..=1 << 40).contains(&denominator) {
        return Err(Error::InvalidSpec("denominator must lie in 1000..=2^40".into()));
    }
    let positions = construction_positions(m);
    let base: Vec<[i64; 3]> = positions.iter().map(|p| p.map(|c| (c * denominator as f64).round() as i64)).collect();
    let mut rng = rng_for(seed, 4);
    let budget = 64;
    for _ in 0..budget {
        let pts: Vec<SpatialPoint> = base
            .iter()
            .map(|b| {
                let c = b.map(|v| ratio(v + rng.gen_range(-1..=1), denominator));
                SpatialPoint::new(c[0].clone(), c[1].clone(), c[2].clone())
            })
            .collect();
        let Ok(set) = SpatialSet::new(pts) else { continue };
        if !set.position_status().is_general() {
            continue;
        }
        if let Some(w) = check_convex_position(&set)?.witness {
            return Err(Error::StructureLost(format!("point {w} is not a hull vertex")));
        }
        check_construction_structure(&set, m)?;
        return Ok(set);
    }
    Err(Error::GenerationExhausted { attempts: budget })
}

/// Adjacency facts the construction's hull must show: consecutive points of
/// each chain are hull neighbours, and an end point of `C_s` is adjacent to
/// every point of two of the other chains.
pub fn check_construction_structure(set: &SpatialSet, m: usize) -> Result<()> {
    if set.len() != 4 * m {
        return Err(Error::StructureLost(format!("expected {} points, found {}", 4 * m, set.len())));
    }
    if m == 1 {
        return Ok(());
    }
    let hull = convex_hull_3d(set)?;
    for chain in 0..4 {
        for i in 0..m - 1 {
            let (a, b) = (chain * m + i, chain * m + i + 1);
            if !hull.has_edge(a, b) {
                return Err(Error::StructureLost(format!("chain {chain}: points {a} and {b} are not adjacent")));
            }
        }
    }
    let ends = [3 * m, 4 * m - 1];
    let fan = ends.iter().any(|&s| {
        let full: Vec<usize> = (0..3).filter(|&c| (c * m..(c + 1) * m).all(|x| hull.has_edge(s, x))).collect();
        full.len() >= 2
    });
    if !fan {
        return Err(Error::StructureLost("no end point of C_s is adjacent to two whole chains".into()));
    }
    Ok(())
}
