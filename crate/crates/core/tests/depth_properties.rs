//! Structural properties of segment depth, j-facets and deletion hulls on
//! generated sets.

use proptest::prelude::*;
use segdepth_core::depth::{all_segment_depths, segment_depth_bruteforce, segment_depth_sweep, DepthAlgorithm};
use segdepth_core::exactgeom::{check_convex_position, int, Rational, Sign, SpatialPoint, SpatialSet};
use segdepth_core::facets::{build_facet_histogram, facets_on_segment, max_in_range_j, welzl_bound};
use segdepth_core::generators::{gen_convex_3d, gen_paper_construction, with_interior_point, ConvexMode, DEFAULT_DENOMINATOR, DEFAULT_GRID};
use segdepth_core::hull::{convex_hull_3d, depth_one_segments, s1_analysis};

fn convex_set(n: usize, seed: u64) -> SpatialSet {
    let mode = if seed.is_multiple_of(2) { ConvexMode::Lifted } else { ConvexMode::Sphere };
    gen_convex_3d(n, seed, mode, DEFAULT_GRID).unwrap()
}

fn dot(a: [&Rational; 3], b: &[Rational; 3]) -> Rational {
    a[0] * &b[0] + a[1] * &b[1] + a[2] * &b[2]
}

fn sub(a: &SpatialPoint, b: &SpatialPoint) -> [Rational; 3] {
    [&a.x - &b.x, &a.y - &b.y, &a.z - &b.z]
}

fn cross(u: &[Rational; 3], v: &[Rational; 3]) -> [Rational; 3] {
    [&u[1] * &v[2] - &u[2] * &v[1], &u[2] * &v[0] - &u[0] * &v[2], &u[0] * &v[1] - &u[1] * &v[0]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sweep_matches_bruteforce(n in 4usize..22, seed in 0u64..1_000_000) {
        let set = convex_set(n, seed);
        let (sweep, _) = all_segment_depths(&set, DepthAlgorithm::Sweep).unwrap();
        let (brute, _) = all_segment_depths(&set, DepthAlgorithm::BruteForce).unwrap();
        for (a, b) in sweep.iter().zip(&brute) {
            prop_assert_eq!(a.pair, b.pair);
            prop_assert_eq!(a.depth, b.depth);
        }
    }

    #[test]
    fn histogram_is_symmetric_and_complete(n in 4usize..20, seed in 0u64..1_000_000) {
        let set = convex_set(n, seed);
        let h = build_facet_histogram(&set).unwrap();
        prop_assert_eq!(h.total(), 2 * (n * (n - 1) * (n - 2) / 6) as u64);
        for j in 0..h.e.len() {
            prop_assert_eq!(h.e[j], h.e[n - 3 - j]);
        }
        prop_assert!(h.cumulative.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn witness_plane_realises_the_depth(n in 4usize..18, seed in 0u64..1_000_000) {
        let set = convex_set(n, seed);
        for p in 0..n {
            for q in p + 1..n {
                for rec in [segment_depth_sweep(p, q, &set).unwrap(), segment_depth_bruteforce(p, q, &set).unwrap()] {
                    let r = rec.witness.unwrap();
                    let pos = (0..n).filter(|&s| ![p, q, r].contains(&s) && set.orient3d(p, q, r, s) == Sign::Positive).count();
                    prop_assert_eq!(pos.min(n - 3 - pos), rec.depth);
                    prop_assert!(rec.depth <= (n - 2) / 2);
                }
            }
        }
    }
}

#[test]
fn generic_planes_never_beat_third_point_planes() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for seed in 0..6 {
        let set = convex_set(9 + seed as usize, seed);
        let n = set.len();
        for p in 0..n {
            for q in p + 1..n {
                let depth = segment_depth_bruteforce(p, q, &set).unwrap().depth;
                let axis = sub(set.point(q), set.point(p));
                for _ in 0..40 {
                    let w = [int(rng.gen_range(-1000..1000)), int(rng.gen_range(-1000..1000)), int(rng.gen_range(-1000..1000))];
                    let normal = cross(&axis, &w);
                    let (mut pos, mut neg) = (0, 0);
                    for s in (0..n).filter(|&s| s != p && s != q) {
                        let v = sub(set.point(s), set.point(p));
                        match Sign::of(&dot([&v[0], &v[1], &v[2]], &normal)) {
                            Sign::Positive => pos += 1,
                            Sign::Negative => neg += 1,
                            Sign::Zero => {}
                        }
                    }
                    if pos + neg == n - 2 {
                        assert!(pos.min(neg) >= depth, "generic plane beat the candidate minimum");
                    }
                }
            }
        }
    }
}

#[test]
fn depth_zero_iff_hull_edge() {
    for seed in 0..6 {
        let set = convex_set(14, seed);
        let hull = convex_hull_3d(&set).unwrap();
        let (records, hist) = all_segment_depths(&set, DepthAlgorithm::Sweep).unwrap();
        for r in &records {
            assert_eq!(r.depth == 0, hull.has_edge(r.pair.0, r.pair.1), "pair {:?}", r.pair);
        }
        assert_eq!(hist.s[0] as usize, hull.edges.len());
        assert_eq!(hist.s[0] as usize, 3 * 14 - 6);
    }
    // non-convex sets too
    let set = with_interior_point(&convex_set(11, 4), 4).unwrap();
    let hull = convex_hull_3d(&set).unwrap();
    let (records, _) = all_segment_depths(&set, DepthAlgorithm::BruteForce).unwrap();
    for r in &records {
        assert_eq!(r.depth == 0, hull.has_edge(r.pair.0, r.pair.1));
    }
}

#[test]
fn segments_of_depth_at_most_j_lie_in_two_j_facets() {
    for seed in 0..5 {
        let n = 12 + 2 * seed as usize;
        let set = convex_set(n, seed);
        let (records, _) = all_segment_depths(&set, DepthAlgorithm::Sweep).unwrap();
        for j in 0..=max_in_range_j(n).unwrap() {
            for r in records.iter().filter(|r| r.depth <= j) {
                let k = facets_on_segment(&set, r.pair.0, r.pair.1, j).unwrap();
                assert!(k >= 2, "n={n} j={j} pair={:?} in {k} j-facets", r.pair);
            }
        }
    }
}

#[test]
fn depth_is_affine_invariant() {
    // integer matrix with determinant -1 plus a translation
    let m = [[2i64, 1, 0], [1, 1, 1], [0, 1, 0]];
    let t = [17i64, -4, 9];
    for seed in 0..4 {
        let set = convex_set(12, seed);
        let moved: Vec<SpatialPoint> = set
            .points()
            .iter()
            .map(|p| {
                let c = p.coords();
                let row = |k: usize| int(m[k][0]) * c[0] + int(m[k][1]) * c[1] + int(m[k][2]) * c[2] + int(t[k]);
                SpatialPoint::new(row(0), row(1), row(2))
            })
            .collect();
        let moved = SpatialSet::new(moved).unwrap();
        let (a, _) = all_segment_depths(&set, DepthAlgorithm::Sweep).unwrap();
        let (b, _) = all_segment_depths(&moved, DepthAlgorithm::Sweep).unwrap();
        assert!(a.iter().zip(&b).all(|(x, y)| x.depth == y.depth));
    }
}

#[test]
fn welzl_tight_iff_convex() {
    for seed in 0..6 {
        let n = 8 + 3 * seed as usize;
        let convex = convex_set(n, seed);
        let h = build_facet_histogram(&convex).unwrap();
        for j in 0..=max_in_range_j(n).unwrap() {
            assert_eq!(h.cumulative[j], welzl_bound(j, n).unwrap());
        }
        let inner = with_interior_point(&convex_set(n - 1, seed), seed).unwrap();
        assert!(!check_convex_position(&inner).unwrap().convex);
        let h = build_facet_histogram(&inner).unwrap();
        let strict = (0..=max_in_range_j(n).unwrap())
            .filter(|&j| h.cumulative[j] < welzl_bound(j, n).unwrap())
            .count();
        assert!(strict >= 1);
        assert!((0..=max_in_range_j(n).unwrap()).all(|j| h.cumulative[j] <= welzl_bound(j, n).unwrap()));
    }
}

#[test]
fn deletion_hulls_characterise_depth_one() {
    for seed in 0..5 {
        let n = 8 + 3 * seed as usize;
        let set = convex_set(n, seed);
        let (records, _) = all_segment_depths(&set, DepthAlgorithm::Sweep).unwrap();
        let depth_one: Vec<(usize, usize)> = records.iter().filter(|r| r.depth == 1).map(|r| r.pair).collect();
        let generated = depth_one_segments(&set).unwrap();
        let pairs: Vec<(usize, usize)> = generated.iter().map(|s| s.pair).collect();
        assert_eq!(pairs, depth_one);
        assert!(generated.iter().all(|s| (1..=2).contains(&s.generators.len())));
        let a = s1_analysis(&set).unwrap();
        assert_eq!(a.degree_excess, 3 * n as i64 - 12);
        assert_eq!((a.s1 + a.doubly_generated) as i64, 3 * n as i64 - 12);
    }
}

#[test]
fn construction_attains_three_n_minus_eight_j_minus_six() {
    for m in 2..=4 {
        let n = 4 * m;
        let set = gen_paper_construction(m, 7, DEFAULT_DENOMINATOR).unwrap();
        let (_, hist) = all_segment_depths(&set, DepthAlgorithm::BruteForce).unwrap();
        for j in 0..m {
            assert_eq!(hist.s_j(j) as i64, 3 * n as i64 - 8 * j as i64 - 6, "m={m} j={j}");
        }
        assert_eq!(hist.total() as usize, n * (n - 1) / 2);
    }
}
