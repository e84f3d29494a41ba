//! Incremental 3D convex hull with exact orientation tests, hull degrees and
//! the deletion-hull analysis of depth-one segments.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundEntry, BoundReport, Claim, Relation};
use crate::depth::{all_segment_depths, DepthAlgorithm};
use crate::error::{Error, Result};
use crate::exactgeom::{check_convex_position, Sign, SpatialSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullEdge {
    pub pair: (usize, usize),
    /// Facet indices: the facet traversing `pair.0 -> pair.1`, then the one
    /// traversing `pair.1 -> pair.0`.
    pub facets: [usize; 2],
}

/// Combinatorial hull. Facets are outward oriented: every other point of the
/// set lies on the negative side of each facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullGraph {
    pub n: usize,
    pub vertices: Vec<usize>,
    pub facets: Vec<[usize; 3]>,
    pub edges: Vec<HullEdge>,
    /// Number of hull neighbours per point index; zero off the hull.
    pub degree: Vec<usize>,
}

impl HullGraph {
    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| e.pair).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search_by(|e| e.pair.cmp(&key)).is_ok()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|e| match e.pair {
                (a, b) if a == v => Some(b),
                (a, b) if b == v => Some(a),
                _ => None,
            })
            .collect()
    }

    /// Line-oriented text dump: a header, then `v`, `e` and `f` records.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# hull n={} vertices={} edges={} facets={}",
            self.n,
            self.vertices.len(),
            self.edges.len(),
            self.facets.len()
        );
        for &v in &self.vertices {
            let _ = writeln!(out, "v {} {}", v, self.degree[v]);
        }
        for e in &self.edges {
            let _ = writeln!(out, "e {} {} {} {}", e.pair.0, e.pair.1, e.facets[0], e.facets[1]);
        }
        for f in &self.facets {
            let _ = writeln!(out, "f {} {} {}", f[0], f[1], f[2]);
        }
        out
    }
}

/// Hull of the whole set.
pub fn convex_hull_3d(set: &SpatialSet) -> Result<HullGraph> {
    let all: Vec<usize> = (0..set.len()).collect();
    convex_hull_of(set, &all)
}

/// Hull of the listed points; indices in the result refer to `set`.
pub fn convex_hull_of(set: &SpatialSet, indices: &[usize]) -> Result<HullGraph> {
    set.require_general_position()?;
    if indices.len() < 4 {
        return Err(Error::TooFewPoints { needed: 4, n: indices.len() });
    }
    for &i in indices {
        crate::exactgeom::check_index(i, set.len())?;
    }
    let (a, b, c, d) = (indices[0], indices[1], indices[2], indices[3]);
    let mut facets: Vec<[usize; 3]> = Vec::new();
    for (tri, apex) in [([a, b, c], d), ([a, b, d], c), ([a, c, d], b), ([b, c, d], a)] {
        match set.orient3d(tri[0], tri[1], tri[2], apex) {
            Sign::Negative => facets.push(tri),
            Sign::Positive => facets.push([tri[0], tri[2], tri[1]]),
            Sign::Zero => {
                let mut w = vec![a, b, c, d];
                w.sort_unstable();
                return Err(Error::Degenerate { kind: crate::error::Degeneracy::Coplanar, witness: w });
            }
        }
    }

    for &p in &indices[4..] {
        let visible: Vec<bool> = facets.iter().map(|f| set.orient3d(f[0], f[1], f[2], p) == Sign::Positive).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let visible_edges: HashSet<(usize, usize)> = facets
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| v)
            .flat_map(|(f, _)| [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])])
            .collect();
        let mut next: Vec<[usize; 3]> = facets
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| *f)
            .collect();
        // horizon edges keep their orientation in the new cone facets
        let mut horizon: Vec<(usize, usize)> =
            visible_edges.iter().filter(|&&(u, v)| !visible_edges.contains(&(v, u))).copied().collect();
        horizon.sort_unstable();
        next.extend(horizon.into_iter().map(|(u, v)| [u, v, p]));
        facets = next;
    }

    Ok(assemble(set.len(), facets))
}

fn canonical(f: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&i| f[i]).unwrap_or(0);
    [f[k], f[(k + 1) % 3], f[(k + 2) % 3]]
}

fn assemble(n: usize, facets: Vec<[usize; 3]>) -> HullGraph {
    let mut facets: Vec<[usize; 3]> = facets.into_iter().map(canonical).collect();
    facets.sort_unstable();
    let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for k in 0..3 {
            directed.insert((f[k], f[(k + 1) % 3]), fi);
        }
    }
    let mut edges: Vec<HullEdge> = directed
        .iter()
        .filter(|(&(u, v), _)| u < v)
        .map(|(&(u, v), &fi)| HullEdge { pair: (u, v), facets: [fi, directed[&(v, u)]] })
        .collect();
    edges.sort_unstable_by_key(|e| e.pair);
    let mut degree = vec![0; n];
    for e in &edges {
        degree[e.pair.0] += 1;
        degree[e.pair.1] += 1;
    }
    let vertices = (0..n).filter(|&v| degree[v] > 0).collect();
    HullGraph { n, vertices, facets, edges, degree }
}

/// A segment of depth one with every point whose deletion exposes it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthOneSegment {
    pub pair: (usize, usize),
    pub generators: Vec<usize>,
}

fn require_convex(set: &SpatialSet) -> Result<()> {
    let status = check_convex_position(set)?;
    match status.witness {
        Some(w) => Err(Error::NotConvexPosition { witness: w }),
        None => Ok(()),
    }
}

/// Non-hull segments that become hull edges once one point is deleted,
/// each listed with all the deleted points that expose it.
pub fn depth_one_segments(set: &SpatialSet) -> Result<Vec<DepthOneSegment>> {
    require_convex(set)?;
    let n = set.len();
    if n < 5 {
        return Ok(Vec::new());
    }
    let hull_edges = convex_hull_3d(set)?.edge_set();
    // (deleted point, hull edges that appear once it is gone)
    type NewEdges = (usize, Vec<(usize, usize)>);
    let per_deletion: Vec<Result<NewEdges>> = (0..n)
        .into_par_iter()
        .map(|p| {
            let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            let sub = convex_hull_of(set, &rest)?;
            Ok((p, sub.edge_set().difference(&hull_edges).copied().collect()))
        })
        .collect();
    let mut generated: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for item in per_deletion {
        let (p, new_edges) = item?;
        for e in new_edges {
            generated.entry(e).or_default().push(p);
        }
    }
    Ok(generated
        .into_iter()
        .map(|(pair, generators)| DepthOneSegment { pair, generators })
        .collect())
}

/// The quantities behind the `s_1 <= 3n - 12` bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct S1Analysis {
    pub n: usize,
    /// Depth-one segments counted by the depth computation.
    pub s1: usize,
    /// Depth-one segments found by deletion hulls.
    pub generated_segments: usize,
    /// `sum over p of (deg(p) - 3)`.
    pub degree_excess: i64,
    pub doubly_generated: usize,
    pub max_generators: usize,
}

impl S1Analysis {
    pub fn bound(&self) -> i64 {
        3 * self.n as i64 - 12
    }

    pub fn entries(&self) -> Vec<BoundEntry> {
        vec![
            BoundEntry::check("s1-upper-bound", None, self.s1 as i64, self.bound(), Relation::AtMost, Claim::Theorem),
            BoundEntry::check(
                "degree-excess-sum",
                None,
                self.degree_excess,
                self.bound(),
                Relation::Equal,
                Claim::Theorem,
            ),
            BoundEntry::check(
                "s1-plus-doubly-generated",
                None,
                (self.s1 + self.doubly_generated) as i64,
                self.degree_excess,
                Relation::Equal,
                Claim::Theorem,
            ),
            BoundEntry::check(
                "depth-one-characterisation",
                None,
                self.generated_segments as i64,
                self.s1 as i64,
                Relation::Equal,
                Claim::Theorem,
            ),
            BoundEntry::check(
                "generators-per-segment",
                None,
                self.max_generators as i64,
                2,
                Relation::AtMost,
                Claim::Theorem,
            ),
        ]
    }
}

pub fn s1_analysis(set: &SpatialSet) -> Result<S1Analysis> {
    require_convex(set)?;
    let n = set.len();
    if n < 4 {
        return Err(Error::TooFewPoints { needed: 4, n });
    }
    let hull = convex_hull_3d(set)?;
    let (_, hist) = all_segment_depths(set, DepthAlgorithm::Sweep)?;
    let segments = depth_one_segments(set)?;
    let degree_excess = hull.degree.iter().map(|&d| d as i64 - 3).sum();
    Ok(S1Analysis {
        n,
        s1: hist.s.get(1).copied().unwrap_or(0) as usize,
        generated_segments: segments.len(),
        degree_excess,
        doubly_generated: segments.iter().filter(|s| s.generators.len() == 2).count(),
        max_generators: segments.iter().map(|s| s.generators.len()).max().unwrap_or(0),
    })
}

/// Report comparing `s_1` against `3n - 12` and the exact refinement
/// `s_1 + #doubly generated = sum (deg(p) - 3)`.
pub fn s1_bound_report(set: &SpatialSet) -> Result<BoundReport> {
    let analysis = s1_analysis(set)?;
    let mut report = BoundReport::new(set, Some(true));
    report.entries.extend(analysis.entries());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex() -> SpatialSet {
        SpatialSet::from_ints(&[(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4)]).unwrap()
    }

    fn octahedron_like() -> SpatialSet {
        SpatialSet::from_ints(&[(10, 1, 0), (-10, 0, 2), (1, 10, -1), (0, -10, 1), (2, -1, 10), (-1, 2, -10)])
            .unwrap()
    }

    fn assert_outward(set: &SpatialSet, hull: &HullGraph) {
        for f in &hull.facets {
            for x in 0..set.len() {
                if !f.contains(&x) {
                    assert_eq!(set.orient3d(f[0], f[1], f[2], x), Sign::Negative, "facet {f:?} point {x}");
                }
            }
        }
    }

    #[test]
    fn simplex_hull() {
        let s = simplex();
        let h = convex_hull_3d(&s).unwrap();
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.edges.len(), 6);
        assert!(h.degree.iter().all(|&d| d == 3));
        assert_outward(&s, &h);
    }

    #[test]
    fn centroid_is_not_a_vertex() {
        let s = SpatialSet::from_ints(&[(0, 0, 0), (4, 0, 0), (1, 1, 1), (0, 4, 0), (0, 0, 4)]).unwrap();
        let h = convex_hull_3d(&s).unwrap();
        assert_eq!(h.vertices, vec![0, 1, 3, 4]);
        assert_eq!(h.degree[2], 0);
        assert_outward(&s, &h);
    }

    #[test]
    fn euler_counts_and_degree_sum() {
        let s = octahedron_like();
        let h = convex_hull_3d(&s).unwrap();
        assert_eq!(h.vertices.len(), 6);
        assert_eq!(h.facets.len(), 2 * 6 - 4);
        assert_eq!(h.edges.len(), 3 * 6 - 6);
        assert_eq!(h.degree.iter().sum::<usize>(), 2 * h.edges.len());
        assert_outward(&s, &h);
        for e in &h.edges {
            let [f, g] = e.facets;
            assert!(h.facets[f].contains(&e.pair.0) && h.facets[f].contains(&e.pair.1));
            assert!(h.facets[g].contains(&e.pair.0) && h.facets[g].contains(&e.pair.1));
            assert_ne!(f, g);
        }
    }

    #[test]
    fn octahedron_degree_excess() {
        let a = s1_analysis(&octahedron_like()).unwrap();
        assert_eq!(a.degree_excess, 6);
        assert_eq!(a.s1 + a.doubly_generated, 6);
        assert!(a.max_generators <= 2);
    }

    #[test]
    fn not_convex_rejected() {
        let s = SpatialSet::from_ints(&[(0, 0, 0), (4, 0, 0), (1, 1, 1), (0, 4, 0), (0, 0, 4)]).unwrap();
        assert_eq!(depth_one_segments(&s), Err(Error::NotConvexPosition { witness: 2 }));
    }

    #[test]
    fn text_dump_has_all_records() {
        let text = convex_hull_3d(&simplex()).unwrap().to_text();
        assert!(text.starts_with("# hull n=4 vertices=4 edges=6 facets=4\n"));
        assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 6);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 4);
    }
}
