//! Closed-form bounds and the per-set verification report.
//!
//! Every comparison here is exact. The one irrational quantity, the smaller
//! root of `3(j+1)n - 3(j+1)(j+2) = C(n, 2)`, is carried as `a + b*sqrt(c)`
//! and compared with integers by squaring.

use std::cmp::Ordering;
use std::fmt;
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::depth::{all_segment_depths, deepest, DepthAlgorithm, DepthHistogram};
use crate::error::{Error, Result};
use crate::exactgeom::{check_convex_position, int, ratio, Rational, SpatialSet};
use crate::facets::{build_facet_histogram, corollary_ej, max_in_range_j, welzl_entries, FacetHistogram};
use crate::hull::{convex_hull_3d, s1_analysis};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// `C(n, k)` for the small arguments used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// How the empirical value must relate to the formula value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    AtMost,
    AtLeast,
    Equal,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Equal => "==",
        }
    }

    pub fn classify(self, empirical: i64, formula: i64) -> Status {
        match (self, empirical.cmp(&formula)) {
            (_, Ordering::Equal) => Status::HoldsWithEquality,
            (Relation::AtMost, Ordering::Less) | (Relation::AtLeast, Ordering::Greater) => Status::HoldsStrictly,
            _ => Status::Violation,
        }
    }
}

/// Whether an entry checks a proven statement or a conjecture. A violated
/// theorem means a bug; a violated conjecture is a finding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Theorem,
    Conjecture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    HoldsWithEquality,
    HoldsStrictly,
    #[serde(rename = "VIOLATION")]
    Violation,
    OutOfRange,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::HoldsWithEquality => "holds-with-equality",
            Status::HoldsStrictly => "holds-strictly",
            Status::Violation => "VIOLATION",
            Status::OutOfRange => "out-of-range",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub j: Option<usize>,
    pub empirical: i64,
    /// `None` when the formula is not defined at this `j`.
    pub formula: Option<i64>,
    pub relation: Relation,
    pub claim: Claim,
    pub status: Status,
}

impl BoundEntry {
    pub fn check(name: &str, j: Option<usize>, empirical: i64, formula: i64, relation: Relation, claim: Claim) -> Self {
        Self {
            name: name.to_string(),
            j,
            empirical,
            formula: Some(formula),
            relation,
            claim,
            status: relation.classify(empirical, formula),
        }
    }

    pub fn out_of_range(name: &str, j: usize, empirical: i64) -> Self {
        Self {
            name: name.to_string(),
            j: Some(j),
            empirical,
            formula: None,
            relation: Relation::AtMost,
            claim: Claim::Theorem,
            status: Status::OutOfRange,
        }
    }

    /// `formula - empirical` for `<=`, `empirical - formula` for `>=`.
    pub fn margin(&self) -> Option<i64> {
        let f = self.formula?;
        Some(match self.relation {
            Relation::AtMost => f - self.empirical,
            Relation::AtLeast => self.empirical - f,
            Relation::Equal => -(self.empirical - f).abs(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema_version: u32,
    pub set_id: String,
    pub dimension: usize,
    pub n: usize,
    pub convex_position: Option<bool>,
    pub entries: Vec<BoundEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guarantee: Option<DepthGuarantee>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet_histogram: Option<FacetHistogram>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth_histogram: Option<DepthHistogram>,
}

impl BoundReport {
    pub fn new(set: &SpatialSet, convex_position: Option<bool>) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            set_id: crate::io::set_id(set),
            dimension: 3,
            n: set.len(),
            convex_position,
            entries: Vec::new(),
            guarantee: None,
            facet_histogram: None,
            depth_histogram: None,
        }
    }

    fn violations(&self, claim: Claim) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(move |e| e.claim == claim && e.status == Status::Violation)
    }

    pub fn has_theorem_violation(&self) -> bool {
        self.violations(Claim::Theorem).next().is_some()
    }

    pub fn has_conjecture_violation(&self) -> bool {
        self.violations(Claim::Conjecture).next().is_some()
    }

    pub fn theorem_violations(&self) -> Vec<&BoundEntry> {
        self.violations(Claim::Theorem).collect()
    }

    pub fn conjecture_violations(&self) -> Vec<&BoundEntry> {
        self.violations(Claim::Conjecture).collect()
    }

    pub fn entries_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a BoundEntry> + 'a {
        self.entries.iter().filter(move |e| e.name == name)
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let convex = match self.convex_position {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        };
        let _ = writeln!(out, "set {}  n={}  convex={}", self.set_id, self.n, convex);
        if let Some(g) = &self.guarantee {
            let _ = writeln!(out, "root j* = {}  in [{}, {}]  guarantee_floor = {}", g.root, g.root_floor, g.root_floor + 1, g.guarantee_floor);
        }
        let rows: Vec<[String; 7]> = self
            .entries
            .iter()
            .map(|e| {
                [
                    e.name.clone(),
                    e.j.map(|j| j.to_string()).unwrap_or_else(|| "-".into()),
                    e.empirical.to_string(),
                    if e.formula.is_some() { e.relation.symbol().to_string() } else { "-".into() },
                    e.formula.map(|f| f.to_string()).unwrap_or_else(|| "-".into()),
                    match e.claim {
                        Claim::Theorem => "theorem".into(),
                        Claim::Conjecture => "CONJECTURE".into(),
                    },
                    e.status.to_string(),
                ]
            })
            .collect();
        let header = ["check", "j", "empirical", "rel", "formula", "claim", "status"].map(String::from);
        let mut widths = header.each_ref().map(|h| h.len());
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        for r in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = r.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}

/// `3(j+1)n - 3(j+1)(j+2)`: at most this many segments have depth `<= j`
/// in a convex-position set.
pub fn prop_sj_bound(j: usize, n: usize) -> Result<u64> {
    if !max_in_range_j(n).is_some_and(|m| j <= m) {
        return Err(Error::OutOfRange { what: "prop_sj_bound", requirement: "0 <= 2j <= n-4", j, n });
    }
    let (n, j) = (n as u64, j as u64);
    Ok(3 * (j + 1) * n - 3 * (j + 1) * (j + 2))
}

/// An exact number `rational + coefficient * sqrt(radicand)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub rational: Rational,
    pub coefficient: Rational,
    pub radicand: Rational,
}

impl QuadraticSurd {
    pub fn new(rational: Rational, coefficient: Rational, radicand: Rational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        Self { rational, coefficient, radicand }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, k: &Rational) -> Ordering {
        let u = &self.rational - k;
        let b = &self.coefficient;
        if b.is_zero() || self.radicand.is_zero() {
            return u.cmp(&Rational::zero());
        }
        let sign_b = if b.is_positive() { Ordering::Greater } else { Ordering::Less };
        let sign_u = u.cmp(&Rational::zero());
        if sign_u == Ordering::Equal || sign_u == sign_b {
            return sign_b;
        }
        // opposite signs: the larger magnitude wins
        let lhs = &u * &u;
        let rhs = b * b * &self.radicand;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sign_u,
            Ordering::Less => sign_b,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn cmp_int(&self, k: i64) -> Ordering {
        self.cmp_rational(&int(k))
    }

    /// Only used to seed the exact floor search.
    fn approx(&self) -> f64 {
        let f = |r: &Rational| r.to_f64().unwrap_or(0.0);
        f(&self.rational) + f(&self.coefficient) * f(&self.radicand).sqrt()
    }

    /// Largest integer not above the value, found by exact comparisons.
    pub fn floor(&self) -> i64 {
        let mut k = self.approx().floor() as i64;
        while self.cmp_int(k) == Ordering::Less {
            k -= 1;
        }
        while self.cmp_int(k + 1) != Ordering::Less {
            k += 1;
        }
        k
    }

    pub fn ceil(&self) -> i64 {
        let f = self.floor();
        if self.cmp_int(f) == Ordering::Equal {
            f
        } else {
            f + 1
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |r: &Rational| -> String {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        let b = &self.coefficient;
        let sign = if b.is_negative() { "-" } else { "+" };
        let mag = b.abs();
        let coeff = if mag == int(1) { String::new() } else { format!("{}*", show(&mag)) };
        write!(f, "{} {} {}sqrt({})", show(&self.rational), sign, coeff, show(&self.radicand))
    }
}

/// Exact lower bound on the maximum segment depth of a convex-position set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthGuarantee {
    pub n: usize,
    /// The root `(n-3)/2 - sqrt(((n-2)^2 - 1)/12)`, printed exactly.
    pub root: String,
    pub root_floor: i64,
    /// Number of in-range `j` whose segment bound is below `C(n, 2)`; some
    /// segment must have at least this depth.
    pub guarantee_floor: usize,
}

pub fn depth_root(n: usize) -> QuadraticSurd {
    let n = n as i64;
    QuadraticSurd::new(ratio(n - 3, 2), int(-1), ratio((n - 2) * (n - 2) - 1, 12))
}

/// Exact guarantee for `n >= 4`; smaller sets get `0`.
pub fn depth_guarantee(n: usize) -> DepthGuarantee {
    let pairs = binomial(n as u64, 2);
    let guarantee_floor = match max_in_range_j(n) {
        Some(m) => (0..=m).take_while(|&j| prop_sj_bound(j, n).is_ok_and(|b| b < pairs)).count(),
        None => 0,
    };
    let root = depth_root(n.max(3));
    DepthGuarantee { n, root: root.to_string(), root_floor: root.floor(), guarantee_floor }
}

/// `floor((1/2 - 1/sqrt(12)) n)`, exactly.
pub fn asymptotic_floor(n: usize) -> i64 {
    let n = n as i64;
    QuadraticSurd::new(ratio(n, 2), int(-n), ratio(1, 12)).floor()
}

/// `3n - 8j - 6`, conjectured maximum number of depth-`j` segments in
/// convex position, for `0 <= j <= ceil(n/4) - 1`. May be negative.
pub fn conj2_bound(j: usize, n: usize) -> Result<i64> {
    if j + 1 > n.div_ceil(4) {
        return Err(Error::OutOfRange { what: "conj2_bound", requirement: "0 <= j <= ceil(n/4)-1", j, n });
    }
    Ok(3 * n as i64 - 8 * j as i64 - 6)
}

/// Largest `j` covered by [`conj2_bound`].
pub fn conj2_max_j(n: usize) -> Option<usize> {
    n.div_ceil(4).checked_sub(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conj3Threshold {
    pub pair_count: u64,
    pub depth_threshold: i64,
    /// `sum_{j=0}^{floor(n/4)-2} (3n - 8j - 6)`
    pub derivation_lhs: i64,
    /// `C(n, 2) - (n + 2)`
    pub derivation_rhs: i64,
}

impl Conj3Threshold {
    pub fn derivation_holds(&self) -> bool {
        self.derivation_lhs <= self.derivation_rhs
    }
}

/// `(n + 2, floor(n/4) - 1)` together with the counting inequality that
/// links it to the depth conjecture.
pub fn conj3_threshold(n: usize) -> Result<Conj3Threshold> {
    if n < 4 {
        return Err(Error::TooFewPoints { needed: 4, n });
    }
    let ni = n as i64;
    let top = ni / 4 - 2;
    let derivation_lhs = (0..=top).map(|j| 3 * ni - 8 * j - 6).sum();
    Ok(Conj3Threshold {
        pair_count: n as u64 + 2,
        depth_threshold: ni / 4 - 1,
        derivation_lhs,
        derivation_rhs: binomial(n as u64, 2) as i64 - (ni + 2),
    })
}

/// Runs every check that applies to the set and collects them in one report.
///
/// Theorem entries that need convex position (the `e_j` formula, the
/// segment bound, the depth guarantee, the `s_1` analysis) and the two
/// conjecture checks are only emitted for convex-position sets.
pub fn verify_set(set: &SpatialSet) -> Result<BoundReport> {
    set.require_general_position()?;
    let n = set.len();
    let convex = check_convex_position(set)?.convex;
    let (facets, depths) = rayon::join(
        || build_facet_histogram(set),
        || all_segment_depths(set, DepthAlgorithm::Sweep),
    );
    let facets = facets?;
    let (records, depths) = depths?;

    let mut report = BoundReport::new(set, Some(convex));
    report.entries.extend(welzl_entries(&facets, convex));

    let in_range: Vec<usize> = max_in_range_j(n).map(|m| (0..=m).collect()).unwrap_or_default();
    if convex {
        for &j in &in_range {
            let f = corollary_ej(j, n)? as i64;
            report
                .entries
                .push(BoundEntry::check("corollary-e_j", Some(j), facets.e_j(j) as i64, f, Relation::Equal, Claim::Theorem));
        }
        for &j in &in_range {
            let f = prop_sj_bound(j, n)? as i64;
            report.entries.push(BoundEntry::check(
                "prop-S_j",
                Some(j),
                depths.cumulative_j(j) as i64,
                f,
                Relation::AtMost,
                Claim::Theorem,
            ));
        }
    }
    for &j in &in_range {
        report.entries.push(BoundEntry::check(
            "two-S_j-vs-three-e_j",
            Some(j),
            2 * depths.cumulative_j(j) as i64,
            3 * facets.e_j(j) as i64,
            Relation::AtMost,
            Claim::Theorem,
        ));
    }
    report.entries.push(BoundEntry::check(
        "segment-total",
        None,
        depths.total() as i64,
        binomial(n as u64, 2) as i64,
        Relation::Equal,
        Claim::Theorem,
    ));
    if n >= 4 {
        let hull_edges = convex_hull_3d(set)?.edges.len() as i64;
        report.entries.push(BoundEntry::check(
            "depth-zero-hull-edges",
            None,
            depths.s_j(0) as i64,
            hull_edges,
            Relation::Equal,
            Claim::Theorem,
        ));
    }

    if convex && n >= 4 {
        let guarantee = depth_guarantee(n);
        let max_depth = deepest(&records).map(|r| r.depth).unwrap_or(0);
        report.entries.push(BoundEntry::check(
            "max-depth-guarantee",
            None,
            max_depth as i64,
            guarantee.guarantee_floor as i64,
            Relation::AtLeast,
            Claim::Theorem,
        ));
        report.guarantee = Some(guarantee);

        report.entries.extend(s1_analysis(set)?.entries());

        for j in 0..=conj2_max_j(n).unwrap_or(0) {
            report.entries.push(BoundEntry::check(
                "conj2-s_j",
                Some(j),
                depths.s_j(j) as i64,
                conj2_bound(j, n)?,
                Relation::AtMost,
                Claim::Conjecture,
            ));
        }
        let threshold = conj3_threshold(n)?;
        let deep_pairs = depths.at_least(threshold.depth_threshold.max(0) as usize) as i64;
        report.entries.push(BoundEntry::check(
            "conj3-pairs",
            None,
            deep_pairs,
            threshold.pair_count as i64,
            Relation::AtLeast,
            Claim::Conjecture,
        ));
    }
    report.facet_histogram = Some(facets);
    report.depth_histogram = Some(depths);
    Ok(report)
}
