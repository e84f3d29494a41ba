use thiserror::Error;

/// Kind of coincidence that breaks general position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Degeneracy {
    Collinear,
    Cocircular,
    Coplanar,
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Degeneracy::Collinear => "collinear",
            Degeneracy::Cocircular => "cocircular",
            Degeneracy::Coplanar => "coplanar",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate-circle: the three defining points are collinear")]
    DegenerateCircle,
    #[error("degenerate position: points {witness:?} are {kind}")]
    Degenerate {
        kind: Degeneracy,
        witness: Vec<usize>,
    },
    #[error("duplicate point: indices {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("collinear-with-axis: point {point} lies on the line through {p} and {q}")]
    CollinearWithAxis { p: usize, q: usize, point: usize },
    #[error("out-of-range: {what} needs {requirement}, got j={j}, n={n}")]
    OutOfRange {
        what: &'static str,
        requirement: &'static str,
        j: usize,
        n: usize,
    },
    #[error("not-convex-position: point {witness} is not a vertex of the convex hull")]
    NotConvexPosition { witness: usize },
    #[error("generation-exhausted: gave up after {attempts} rejected candidates")]
    GenerationExhausted { attempts: usize },
    #[error("structure-lost: {0} (increase the denominator)")]
    StructureLost(String),
    #[error("index {index} out of bounds for a set of {n} points")]
    IndexOutOfBounds { index: usize, n: usize },
    #[error("index {0} was repeated where distinct indices are required")]
    RepeatedIndex(usize),
    #[error("operation needs at least {needed} points, set has {n}")]
    TooFewPoints { needed: usize, n: usize },
    #[error("expected a {expected}-dimensional point set, found dimension {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
