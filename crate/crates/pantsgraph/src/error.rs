use thiserror::Error;

/// Errors surfaced by the public operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("slope 0/0 is not a valid slope")]
    ZeroSlope,
    #[error("intersection {0} exceeds the bound 8 required by the distance-2 witness")]
    IntersectionTooLarge(u64),
    #[error("surface S0.{0} has no essential curves (need at least 4 punctures)")]
    TooFewPunctures(u32),
    #[error("weight vector is not admissible: {0}")]
    NotAdmissible(String),
    #[error("curve is not essential")]
    NotEssential,
    #[error("curves lie on different surfaces")]
    SurfaceMismatch,
    #[error("expected {expected} curves for a pants decomposition, got {got}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("curves intersect (i = {0}) but must be disjoint")]
    IntersectingCurves(u64),
    #[error("repeated curve class in multicurve")]
    RepeatedCurve,
    #[error("piece has complexity {0}, expected complexity 1")]
    NotComplexityOne(usize),
    #[error("curve is not supported inside the requested piece")]
    OutsidePiece,
    #[error("pants decomposition does not contain the stratum multicurve")]
    OutsideStratum,
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("forgetful map must keep at least 4 punctures, got {0}")]
    TooFewKept(usize),
    #[error("arc configuration outside the seam-seam dichotomy; flagged for inspection")]
    OutsideDichotomy,
    #[error("geodesic enumeration exceeded the step cap (endpoints too deep)")]
    EnumerationTooDeep,
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
