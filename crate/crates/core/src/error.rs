use thiserror::Error;

use crate::matroid::MatroidReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Syntax(String),
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(usize),
    #[error("duplicate {kind} label {label:?}")]
    DuplicateLabel { kind: &'static str, label: String },
    #[error("incidence ({point:?}, {hyperplane:?}) references an unknown {missing}")]
    DanglingReference {
        point: String,
        hyperplane: String,
        missing: &'static str,
    },
    #[error("duplicate incidence ({point:?}, {hyperplane:?})")]
    DuplicateIncidence { point: String, hyperplane: String },
    #[error("incidence ({point:?}, {hyperplane:?}) is not part of the geometry")]
    IncidenceNotInGeometry { point: String, hyperplane: String },
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("unknown hyperplane {0:?}")]
    UnknownHyperplane(String),
    #[error("no normal assigned to hyperplane {0:?}")]
    MissingNormal(String),
    #[error("hyperplane {0:?} has the zero normal")]
    ZeroNormal(String),
    #[error("no coordinates for point {0:?}")]
    MissingCoordinate(String),
    #[error("{what} {label:?} has {found} entries, expected {expected}")]
    WrongArity {
        what: &'static str,
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("the points incident to hyperplane {0:?} are not collinear")]
    NotCollinear(String),
    #[error("hyperplane {0:?} has fewer than two distinct incident points")]
    Underdetermined(String),
    #[error("{op} is only available in dimension {supported}, got {d}")]
    UnsupportedDimension {
        op: &'static str,
        supported: usize,
        d: usize,
    },
    #[error("the zero polynomial has no canonical form")]
    ZeroPolynomial,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} is not a prime modulus below 2^32")]
    NotPrime(u64),
    #[error("matrix is already pinned at {0:?}")]
    AlreadyPinned(String),
    #[error("geometry is not a basis of the {}-plane matroid", .0.d)]
    NotBasis(Box<MatroidReport>),
    #[error("geometry is not overconstrained: |I| = {incidences} <= {bound}")]
    NotOverconstrained { incidences: usize, bound: usize },
    #[error("subduction failed: {0}")]
    SubductionFailure(String),
    #[error("bracket expression: {0}")]
    BracketSyntax(String),
    #[error("bracket {0} must have exactly {1} labels")]
    BracketArity(String, usize),
    #[error("realization violates incidence ({point:?}, {hyperplane:?})")]
    IncidenceViolated { point: String, hyperplane: String },
    #[error("vector length {found} does not match {expected} columns")]
    LengthMismatch { expected: usize, found: usize },
}
