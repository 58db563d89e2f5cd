use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown lattice name `{0}`")]
    UnknownLattice(String),
    #[error("not a sublattice: {0}")]
    NotSublattice(String),
    #[error("infinite index: sublattice has rank {sub} inside rank {full}")]
    InfiniteIndex { sub: usize, full: usize },
    #[error("coset is not D+a2 or D-a2")]
    NotSplittableCoset,
    #[error("membership criteria disagree on {0}")]
    InconsistentMembership(String),
    #[error("point {0} lies outside the lattice")]
    PointOutsideLattice(String),
    #[error("non-integral pairing <{beta}, {point}> in exponential mode")]
    NonIntegralPairing { beta: String, point: String },
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("expected weight {expected}, found {found}")]
    WrongWeight { expected: String, found: String },
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("not conformal: {0}")]
    NotConformal(String),
    #[error("sign character is ill-defined on {0}")]
    IllDefinedSign(String),
    #[error("automorphism is not an involution on {0}")]
    NotInvolution(String),
    #[error("generator images do not preserve the weight-one {0}")]
    NotLieAutomorphism(String),
    #[error("isometry does not act on this Heisenberg frame")]
    UnsupportedIsometry,
    #[error("label out of range: {0}")]
    LabelOutOfRange(String),
    #[error("exponent {0} not representable with denominator {1}")]
    ExponentDenominator(String, i64),
    #[error("joint action not diagonalizable at weight {weight}: {detail}")]
    NotDiagonalizable { weight: String, detail: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
