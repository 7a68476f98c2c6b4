//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("backend mismatch: {0}")]
    BackendMismatch(&'static str),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("degenerate metric")]
    DegenerateMetric,

    #[error("metric not symmetric at ({0}, {1})")]
    MetricNotSymmetric(usize, usize),

    #[error("structure constants not antisymmetric at ({0}, {1})")]
    ConstantsNotAntisymmetric(usize, usize),

    #[error("not a Lie algebra: Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),

    #[error("operands belong to different frames")]
    FrameMismatch,

    #[error("frame dimension {0} is not a positive multiple of 4")]
    NotQuaternionicDimension(usize),

    #[error("quaternionic relation {relation} violated at basis pair ({i}, {j})")]
    QuaternionicViolation {
        relation: &'static str,
        i: usize,
        j: usize,
    },

    #[error("metric compatibility with J{alpha} violated at basis pair ({i}, {j})")]
    CompatibilityViolation { alpha: usize, i: usize, j: usize },

    #[error("metric signature is ({p}, {q}), expected neutral ({expected}, {expected})")]
    SignatureViolation { p: usize, q: usize, expected: usize },

    #[error("vanishing flags {flags:?} contradict the two-imply-all rule")]
    VanishingInconsistency { flags: [bool; 6] },

    #[error(
        "cocalibration predicates disagree: polarized test {polarized}, three-form test {three_form}"
    )]
    CocalibratedDisagreement { polarized: bool, three_form: bool },

    #[error("all four structure parameters are zero")]
    ZeroLambda,

    #[error("instance generator gave up after {0} rejected draws")]
    GeneratorFailure(usize),

    #[error("torsion tensor is not totally skew-symmetric at ({0}, {1}, {2})")]
    NotSkewTorsion(usize, usize, usize),

    #[error("the set of structures to preserve is empty")]
    EmptyPreserve,

    #[error("invalid structure index {0}, expected 1, 2 or 3")]
    BadStructureIndex(usize),

    #[error("instance parse error: {0}")]
    Parse(String),
}
