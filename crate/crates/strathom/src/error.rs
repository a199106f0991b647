//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]; the variants are grouped
//! roughly by the layer that raises them (linear algebra, algebra
//! construction, module theory, derived machinery, certification, input
//! parsing).

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    // ---- linear algebra ----
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero in field arithmetic")]
    DivisionByZero,

    // ---- algebra construction ----
    #[error("multiplication table is not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("proposed unit fails the unit law at basis index {0}")]
    UnitLaw(usize),
    #[error("algebras must have dimension at least 1 (unital with 1 != 0)")]
    ZeroAlgebra,
    #[error("relation {relation:?}: arrows {first} and {second} do not compose")]
    NonComposableRelation {
        relation: String,
        first: String,
        second: String,
    },
    #[error("relation {0:?} has length {1}; only monomial relations of length >= 2 are supported")]
    RelationTooShort(String, usize),
    #[error("unknown vertex {0:?} in quiver data")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?} in quiver data")]
    UnknownArrow(String),
    #[error("duplicate name {0:?} in quiver data")]
    DuplicateName(String),
    #[error("path algebra is infinite-dimensional: the cycle {cycle:?} survives all relations")]
    InfiniteDimensional { cycle: String },
    #[error("element at index {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("the unit lies in the proposed proper ideal")]
    UnitInIdeal,
    #[error("set is not closed under the ideal operations: {0}")]
    NotAnIdeal(String),
    #[error("radical computation needs characteristic 0 or p > dim; got p = {p}, dim = {dim}")]
    UnsupportedField { p: u64, dim: usize },
    #[error("map is not multiplicative at basis pair ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("map does not send unit to unit")]
    NotUnital,
    #[error("operands belong to different algebras: {0}")]
    AlgebraMismatch(String),
    #[error("algebra carries no complete set of primitive idempotents; {0}")]
    MissingPrimitiveIdempotents(String),

    // ---- module theory ----
    #[error("module action violates {0}")]
    BadModuleAction(String),
    #[error("matrix does not intertwine the module actions (fails at algebra basis index {0})")]
    NotAModuleMap(usize),
    #[error("module is over the wrong ring: expected {expected}, got {got}")]
    WrongRing { expected: String, got: String },
    #[error("resolution truncated at depth {cutoff} before reaching degree {needed}")]
    IncompleteResolution { needed: usize, cutoff: usize },
    #[error("isomorphism test undetermined after {trials} randomized trials{grid}")]
    UndeterminedIsomorphism { trials: usize, grid: String },
    #[error("tilting check undetermined: {0}")]
    UndeterminedTilting(String),

    // ---- derived machinery ----
    #[error("differential does not square to zero between degrees {0} and {1}")]
    DifferentialSquare(i64, i64),
    #[error("chain map fails to commute with the differentials at degree {0}")]
    NotAChainMap(i64),
    #[error("lifting through the quasi-isomorphism failed; projective replacement is inconsistent")]
    LiftFailed,

    // ---- certification ----
    #[error("map is not surjective (rank {rank} < target dimension {dim})")]
    NotSurjective { rank: usize, dim: usize },
    #[error("map is not injective (kernel has dimension {0})")]
    NotInjective(usize),
    #[error("map is not a ring epimorphism: cokernel survives tensoring (dimension {0})")]
    NotRingEpi(usize),
    #[error("Tor_1(B, B) does not vanish (dimension {0})")]
    Tor1Nonzero(usize),
    #[error("restricted module has projective dimension {pd_bound}, which exceeds 1")]
    PdTooBig { pd_bound: String },
    #[error("cone is contractible, so the endomorphism ring would be the zero ring; the two rings coincide")]
    DegenerateCone,
    #[error("element is not idempotent")]
    NotIdempotentElement,
    #[error("chain maps from the cone to its shift by -1 do not vanish (dimension {0})")]
    ConeSelfHomBelowZero(usize),
    #[error("cannot decompose {0} into summands with local endomorphism rings")]
    UndecomposableSummand(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    // ---- input / CLI ----
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
