use thiserror::Error;

use crate::poly::Poly;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{0}` is not bound")]
    UnboundParameter(String),
    #[error("denominator vanishes under the given bindings")]
    DenominatorVanishes,
    #[error("binding violates the assumption {0}")]
    AssumptionViolated(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of zero")]
    ZeroRadicand,
    #[error("square root of an expression that already contains a square root")]
    NestedSqrt,
    #[error("`{0}` is reserved for generators")]
    ReservedName(String),
    #[error("degree too small for this operation")]
    DegreeTooSmall,
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("expected {expected} slot maps, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("zero vector is not a point representative")]
    ZeroVector,
    #[error("input polynomial is zero")]
    ZeroInput,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("not a twisted superpotential")]
    NotTwistedSuperpotential,
    #[error("potential is not standard")]
    NotStandard,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("relations are linearly dependent")]
    DependentRelations,
    #[error("no twisted superpotential has these relations")]
    NoPotential,
    #[error("result depends on whether {} vanishes", .0)]
    CaseSplitRequired(Poly),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("terms of different degree ({left} and {right}) at byte {pos}")]
    MixedDegree {
        pos: usize,
        left: usize,
        right: usize,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("matrix entry {0} is not a scalar")]
    NonScalarEntry(usize),
    #[error("point is not on the component")]
    PointNotOnComponent,
    #[error("unknown type tag `{0}`")]
    UnknownType(String),
    #[error("invalid geometric pair: {0}")]
    InvalidPair(String),
    #[error("instances have different types")]
    TypeMismatch,
    #[error("invalid Mobius sequence: {0}")]
    InvalidSequence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
