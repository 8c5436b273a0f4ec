use thiserror::Error;

use crate::parse::ParseError;
use crate::poly::Polynomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands live in different variable contexts")]
    ContextMismatch,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown term order `{0}` (expected lex or grevlex)")]
    UnknownOrder(String),
    #[error("variable priority {0:?} is not a permutation")]
    InvalidPriority(Vec<usize>),
    #[error("relations generate the unit ideal: the ring is zero")]
    ZeroRing,
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("derivation is not well defined: relation {relation} maps to nonzero residue {residue}")]
    NotWellDefined { relation: Polynomial, residue: Polynomial },
    #[error("{r} is not a local slice: D({r}) = {image}")]
    NotLocalSlice { r: String, image: String },
    #[error("{s} is not a slice: D({s}) = {image}")]
    NotASlice { s: String, image: String },
    #[error("derivation {0} is not certified locally nilpotent")]
    UncertifiedDerivation(String),
    #[error("localized elements have different denominators")]
    DenominatorMismatch,
    #[error("inverted element t must be nonzero")]
    ZeroDenominator,
    #[error("monomial frame needs {needed} entries, over the cap of {cap}")]
    ResourceBound { cap: usize, needed: usize },
    #[error("element of degree {degree} exceeds the span's degree bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },
    #[error("spans differ in ring or degree bound")]
    SpanMismatch,
    #[error("intersection of an empty family")]
    EmptyFamily,
    #[error("nilpotency bound {0} exceeded")]
    NilpotencyBoundExceeded(u32),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
