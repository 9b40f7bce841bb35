use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("signature must list at least one relation")]
    EmptySignature,
    #[error("{found} relations supplied for a signature of length {expected}")]
    RelationCount { expected: usize, found: usize },
    #[error("relation {relation}: tuple of length {found}, declared arity {expected}")]
    ArityMismatch { relation: usize, expected: usize, found: usize },
    #[error("vertex {vertex} outside domain of size {domain_size}")]
    VertexOutOfRange { vertex: usize, domain_size: usize },
    #[error("not a graph: {0}")]
    NotAGraph(String),
    #[error("relation 0 is not a linear order: {0}")]
    NotOrdered(String),
    #[error("vertex set meets the compared pair {x}, {y}")]
    Overlap { x: usize, y: usize },
    #[error("compared vertices must be distinct (got {0} twice)")]
    SameVertex(usize),
    #[error("signatures differ: {0} vs {1}")]
    SignatureMismatch(String, String),
    #[error("domains differ: {0} vs {1}")]
    DomainMismatch(usize, usize),
    #[error("{0}")]
    Range(String),
    #[error("partition is not a monomorphic decomposition")]
    NotMonomorphic,
    #[error("structure has {have} elements, need at least {need}")]
    TooSmall { have: usize, need: usize },
    #[error("profile table is not stabilized")]
    NotStabilized,
    #[error("malformed template: {0}")]
    MalformedTemplate(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("family does not produce graphs")]
    NotAGraphFamily,
    #[error("denominator constant term {0} is not a unit")]
    NonUnitConstantTerm(String),
    #[error("letter {0} is not in the alphabet")]
    UnknownLetter(String),
    #[error("no witness found: {0}")]
    NotFound(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
