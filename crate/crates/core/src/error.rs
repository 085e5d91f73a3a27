use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty Pauli string")]
    EmptyString,
    #[error("invalid Pauli letter {0:?}")]
    InvalidLetter(char),
    #[error("qubit count {0} outside the supported range 1..=8")]
    QubitCount(usize),
    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),
    #[error("operator list is empty")]
    EmptyList,
    #[error("operators {0} and {1} do not commute")]
    NotCommuting(String, String),
    #[error("generators are not independent")]
    DependentGenerators,
    #[error("expected {expected} generators, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("listed elements do not form a maximal commuting class: {0}")]
    NotAClass(String),
    #[error("classes are not pairwise disjoint")]
    NotDisjoint,
    #[error("operator is the identity")]
    Identity,
    #[error("operator {0} already belongs to the class")]
    InClass(String),
    #[error("no generator alignment satisfies the commutation pattern")]
    AlignmentFailed,
    #[error("unsupported qubit count {n} for {operation}")]
    Unsupported { n: usize, operation: &'static str },
    #[error("class set is not complete")]
    NotComplete,
    #[error("invalid class index selection: {0}")]
    BadSelection(String),
    #[error("expected exactly one extra class, found {0}")]
    ExtraClassCount(usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("bases are not mutually unbiased (deviation {0:e})")]
    NotUnbiased(f64),
    #[error("class set is extendible")]
    Extendible,
    #[error("extra class is not formed from the input classes: {0}")]
    InvalidExtraClass(String),
    #[error("context product is not a multiple of the identity")]
    ContextProduct,
    #[error("the two partitions cover different operator sets")]
    OperatorSetMismatch,
    #[error("unknown built-in example {0:?}")]
    UnknownExample(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
