use thiserror::Error;

#[derive(Debug, Error)]
pub enum NoblerError {
    #[error("unsupported prime {0}; supported primes are 2, 3, 5, 7")]
    UnsupportedPrime(u16),
    #[error("invalid field: {0}")]
    BadField(String),
    #[error("supplied modulus is reducible")]
    ReducibleModulus,
    #[error("algebra dimension cap exceeded: {0} basis elements")]
    DimensionCap(u64),
    #[error("invalid algebra: {0}")]
    BadAlgebra(String),
    #[error("element does not belong to the algebra: {0}")]
    ElementMismatch(String),
    #[error("automorphism image of generator {0} is not in the radical")]
    ImageNotInRadical(usize),
    #[error("automorphism image of generator {gen} violates the relation x^{order} = 0")]
    RelationViolated { gen: usize, order: u64 },
    #[error("induced linear map is singular")]
    SingularLinearPart,
    #[error("algebra mismatch between operands")]
    AlgebraMismatch,
    #[error("enumeration budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("unsupported algebra shape for this operation: {0}")]
    UnsupportedShape(String),
    #[error("antipode system is singular; not a valid Hopf structure")]
    SingularAntipode,
    #[error("invalid module: {0}")]
    BadModule(String),
    #[error("invalid point: {0}")]
    BadPoint(String),
    #[error("invalid pi-point: {0}")]
    BadPiPoint(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(u64),
    #[error("decomposition is uncertified: {0}")]
    Uncertified(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
