use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over the prime field")]
    ReducibleModulus,
    #[error("modulus root is not a primitive element")]
    NonPrimitiveModulusRoot,
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("field of order {0} is too large")]
    FieldTooLarge(String),
    #[error("invalid tower: {0}")]
    BadTower(String),

    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree zero")]
    DegreeZero,

    #[error("f is reducible, S_f would have zero divisors")]
    ReducibleF,
    #[error("f is right-invariant, S_f would be associative")]
    RightInvariantF,
    #[error("degree of f must be at least 2")]
    DegreeTooSmall,
    #[error("zero element has no inverse")]
    ZeroElement,
    #[error("element does not belong to this structure: {0}")]
    ForeignElement(String),

    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group of order {0} exceeds the identification bound")]
    TooLarge(String),
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("size {size} exceeds cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("automorphism set is not closed under composition")]
    NotClosed,
    #[error("polynomial is not admissible: {0}")]
    InadmissiblePolynomial(String),
    #[error("formula mismatch: {0}")]
    FormulaMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
