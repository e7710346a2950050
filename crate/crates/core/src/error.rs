use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over Z/p")]
    ReducibleModulus,
    #[error("modulus degree does not match m")]
    DegreeMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("0^0 is undefined")]
    ZeroToZero,
    #[error("zero input")]
    ZeroInput,
    #[error("n does not divide q - 1")]
    NNotDividingGroupOrder,
    #[error("every element of a characteristic-2 field is a square")]
    EvenCharacteristic,
    #[error("q is not congruent to 1 mod 3: every element is a cube")]
    NoCubeStructure,
    #[error("q = 4 is the stated exception: beta_0 does not exist")]
    QIsFour,
    #[error("tower requires q congruent to 1 mod {0}")]
    BadTowerCongruence(u64),
    #[error("relative polynomial is reducible: marked element of the previous level is an l-th power")]
    IrreducibilityFailure,
    #[error("elements live at different tower levels")]
    LevelMismatch,
    #[error("norm index j out of range")]
    JOutOfRange,
    #[error("element is zero")]
    ZeroElement,
    #[error("order result is inexact")]
    InexactOrder,
    #[error("argument is zero")]
    ZeroArgument,
    #[error("b is not congruent to 1 mod l")]
    CongruenceViolation,
    #[error("M must be less than N")]
    OrderViolation,
    #[error("unsupported degree (expected 2 or 3)")]
    UnsupportedDegree,
    #[error("instance not applicable: n <= ord_l(q - 1), the root of unity lies in the base field")]
    NotApplicable,
    #[error("parameters out of domain: {0}")]
    DomainError(String),
    #[error("q and r are not coprime")]
    NotCoprime,
    #[error("invalid serialized form: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
